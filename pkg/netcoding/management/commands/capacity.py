"""
Min-cut capacity from the source to every sink.

    python manage.py capacity --network bundled:aloha_relay --flows

One ``cut`` row per sink (value C_t, source side of the minimising cut);
with ``--flows`` also one ``flow`` row per link carrying flow and one
``path`` row per path of the decomposition.
"""
from ...capacity import decompose_paths, link_label, max_flow, min_cut
from ...conf import get_setting
from ...io import ResultsTable
from ...netmodel import format_set
from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = "Min-cut capacity (and optionally a max-flow and its paths) for each sink."
    name = 'capacity'
    seed_required = False

    def add_command_arguments(self, parser):
        parser.add_argument('--flows', action='store_true', help="Also dump the max-flow and its path decomposition")

    def build_table(self, net, options):
        source, sinks = self.terminals(net, options)
        table = ResultsTable(self.name, ('sink', 'record', 'item', 'value'), seed=options['seed'],
                             config=self.config(options), source=source)
        tolerance = get_setting('RATE_TOLERANCE')
        summary = {}
        for t in sinks:
            cut = min_cut(net, source, t)
            table.add_row(t, 'cut', format_set(cut.source_side), cut.value)
            summary[t] = cut.value
            if not options['flows'] or cut.value <= tolerance:
                continue
            flow = max_flow(net, source, t)
            if flow is None:
                continue
            for key in flow.support(tolerance):
                table.add_row(t, 'flow', link_label(net, key), flow.flows[key])
            for path in decompose_paths(flow):
                table.add_row(t, 'path', '->'.join(path.nodes), path.rate)
        return table, {'capacity': summary}

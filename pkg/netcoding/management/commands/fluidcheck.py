"""
Simulated innovative-queue growth along a tandem against its fluid limit.

    python manage.py fluidcheck --network tandem:2,1 --field 2 --rho 1 --seed 5

The tandem runs with K = 1 and unpruned intermediate memories, so every
node keeps forwarding fresh combinations; every reception on a link is
attributed to the tandem's single path. The queue at node i is
|V_(i-1)| - |V_i| at the horizon tau (default 1000 / min z), divided by tau.
"""
from ...analysis import fluid_queue_rates
from ...conf import get_setting
from ...exceptions import ConfigurationError
from ...io import ResultsTable
from ...sim import InnovationTracking, SimConfig, run, tandem_path
from ._base import ExperimentCommand

COLUMNS = ('node', 'predicted_slope', 'simulated_slope', 'queue_size', 'tau', 'relative_error')


class Command(ExperimentCommand):
    help = "Compare simulated innovative-queue growth on a tandem with the fluid prediction."
    name = 'fluidcheck'

    def add_command_arguments(self, parser):
        parser.add_argument('--rho', type=int, default=1, help="Innovation order")
        parser.add_argument('--horizon', type=float, default=None, help="Run length tau")
        thinning = parser.add_mutually_exclusive_group()
        thinning.add_argument('--thinning', dest='thinning', action='store_true', default=True,
                              help="Count a gated reception with probability 1 - q^-rho (default)")
        thinning.add_argument('--no-thinning', dest='thinning', action='store_false',
                              help="Count every gated reception that enlarges the span")
        self.add_field_argument(parser)

    def build_table(self, net, options):
        source, sinks = self.terminals(net, options)
        sink = sinks[0]
        path = tandem_path(net, source, sink)
        z = [net.arcs[a].z for a in path.links]
        if len(z) < 2:
            raise ConfigurationError("fluid check needs a tandem with at least two links", 'network')
        if min(z) <= 0:
            raise ConfigurationError("every tandem link needs a positive rate", 'network')
        prediction = fluid_queue_rates(z, options['field'], options['rho'])
        tau = options['horizon'] or 1000.0 / min(z)

        tracking = InnovationTracking(
            rho=options['rho'],
            assignment=InnovationTracking.TANDEM,
            candidate_thinning=options['thinning'],
        )
        config = SimConfig(
            network=net,
            k=1,
            payload_length=1,
            field_size=options['field'],
            source=source,
            sinks=(sink,),
            mode=SimConfig.RATELESS,
            horizon=tau,
            seed=options['seed'],
            prune_intermediate=False,
            tracking=tracking,
        )
        trace = run(config)
        report = trace.innovation.paths[0]
        queues = report.queue_sizes()

        table = ResultsTable(self.name, COLUMNS, seed=options['seed'], config=self.config(options),
                             field=options['field'], rho=options['rho'], thinning=options['thinning'],
                             violations=trace.innovation.violations)
        tolerance = get_setting('RATE_TOLERANCE')
        rows = {}
        for position, (node, predicted) in enumerate(zip(path.nodes[1:-1], prediction.growth)):
            queue = queues[position]
            simulated = queue / tau
            error = abs(simulated - predicted) / predicted if predicted > tolerance else None
            table.add_row(node, predicted, simulated, queue, tau, error)
            rows[node] = {'predicted': predicted, 'simulated': simulated}
        return table, {'nodes': rows, 'violations': trace.innovation.violations}

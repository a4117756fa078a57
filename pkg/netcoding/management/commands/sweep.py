"""
Decoding success rate against rate and block length.

    python manage.py sweep --network bundled:tandem2 --K 100 --rates 0.5,0.8,0.95,1.1 --reps 50 --seed 1

``--rates`` are fractions of the capacity C (the smallest sink min-cut);
``--K`` may be a comma separated list. Every (K, R) point decodes at
Delta = K / R exactly, the deadline at which R is the achieved rate.
"""
from ...analysis import wilson_interval
from ...capacity import min_cut
from ...exceptions import ConfigurationError
from ...io import ResultsTable
from ...sim import SimConfig, run_replications
from ._base import ExperimentCommand, float_list, int_list

COLUMNS = ('K', 'rate_fraction', 'rate', 'delta', 'replications', 'successes',
           'success_rate', 'ci_low', 'ci_high')


class Command(ExperimentCommand):
    help = "Sweep decoding success over rates (as fractions of capacity) and block lengths."
    name = 'sweep'

    def add_command_arguments(self, parser):
        parser.add_argument('--K', default='50', help="Block length(s), comma separated")
        parser.add_argument('--rates', default='0.5,0.8,0.95,1.1', help="Rates as fractions of capacity")
        parser.add_argument('--reps', type=int, default=20, help="Replications per point")
        parser.add_argument('--payload-length', type=int, default=None, help="Symbols per packet payload")
        self.add_field_argument(parser)

    def build_table(self, net, options):
        source, sinks = self.terminals(net, options)
        ks = int_list(options['K'])
        fractions = float_list(options['rates'])
        if any(f <= 0 for f in fractions):
            raise ConfigurationError("rate fractions must be positive", 'rates')
        if options['reps'] < 1:
            raise ConfigurationError("at least one replication per point is needed", 'reps')
        capacity = min(min_cut(net, source, t).value for t in sinks)
        if not capacity > 0:
            raise ConfigurationError("a sink is unreachable, so every rate fails", 'sinks')

        table = ResultsTable(self.name, COLUMNS, seed=options['seed'], config=self.config(options),
                             capacity=capacity, field=options['field'])
        points = []
        for k in ks:
            for fraction in fractions:
                rate = fraction * capacity
                delta = k / rate
                config = SimConfig(
                    network=net,
                    k=k,
                    payload_length=options['payload_length'],
                    field_size=options['field'],
                    source=source,
                    sinks=tuple(sinks),
                    deadline=delta,
                    seed=options['seed'],
                    replications=options['reps'],
                    stop_when_decoded=True,
                )
                traces = run_replications(config)
                successes = sum(trace.all_decoded for trace in traces)
                p = successes / len(traces)
                low, high = wilson_interval(p, len(traces))
                table.add_row(k, fraction, rate, delta, len(traces), successes, p, low, high)
                points.append({'K': k, 'rate_fraction': fraction, 'success_rate': p})
        return table, {'capacity': capacity, 'points': points}

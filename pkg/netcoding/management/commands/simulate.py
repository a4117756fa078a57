"""
Replicated simulation of one coding configuration.

    python manage.py simulate --network bundled:tandem2 --K 50 --rate 0.4 --reps 20 --seed 7

Without ``--delta`` the deadline is K/R (1 + HEADROOM), with R from
``--rate`` or, failing that, the smallest sink capacity. ``--rateless``
reports the first time each sink reaches rank K instead. ``--rho`` turns
on innovative-packet tracking along the max-flow paths to the first sink.
"""
import math

from ...analysis import wilson_interval
from ...capacity import min_cut
from ...conf import get_setting
from ...exceptions import ConfigurationError
from ...io import ResultsTable
from ...sim import InnovationTracking, SimConfig, run_replications
from ._base import ExperimentCommand

COLUMNS = ('replication', 'seed', 'sink', 'decoded', 'decode_time', 'rank', 'received', 'deadline')


class Command(ExperimentCommand):
    help = "Simulate random linear coding over a network and report per-replication outcomes."
    name = 'simulate'

    def add_command_arguments(self, parser):
        parser.add_argument('--K', type=int, default=10, help="Number of source messages")
        parser.add_argument('--rate', type=float, default=None, help="Target rate R (sets the deadline)")
        parser.add_argument('--delta', type=float, default=None, help="Decoding deadline Delta")
        parser.add_argument('--reps', type=int, default=1, help="Number of replications")
        parser.add_argument('--payload-length', type=int, default=None, help="Symbols per packet payload")
        parser.add_argument('--rateless', action='store_true', help="Record first decode times instead of deadlines")
        parser.add_argument('--horizon', type=float, default=None, help="End of a rateless run")
        parser.add_argument('--rho', type=int, default=None, help="Innovation order; enables tracking")
        self.add_field_argument(parser)

    def deadline(self, net, source, sinks, options):
        if options['delta'] is not None:
            return options['delta']
        rate = options['rate']
        if rate is None:
            rate = min(min_cut(net, source, t).value for t in sinks)
        if not rate > 0:
            raise ConfigurationError("cannot derive a deadline: rate is zero; pass --delta", 'delta')
        return options['K'] / rate * (1.0 + get_setting('HEADROOM'))

    def build_table(self, net, options):
        source, sinks = self.terminals(net, options)
        mode = SimConfig.RATELESS if options['rateless'] else SimConfig.BLOCK
        deadline = None if options['rateless'] else self.deadline(net, source, sinks, options)
        tracking = None if options['rho'] is None else InnovationTracking(rho=options['rho'])
        config = SimConfig(
            network=net,
            k=options['K'],
            payload_length=options['payload_length'],
            field_size=options['field'],
            source=source,
            sinks=tuple(sinks),
            mode=mode,
            deadline=deadline,
            horizon=options['horizon'],
            seed=options['seed'],
            replications=options['reps'],
            tracking=tracking,
        )
        traces = run_replications(config)

        table = ResultsTable(self.name, COLUMNS, seed=options['seed'], config=self.config(options),
                             mode=mode, K=config.k, field=config.field_size, delta=deadline)
        decoded = 0
        violations = 0
        for trace in traces:
            for t in config.sinks:
                outcome = trace.outcome(t)
                decode_time = outcome.decode_time if outcome.decoded else None
                table.add_row(trace.replication, trace.seed, t, outcome.decoded, decode_time,
                              outcome.rank, outcome.received, outcome.deadline)
            decoded += trace.all_decoded
            if trace.innovation is not None:
                violations += trace.innovation.violations

        n = len(traces)
        rate = decoded / n if n else math.nan
        low, high = wilson_interval(rate, n) if n else (math.nan, math.nan)
        table.metadata.update(success_rate=rate, success_low=low, success_high=high)
        summary = {'replications': n, 'success_rate': rate}
        if tracking is not None:
            table.metadata['innovation_violations'] = violations
            summary['innovation_violations'] = violations
        return table, summary

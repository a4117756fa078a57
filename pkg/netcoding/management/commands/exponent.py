"""
Empirical error exponent against the closed-form curves.

    python manage.py exponent --network bundled:single_arc --rate 0.5 --deltas 20,40,60,80 --reps 1000 --seed 3

One row per Delta with the failure frequency, its Wilson interval, the
Poisson tail lower bound and the asymptotic, upper and lower exponents
(nats per unit time). The fitted slope of -ln p_e goes into the metadata;
fewer than three usable points exits with code 4 after writing the table.
"""
from ...analysis import ExponentCurve, fit_empirical_exponent
from ...capacity import min_cut
from ...exceptions import ConfigurationError
from ...io import ResultsTable
from ...sim import SimConfig, estimate_error_probability
from ._base import ExperimentCommand, float_list

COLUMNS = ('delta', 'K', 'replications', 'failures', 'p_hat', 'ci_low', 'ci_high', 'tail_bound',
           'exponent_asymptotic', 'exponent_upper', 'exponent_lower', 'comparable')


class Command(ExperimentCommand):
    help = "Estimate p_e over a Delta grid and fit the error exponent."
    name = 'exponent'

    def add_command_arguments(self, parser):
        parser.add_argument('--rate', type=float, required=True, help="Rate R; K = ceil(R Delta)")
        parser.add_argument('--deltas', default='20,40,60,80', help="Comma separated Delta grid")
        parser.add_argument('--reps', type=int, default=1000, help="Replications per Delta")
        parser.add_argument('--rho', type=int, default=1, help="Innovation order of the upper-bound exponent")
        parser.add_argument('--payload-length', type=int, default=None, help="Symbols per packet payload")
        self.add_field_argument(parser)

    def build_table(self, net, options):
        source, sinks = self.terminals(net, options)
        deltas = float_list(options['deltas'])
        if any(d <= 0 for d in deltas):
            raise ConfigurationError("Delta values must be positive", 'deltas')
        rate = options['rate']
        capacity = min(min_cut(net, source, t).value for t in sinks)
        if not capacity > 0:
            raise ConfigurationError("a sink is unreachable", 'sinks')

        config = SimConfig(
            network=net,
            k=1,
            payload_length=options['payload_length'],
            field_size=options['field'],
            source=source,
            sinks=tuple(sinks),
            deadline=deltas[0],
            seed=options['seed'],
            replications=options['reps'],
        )
        estimates = estimate_error_probability(config, rate, deltas, options['reps'])

        curve = ExponentCurve(capacity, rate, options['field'], options['rho'])
        above = rate > capacity
        asymptotic = None if above else curve.asymptotic
        lower = None if above else curve.lower
        upper = None if above else curve.upper

        table = ResultsTable(self.name, COLUMNS, seed=options['seed'], config=self.config(options),
                             capacity=capacity, rate=rate, field=options['field'], rho=options['rho'])
        for estimate in estimates:
            low, high = estimate.interval()
            table.add_row(estimate.delta, estimate.k, estimate.replications, estimate.failures,
                          estimate.p_hat, low, high, curve.tail_bound(estimate.delta),
                          asymptotic, upper, lower, estimate.comparable)

        fit = fit_empirical_exponent(estimates)
        table.metadata.update(slope=fit.slope, slope_low=fit.low, slope_high=fit.high, fit_points=fit.points)
        summary = {'capacity': capacity, 'slope': fit.slope if fit.fitted else None,
                   'asymptotic': asymptotic, 'upper': upper}
        if not fit.fitted:
            table.metadata['diagnostic'] = fit.diagnostic
            summary.update(exit_code=4, diagnostic=f"no exponent fit: {fit.diagnostic}")
        return table, summary

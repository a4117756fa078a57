import math

import numpy as np
from django.test import SimpleTestCase, tag
from scipy import stats

from netcoding.analysis import (
    ASYMPTOTIC,
    LOWER,
    UPPER,
    ErrorEstimate,
    ExponentCurve,
    achievable_rate_tandem,
    decode_success_probability,
    error_exponent,
    fit_empirical_exponent,
    fluid_queue_rates,
    fluid_throughput,
    innovative_arrival_log_mgf,
    poisson_tail_lower_bound,
    thinning_factor,
    wilson_interval,
)
from netcoding.exceptions import DomainError, NoFitError
from netcoding.netmodel import Arc, InjectionProcess, LossProcess, WirelineNetwork
from netcoding.sim import SimConfig, estimate_error_probability


class FluidTests(SimpleTestCase):
    def test_two_link_binary_tandem(self):
        prediction = fluid_queue_rates((2.0, 1.0), 2)
        self.assertAlmostEqual(prediction.growth[0], 1.5)
        self.assertEqual(prediction.nodes, ('2',))

    def test_only_the_bottleneck_queue_grows(self):
        prediction = fluid_queue_rates((1.0, 2.0, 0.5), 256)
        self.assertEqual(prediction.growth[0], 0.0)
        self.assertAlmostEqual(prediction.growth[1], 1.0 - (1 - 1 / 256) * 0.5)
        self.assertAlmostEqual(prediction.as_dict()['3'], 0.502, places=3)

    def test_higher_order_shrinks_the_queue(self):
        self.assertLess(fluid_queue_rates((2.0, 1.0), 2, rho=3).growth[0],
                        fluid_queue_rates((2.0, 1.0), 2, rho=1).growth[0])

    def test_single_link_has_no_queue(self):
        with self.assertRaises(DomainError):
            fluid_queue_rates((1.0,), 2)

    def test_general_tandem_rule_reduces_to_the_two_link_formula(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            z1, z2 = rng.uniform(0.05, 3.0, size=2)
            q = int(rng.choice([2, 16, 256]))
            rho = int(rng.integers(1, 5))
            with self.subTest(z=(z1, z2), q=q, rho=rho):
                two_link = max(0.0, z1 - (1 - q ** -rho) * z2)
                self.assertAlmostEqual(fluid_queue_rates((z1, z2), q, rho).growth[0], two_link)

    def test_thinning_factor(self):
        self.assertEqual(thinning_factor(2, 1), 0.5)
        self.assertAlmostEqual(thinning_factor(256, 2), 1 - 256 ** -2)
        with self.assertRaises(DomainError):
            thinning_factor(2, 0)

    def test_throughput(self):
        self.assertAlmostEqual(fluid_throughput((2.0, 1.0), 2), 1.0)
        self.assertAlmostEqual(fluid_throughput((1.0, 3.0), 2, rho=20), 1.0, places=5)


class RateTests(SimpleTestCase):
    def test_tandem_rate_is_the_smallest_link(self):
        self.assertEqual(achievable_rate_tandem([1.0, 0.5, 2.0]), 0.5)
        with self.assertRaises(DomainError):
            achievable_rate_tandem([])

    def test_decode_probability(self):
        self.assertAlmostEqual(decode_success_probability(2, 3, 3), 21 / 64)
        self.assertEqual(decode_success_probability(2, 3, 2), 0.0)
        self.assertGreater(decode_success_probability(256, 10, 12), 0.9999)


class ExponentTests(SimpleTestCase):
    def test_asymptotic_values(self):
        self.assertAlmostEqual(error_exponent(1.0, 0.5), 0.15343, places=5)
        self.assertAlmostEqual(error_exponent(1.0, 0.4, ASYMPTOTIC), 0.23348, places=5)

    def test_lower_variant_matches_asymptotic(self):
        self.assertEqual(error_exponent(1.0, 0.4, LOWER), error_exponent(1.0, 0.4, ASYMPTOTIC))

    def test_upper_variant_uses_thinned_capacity(self):
        self.assertAlmostEqual(error_exponent(1.0, 0.4, UPPER, q=2, rho=1), 0.01074, places=5)
        with self.assertRaises(DomainError):
            error_exponent(1.0, 0.4, UPPER)

    def test_rate_above_capacity(self):
        with self.assertRaises(DomainError):
            error_exponent(1.0, 1.5)
        with self.assertRaises(DomainError):
            error_exponent(1.0, 0.6, UPPER, q=2)

    def test_exponent_vanishes_at_capacity(self):
        self.assertEqual(error_exponent(2.0, 2.0), 0.0)

    def test_unknown_variant(self):
        with self.assertRaises(DomainError):
            error_exponent(1.0, 0.5, 'middle')

    def test_curve(self):
        curve = ExponentCurve(1.0, 0.6, 2, 1)
        self.assertEqual(curve.capacity_prime, 0.5)
        self.assertIsNone(curve.upper)
        self.assertAlmostEqual(curve.asymptotic, 1.0 - 0.6 - 0.6 * math.log(1 / 0.6))
        self.assertIsNotNone(ExponentCurve(1.0, 0.4, 256, 1).upper)

    def test_poisson_tail(self):
        self.assertAlmostEqual(poisson_tail_lower_bound(1.0, 0.5, 20), 0.004995, places=6)
        self.assertAlmostEqual(poisson_tail_lower_bound(1.0, 0.5, 20), stats.poisson.cdf(9, 20), places=12)
        self.assertEqual(poisson_tail_lower_bound(1.0, 0.01, 10), 0.0)

    def test_poisson_tail_stays_finite_for_long_deadlines(self):
        value = poisson_tail_lower_bound(1.0, 0.5, 2000)
        self.assertGreater(value, 0.0)
        self.assertAlmostEqual(-math.log(value) / 2000, error_exponent(1.0, 0.5), places=2)

    def test_upper_exponent_climbs_to_the_asymptotic_one(self):
        asymptotic = error_exponent(1.0, 0.4)
        upper = [error_exponent(1.0, 0.4, UPPER, q=2, rho=rho) for rho in range(1, 17)]
        for smaller, larger in zip(upper, upper[1:]):
            self.assertLessEqual(smaller, larger)
        self.assertTrue(all(value <= asymptotic for value in upper))
        self.assertAlmostEqual(upper[-1], asymptotic, places=4)

    def test_tail_exponent_is_close_to_the_asymptotic_one_at_four_hundred_over_c(self):
        capacity, rate = 2.0, 0.6
        delta = 400 / capacity
        implied = -math.log(poisson_tail_lower_bound(capacity, rate, delta)) / delta
        asymptotic = error_exponent(capacity, rate)
        self.assertLess(abs(implied - asymptotic) / asymptotic, 0.05)

    def test_log_mgf(self):
        self.assertEqual(innovative_arrival_log_mgf(0.0, 1.0, 2), 0.0)
        self.assertAlmostEqual(innovative_arrival_log_mgf(1.0, 2.0, 2), math.e - 1)


class FittingTests(SimpleTestCase):
    def test_wilson_interval(self):
        low, high = wilson_interval(0.5, 100)
        self.assertAlmostEqual(low, 0.4038, places=4)
        self.assertAlmostEqual(high, 0.5962, places=4)
        self.assertEqual(wilson_interval(0.0, 10)[0], 0.0)
        with self.assertRaises(DomainError):
            wilson_interval(0.5, 0)

    def test_estimate_interval(self):
        estimate = ErrorEstimate(10.0, 5, 100, 50)
        self.assertEqual(estimate.p_hat, 0.5)
        self.assertEqual(estimate.interval(), wilson_interval(0.5, 100))

    def test_exact_exponential_gives_the_slope(self):
        table = [(d, math.exp(0.1 - 0.15 * d)) for d in (10, 20, 30, 40)]
        fit = fit_empirical_exponent(table)
        self.assertTrue(fit.fitted)
        self.assertAlmostEqual(fit.slope, 0.15)
        self.assertAlmostEqual(fit.intercept, -0.1)
        self.assertEqual(fit.points, 4)

    def test_noisy_points_keep_the_slope_in_the_interval(self):
        table = [(d, math.exp(-0.15 * d) * (1.1 if i % 2 else 0.9))
                 for i, d in enumerate(range(10, 101, 10))]
        fit = fit_empirical_exponent(table)
        self.assertTrue(fit.contains(0.15))
        self.assertLess(fit.high - fit.low, 0.01)

    def test_weighted_fit_from_counts(self):
        n = 100_000
        table = [ErrorEstimate(d, 1, n, round(n * math.exp(-0.15 * d))) for d in (10, 20, 30, 40)]
        fit = fit_empirical_exponent(table)
        self.assertAlmostEqual(fit.slope, 0.15, places=3)
        self.assertTrue(fit.contains(0.15))

    def test_too_few_usable_points(self):
        fit = fit_empirical_exponent([(10, 0.1), (20, 0.0), (30, 1.0)])
        self.assertFalse(fit.fitted)
        self.assertIn('1 with no failures', fit.diagnostic)
        with self.assertRaises(NoFitError):
            fit.require()


class MonteCarloTests(SimpleTestCase):
    @tag('acceptance')
    def test_error_frequency_respects_the_cut_bound(self):
        net = WirelineNetwork(['1', '2'], [Arc('1', '2', InjectionProcess.poisson(1.0), LossProcess.lossless())],
                              source='1', sinks=['2'])
        config = SimConfig(net, k=1, deadline=1, seed=3)
        estimates = estimate_error_probability(config, 0.5, [10, 20, 30], replications=2000)
        for estimate in estimates:
            bound = poisson_tail_lower_bound(1.0, 0.5, estimate.delta)
            stderr = math.sqrt(bound * (1 - bound) / estimate.replications)
            self.assertGreaterEqual(estimate.p_hat, bound - 3 * stderr)

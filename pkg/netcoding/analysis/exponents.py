"""
Rates, decoding probabilities and error exponents.

All exponents are in nats per unit time. For Poisson traffic with i.i.d.
losses and capacity C the error probability at rate R decays like
exp(-E Delta) with

    E(C, R) = C - R - R ln(C / R).

The upper-bound variant evaluates E at C' = (1 - q^-rho) C, the rate of
innovative arrivals the coding scheme is guaranteed; the lower variant is
the same expression, reached by counting distinct receptions.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from ..exceptions import DomainError
from ..gf import random_invertibility_probability
from .fluid import thinning_factor

ASYMPTOTIC = 'asymptotic'
UPPER = 'upper'
LOWER = 'lower'
VARIANTS = (ASYMPTOTIC, UPPER, LOWER)


def achievable_rate_tandem(z):
    """Largest rate a tandem with link rates ``z`` supports: min_i z_i."""
    z = [float(v) for v in z]
    if not z:
        raise DomainError("a tandem needs at least one link")
    if any(v < 0 for v in z):
        raise DomainError("link rates must be non-negative")
    return min(z)


def decode_success_probability(q, k, received):
    """Probability that ``received`` uniform coded packets determine K messages."""
    if received < k:
        return 0.0
    return random_invertibility_probability(q, received, k)


def _exponent(capacity, rate):
    if rate == capacity:
        return 0.0
    return capacity - rate - rate * math.log(capacity / rate)


def error_exponent(capacity, rate, variant=ASYMPTOTIC, q=None, rho=1):
    """
    Error exponent at ``rate`` for capacity ``capacity``.

    ``variant='upper'`` needs the field size ``q`` and innovation order
    ``rho`` and requires rate <= (1 - q^-rho) capacity.
    """
    if variant not in VARIANTS:
        raise DomainError(f"unknown exponent variant {variant!r}")
    capacity = float(capacity)
    rate = float(rate)
    if not capacity > 0:
        raise DomainError(f"capacity must be positive, got {capacity}")
    if not rate > 0:
        raise DomainError(f"rate must be positive, got {rate}")
    if variant == UPPER:
        if q is None:
            raise DomainError("the upper-bound exponent needs the field size")
        capacity = thinning_factor(q, rho) * capacity
    if rate > capacity * (1 + 1e-12):
        raise DomainError(f"rate {rate} exceeds {'C prime' if variant == UPPER else 'capacity'} {capacity}")
    return max(0.0, _exponent(capacity, min(rate, capacity)))


def poisson_tail_lower_bound(capacity, rate, delta):
    """
    Pr(Poisson(C Delta) <= ceil(R Delta) - 1), summed in log space.

    No code can decode before ceil(R Delta) packets cross the cut, so this
    bounds the error probability from below.
    """
    if not capacity > 0 or not delta > 0:
        raise DomainError("capacity and Delta must be positive")
    if rate < 0:
        raise DomainError("rate must be non-negative")
    mean = capacity * delta
    top = math.ceil(rate * delta - 1e-12) - 1
    if top < 0:
        return 0.0
    l = np.arange(top + 1, dtype=float)
    log_terms = -mean + l * math.log(mean) - gammaln(l + 1)
    return float(min(1.0, math.exp(logsumexp(log_terms))))


def innovative_arrival_log_mgf(theta, capacity, q, rho=1):
    """
    Log moment generating function per unit time of the innovative
    arrivals, a Poisson stream of rate (1 - q^-rho) C: C' (e^theta - 1).
    """
    return thinning_factor(q, rho) * float(capacity) * math.expm1(float(theta))


@dataclass(frozen=True)
class ExponentCurve:
    """
    Error exponents of one operating point.

    Attributes:
        capacity: min-cut capacity C in packets per unit time
        rate: coding rate R, with K = ceil(R * Delta)
        q: field size
        rho: gating parameter of the innovation argument

    ``lower`` <= ``upper`` <= ``asymptotic``; ``upper`` uses the thinned
    capacity C prime = (1 - q^-rho) C and is None above it.
    """

    capacity: float
    rate: float
    q: int
    rho: int

    @property
    def capacity_prime(self):
        return thinning_factor(self.q, self.rho) * self.capacity

    @property
    def asymptotic(self):
        return error_exponent(self.capacity, self.rate, ASYMPTOTIC)

    @property
    def lower(self):
        return error_exponent(self.capacity, self.rate, LOWER)

    @property
    def upper(self):
        """None when the rate exceeds C prime."""
        if self.rate > self.capacity_prime:
            return None
        return error_exponent(self.capacity, self.rate, UPPER, q=self.q, rho=self.rho)

    def tail_bound(self, delta):
        return poisson_tail_lower_bound(self.capacity, self.rate, delta)

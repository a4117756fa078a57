"""
Estimating error probabilities and fitting their exponential decay.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from ..exceptions import DomainError, NoFitError

logger = logging.getLogger(__name__)


def wilson_interval(p_hat, n, confidence=0.95):
    """Wilson score interval for a binomial proportion observed over ``n`` trials."""
    if n < 1:
        raise DomainError("a proportion needs at least one trial")
    if not 0.0 <= p_hat <= 1.0:
        raise DomainError(f"proportion must lie in [0, 1], got {p_hat}")
    z = stats.norm.ppf(0.5 + confidence / 2.0)
    z2 = z * z
    denominator = 1.0 + z2 / n
    center = (p_hat + z2 / (2 * n)) / denominator
    half = z * math.sqrt(p_hat * (1 - p_hat) / n + z2 / (4 * n * n)) / denominator
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class ErrorEstimate:
    """Failure count at one Delta of an error-probability sweep."""

    delta: float
    k: int
    replications: int
    failures: int
    comparable: bool = True

    @property
    def p_hat(self):
        return self.failures / self.replications

    def interval(self, confidence=0.95):
        return wilson_interval(self.p_hat, self.replications, confidence)


@dataclass(frozen=True)
class ExponentFit:
    """
    Slope of -ln p_e against Delta.

    ``fitted`` is False when fewer than three points have 0 < p_e < 1; the
    other numbers are then NaN and ``diagnostic`` says why.
    """

    fitted: bool
    slope: float = math.nan
    intercept: float = math.nan
    stderr: float = math.nan
    low: float = math.nan
    high: float = math.nan
    points: int = 0
    diagnostic: str = ''

    def require(self):
        if not self.fitted:
            raise NoFitError(self.diagnostic)
        return self

    def contains(self, value):
        return self.fitted and self.low <= value <= self.high


def _points(table):
    """(delta, p_hat, replications or None) triples from estimates or tuples."""
    out = []
    for entry in table:
        if isinstance(entry, ErrorEstimate):
            out.append((float(entry.delta), entry.p_hat, entry.replications))
        else:
            delta, p_hat, *rest = entry
            out.append((float(delta), float(p_hat), int(rest[0]) if rest and rest[0] else None))
    return out


def fit_empirical_exponent(table, confidence=0.95):
    """
    Least-squares slope of -ln p_e versus Delta with a confidence interval.

    Points carrying a replication count are weighted by the inverse variance
    of -ln p_e implied by their Wilson interval, and the interval of the
    slope uses the normal quantile. Bare (Delta, p_e) points get an ordinary
    fit with a Student t interval from the residuals.
    """
    points = _points(table)
    usable = [(d, p, n) for d, p, n in points if 0.0 < p < 1.0]
    if len(usable) < 3:
        zeros = sum(1 for _, p, _ in points if p <= 0.0)
        ones = sum(1 for _, p, _ in points if p >= 1.0)
        diagnostic = (f"need at least 3 points with 0 < p_e < 1, have {len(usable)} "
                      f"({zeros} with no failures, {ones} with only failures)")
        logger.warning("exponent fit failed: %s", diagnostic)
        return ExponentFit(False, points=len(usable), diagnostic=diagnostic)

    x = np.array([d for d, _, _ in usable])
    y = -np.log([p for _, p, _ in usable])
    weighted = all(n for _, _, n in usable)
    z = stats.norm.ppf(0.5 + confidence / 2.0)

    if weighted:
        sigma = []
        for d, p, n in usable:
            low, high = wilson_interval(p, n, confidence)
            sigma.append(max((math.log(high) - math.log(low)) / (2 * z), 1e-12))
        w = 1.0 / np.square(sigma)
        sw, swx, swy = w.sum(), (w * x).sum(), (w * y).sum()
        swxx, swxy = (w * x * x).sum(), (w * x * y).sum()
        det = sw * swxx - swx * swx
        if det <= 0:
            return ExponentFit(False, points=len(usable), diagnostic="all usable points share one Delta")
        slope = (sw * swxy - swx * swy) / det
        intercept = (swxx * swy - swx * swxy) / det
        stderr = math.sqrt(sw / det)
        quantile = z
    else:
        xm = x.mean()
        sxx = float(np.square(x - xm).sum())
        if sxx <= 0:
            return ExponentFit(False, points=len(usable), diagnostic="all usable points share one Delta")
        slope = float(((x - xm) * (y - y.mean())).sum() / sxx)
        intercept = float(y.mean() - slope * xm)
        residuals = y - (intercept + slope * x)
        dof = len(usable) - 2
        stderr = math.sqrt(float(np.square(residuals).sum()) / dof / sxx) if dof > 0 else 0.0
        quantile = stats.t.ppf(0.5 + confidence / 2.0, dof) if dof > 0 else z

    half = quantile * stderr
    return ExponentFit(True, float(slope), float(intercept), float(stderr),
                       float(slope - half), float(slope + half), len(usable))

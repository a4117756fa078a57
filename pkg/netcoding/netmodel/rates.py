"""
Average reception rates z derived from process parameters.
"""
from ..exceptions import DomainError
from .processes import InjectionProcess, LossProcess


def effective_rate_iid(rate, epsilon):
    """z = (1 - epsilon) r for independent losses."""
    if rate < 0:
        raise DomainError(f"injection rate must be non-negative, got {rate}")
    if not 0.0 <= epsilon <= 1.0:
        raise DomainError(f"loss probability must lie in [0, 1], got {epsilon}")
    return (1.0 - epsilon) * rate


def effective_rate_markov(chain, rate=None):
    """
    z = sum_k pi_k (1 - eps_k) r_k for a Markov-modulated link.

    Per-state injection rates come from the chain; without them every state
    uses ``rate``.
    """
    if chain.rates is None and rate is None:
        raise DomainError("Markov chain has no per-state rates and no injection rate was given")
    pi = chain.steady_state()
    rates = chain.state_rates(rate)
    return float(sum(p * (1.0 - e) * r for p, e, r in zip(pi, chain.loss, rates)))


def lossy_rate(injection, loss):
    """
    Mean reception rate of ``injection`` seen through ``loss``.

    Per-state rates of a Markov chain modulate Poisson streams only; any
    other injection keeps its own rate and sees the chain's time-averaged
    loss. Aloha losses are resolved per slot elsewhere and count as lossless
    here.
    """
    rate = injection.mean_rate
    if loss.kind == LossProcess.IID:
        return effective_rate_iid(rate, loss.epsilon)
    if loss.kind == LossProcess.MARKOV:
        if injection.kind == InjectionProcess.POISSON:
            return effective_rate_markov(loss.chain, rate)
        pi = loss.chain.steady_state()
        return float(rate * sum(p * (1.0 - e) for p, e in zip(pi, loss.chain.loss)))
    return rate

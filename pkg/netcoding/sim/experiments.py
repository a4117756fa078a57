"""
Replicated simulation experiments.

Replications are independent runs seeded with ``seed XOR index``; they are
spread over a thread pool and returned in index order, so the result never
depends on scheduling.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor

from ..analysis import ErrorEstimate
from ..conf import get_setting
from ..exceptions import DomainError
from ..netmodel import InjectionProcess, LossProcess
from .config import SimConfig
from .engine import Simulation

logger = logging.getLogger(__name__)


def run(config, replication=0):
    """One replication of ``config``."""
    return Simulation(config, replication).run()


def run_replications(config, replications=None, workers=None):
    """Run ``replications`` (default ``config.replications``) runs, ordered by index."""
    replications = config.replications if replications is None else replications
    if replications < 0:
        raise DomainError("replication count must be non-negative")
    workers = workers or get_setting('REPLICATION_WORKERS')
    if workers <= 1 or replications <= 1:
        traces = [run(config, index) for index in range(replications)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            traces = list(pool.map(lambda index: run(config, index), range(replications)))
    logger.debug("finished %d replications of seed %d", replications, config.seed)
    return traces


def multicast_run(config, replication=0):
    """Per-sink outcomes of one shared simulation."""
    if not config.sinks:
        raise DomainError("a multicast run needs at least one sink")
    return run(config, replication).sinks


def success_rate(traces, sink=None):
    """Fraction of traces in which ``sink`` (or every sink) decoded."""
    if not traces:
        return math.nan
    if sink is None:
        hits = sum(trace.all_decoded for trace in traces)
    else:
        hits = sum(trace.outcome(sink).decoded for trace in traces)
    return hits / len(traces)


def is_exponent_comparable(net):
    """
    Whether the closed-form exponents describe ``net``: Poisson injections
    with i.i.d. (or no) losses on every link.
    """
    if net.kind == 'wireline':
        for arc in net.arcs:
            if arc.injection is None:
                continue
            if arc.injection.kind != InjectionProcess.POISSON:
                return False
            if arc.loss.kind not in (LossProcess.LOSSLESS, LossProcess.IID):
                return False
        return True
    for hyperarc in net.hyperarcs:
        if hyperarc.is_aloha or hyperarc.loss.kind == LossProcess.MARKOV:
            return False
        if hyperarc.injection is not None and hyperarc.injection.kind != InjectionProcess.POISSON:
            return False
    return True


def estimate_error_probability(config, rate, deltas, replications=None):
    """
    Monte Carlo decoding failure frequency at every Delta of ``deltas``.

    At each Delta the block length is K = ceil(rate * Delta) and every sink
    decodes at Delta. A replication fails when any sink fails.
    """
    replications = config.replications if replications is None else replications
    if replications < 1:
        raise DomainError("at least one replication is needed to estimate an error probability")
    if not rate > 0:
        raise DomainError(f"rate must be positive, got {rate}")
    deltas = [float(d) for d in deltas]
    if not deltas:
        raise DomainError("the Delta grid is empty")
    comparable = is_exponent_comparable(config.network)
    if not comparable:
        logger.warning("network traffic is not Poisson with i.i.d. losses; exponents are not comparable")

    estimates = []
    for delta in deltas:
        k = max(1, math.ceil(rate * delta - 1e-12))
        point = config.with_changes(
            k=k,
            mode=SimConfig.BLOCK,
            deadline=delta,
            sink_deadlines=None,
            tracking=None,
            stop_when_decoded=True,
        )
        traces = run_replications(point, replications)
        failures = sum(not trace.all_decoded for trace in traces)
        estimates.append(ErrorEstimate(delta, k, replications, failures, comparable))
        logger.info("Delta=%g K=%d: %d/%d failures", delta, k, failures, replications)
    return estimates

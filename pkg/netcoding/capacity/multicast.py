from ..exceptions import DomainError
from .cuts import min_cut
from .maxflow import max_flow_wireline
from .wireless import max_flow_wireless


def _sinks(sinks):
    sinks = [str(t) for t in sinks]
    if not sinks:
        raise DomainError("a multicast needs at least one sink")
    return sinks


def multicast_region(net, s, sinks):
    """Per-sink min cut C_t, each computed on its own."""
    return {t: min_cut(net, s, t) for t in _sinks(sinks)}


def multicast_flows(net, s, sinks):
    """Per-sink maximum flows f^(t)."""
    if net.kind == 'wireline':
        return {t: max_flow_wireline(net, s, t) for t in _sinks(sinks)}
    return {t: max_flow_wireless(net, s, t) for t in _sinks(sinks)}

"""
s-t cuts.

A cut is a node set Q with s in Q and t outside it. On a wireline network
its value sums z_ij over arcs leaving Q; on a hypergraph it sums z_iJK over
hyperarcs with tail in Q and receiver sets K that reach outside Q.
"""
import logging

from ..conf import get_setting
from ..exceptions import DomainError, GuardRefusal
from .maxflow import check_terminals, wireline_graph
from .types import Cut

logger = logging.getLogger(__name__)


def _check_cut(net, q, s, t):
    q = frozenset(str(n) for n in q)
    s, t = str(s), str(t)
    if not q <= set(net.nodes):
        raise DomainError(f"cut contains unknown nodes {sorted(q - set(net.nodes))}")
    if s not in q or t in q:
        raise DomainError("a cut must contain the source and exclude the sink")
    return q


def cut_value(net, q, s, t):
    q = _check_cut(net, q, s, t)
    return _value(net, q)


def _value(net, q):
    if net.kind == 'wireline':
        return sum(arc.z for arc in net.arcs if arc.tail in q and arc.head not in q)
    total = 0.0
    for h, hyperarc in enumerate(net.hyperarcs):
        if hyperarc.tail in q:
            total += sum(z for k, z in net.z[h].items() if not k <= q)
    return total


def min_cut_by_enumeration(net, s, t):
    """Smallest cut over all 2^(n-2) subsets; the first minimum found wins."""
    s, t = str(s), str(t)
    check_terminals(net, s, t)
    limit = get_setting('MAX_ENUMERATION_NODES')
    if len(net.nodes) > limit:
        raise GuardRefusal(f"{len(net.nodes)} nodes exceed the cut enumeration limit of {limit}")
    tolerance = get_setting('RATE_TOLERANCE')
    others = [n for n in net.nodes if n not in (s, t)]
    best = None
    for mask in range(1 << len(others)):
        q = frozenset([s] + [n for bit, n in enumerate(others) if mask >> bit & 1])
        value = _value(net, q)
        if best is None or value < best.value - tolerance:
            best = Cut(q, value)
    return best


def min_cut(net, s, t):
    """
    Minimum s-t cut: max-flow duality on wireline graphs, enumeration on hypergraphs.
    """
    s, t = str(s), str(t)
    check_terminals(net, s, t)
    if net.kind == 'wireline':
        graph = wireline_graph(net)
        tolerance = get_setting('RATE_TOLERANCE')
        _, flows = graph.max_flow(s, t)
        q = frozenset(graph.reachable(flows, s, tolerance))
        cut = Cut(q, _value(net, q))
    else:
        cut = min_cut_by_enumeration(net, s, t)
    if cut.value <= get_setting('RATE_TOLERANCE'):
        logger.warning("sink %s is unreachable from %s at positive rate", t, s)
    return cut

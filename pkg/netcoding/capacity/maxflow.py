"""
Max-flow by shortest augmenting paths (Edmonds-Karp).

``FlowGraph`` works on any list of capacitated edges; it backs the wireline
max-flow and the bipartite assignment that yields hyperarc splitting
weights.
"""
import logging
from collections import deque

from ..conf import get_setting
from ..exceptions import DomainError
from .cycles import remove_cycles
from .types import FlowSolution

logger = logging.getLogger(__name__)


class FlowGraph:
    """Directed multigraph with real edge capacities."""

    def __init__(self, nodes, edges):
        self.nodes = list(nodes)
        self.edges = [(tail, head, float(capacity)) for tail, head, capacity in edges]
        self._out = {node: [] for node in self.nodes}
        self._in = {node: [] for node in self.nodes}
        for index, (tail, head, _) in enumerate(self.edges):
            self._out[tail].append(index)
            self._in[head].append(index)

    def _augmenting_path(self, flows, source, sink, tolerance):
        parent = {source: None}
        queue = deque([source])
        while queue:
            node = queue.popleft()
            steps = [(e, +1) for e in self._out[node]] + [(e, -1) for e in self._in[node]]
            for edge, direction in steps:
                tail, head, capacity = self.edges[edge]
                if direction > 0:
                    nxt, residual = head, capacity - flows[edge]
                else:
                    nxt, residual = tail, flows[edge]
                if nxt in parent or residual <= tolerance:
                    continue
                parent[nxt] = (edge, direction, node)
                if nxt == sink:
                    return parent
                queue.append(nxt)
        return None

    def max_flow(self, source, sink, limit=None, tolerance=None):
        """
        Return ``(value, flows)`` with ``flows[e]`` the flow on edge e.

        With ``limit`` the augmentation stops once the value reaches it.
        """
        tolerance = get_setting('RATE_TOLERANCE') if tolerance is None else tolerance
        flows = [0.0] * len(self.edges)
        value = 0.0
        while limit is None or value < limit - tolerance:
            parent = self._augmenting_path(flows, source, sink, tolerance)
            if parent is None:
                break
            steps = []
            node = sink
            while node != source:
                edge, direction, previous = parent[node]
                steps.append((edge, direction))
                node = previous
            bottleneck = min(
                self.edges[e][2] - flows[e] if d > 0 else flows[e]
                for e, d in steps
            )
            if limit is not None:
                bottleneck = min(bottleneck, limit - value)
            for edge, direction in steps:
                flows[edge] += bottleneck * direction
            value += bottleneck
        return value, flows

    def reachable(self, flows, source, tolerance):
        """Nodes reachable from ``source`` in the residual graph."""
        seen = {source}
        queue = deque([source])
        while queue:
            node = queue.popleft()
            for edge in self._out[node]:
                _, head, capacity = self.edges[edge]
                if head not in seen and capacity - flows[edge] > tolerance:
                    seen.add(head)
                    queue.append(head)
            for edge in self._in[node]:
                tail, _, _ = self.edges[edge]
                if tail not in seen and flows[edge] > tolerance:
                    seen.add(tail)
                    queue.append(tail)
        return seen


def check_terminals(net, s, t):
    if s not in net.nodes or t not in net.nodes:
        raise DomainError(f"terminals ({s}, {t}) must be nodes of the network")
    if s == t:
        raise DomainError("source and sink must differ")


def wireline_graph(net):
    return FlowGraph(net.nodes, [(arc.tail, arc.head, arc.z) for arc in net.arcs])


def max_flow_wireline(net, s, t, target=None):
    """
    Maximum s-t flow, or a flow of value min(target, C) when ``target`` is given.

    The returned flow has no cycles.
    """
    s, t = str(s), str(t)
    check_terminals(net, s, t)
    if target is not None and target < 0:
        raise DomainError(f"target rate must be non-negative, got {target}")
    value, flows = wireline_graph(net).max_flow(s, t, limit=target)
    logger.debug("max-flow %s -> %s: %.9g", s, t, value)
    solution = FlowSolution(net, s, t, value, dict(enumerate(flows)))
    return remove_cycles(solution)

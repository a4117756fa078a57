"""
Cycle removal and path decomposition of flows.
"""
import logging

from ..conf import get_setting
from ..exceptions import DomainError
from .types import Path, PathDecomposition

logger = logging.getLogger(__name__)


def _adjacency(flow, flows, tolerance):
    out = {node: [] for node in flow.network.nodes}
    for key in sorted(flows):
        if flows[key] > tolerance:
            tail, head = flow.endpoints(key)
            out[tail].append((head, key))
    for node in out:
        out[node].sort(key=lambda item: (item[0], item[1]))
    return out


def _find_cycle(adjacency):
    """Links of one directed cycle of the support graph, or None."""
    state = {}
    for root in sorted(adjacency):
        if root in state:
            continue
        stack = [(root, iter(adjacency[root]))]
        trail = []
        state[root] = 'open'
        while stack:
            node, successors = stack[-1]
            step = next(successors, None)
            if step is None:
                state[node] = 'done'
                stack.pop()
                if trail:
                    trail.pop()
                continue
            head, key = step
            if state.get(head) == 'open':
                # walk back along the trail to where the cycle closes
                cycle = [key]
                for origin, link_key in reversed(trail):
                    cycle.append(link_key)
                    if origin == head:
                        break
                return cycle[::-1]
            if head not in state:
                state[head] = 'open'
                trail.append((node, key))
                stack.append((head, iter(adjacency[head])))
    return None


def remove_cycles(flow):
    """Cancel circulations until the support of ``flow`` is acyclic; the value is unchanged."""
    tolerance = get_setting('RATE_TOLERANCE')
    flows = {key: max(0.0, f) for key, f in flow.flows.items()}
    removed = 0
    while True:
        cycle = _find_cycle(_adjacency(flow, flows, tolerance))
        if cycle is None:
            break
        amount = min(flows[key] for key in cycle)
        for key in cycle:
            flows[key] -= amount
            if flows[key] <= tolerance:
                flows[key] = 0.0
        removed += 1
    if removed:
        logger.debug("removed %d flow cycles", removed)
    return flow.with_flows(flows)


def is_acyclic(flow, tolerance=None):
    tolerance = get_setting('RATE_TOLERANCE') if tolerance is None else tolerance
    return _find_cycle(_adjacency(flow, flow.flows, tolerance)) is None


def decompose_paths(flow):
    """
    Split an acyclic flow into s-t paths by greedy bottleneck extraction.

    At every node the walk continues along the positive link whose head has
    the smallest id. Paths with rate below RATE_TOLERANCE are dropped.
    """
    tolerance = get_setting('RATE_TOLERANCE')
    if not is_acyclic(flow, tolerance):
        raise DomainError("path decomposition needs an acyclic flow")
    residual = dict(flow.flows)
    paths = []
    for _ in range(len(residual) + 1):
        adjacency = _adjacency(flow, residual, tolerance)
        nodes = [flow.source]
        links = []
        while nodes[-1] != flow.sink and adjacency[nodes[-1]]:
            head, key = adjacency[nodes[-1]][0]
            nodes.append(head)
            links.append(key)
        if nodes[-1] != flow.sink or not links:
            break
        rate = min(residual[key] for key in links)
        for key in links:
            residual[key] -= rate
            if residual[key] <= tolerance:
                residual[key] = 0.0
        if rate >= tolerance:
            paths.append(Path(tuple(nodes), tuple(links), rate))
    return PathDecomposition(tuple(paths))

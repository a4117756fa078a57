"""
Value types shared by the capacity computations.

Flows are keyed by *links*: the arc index on a wireline network, and the
pair (hyperarc index, receiving node j) on a wireless network.
"""
from dataclasses import dataclass, field, replace


def link_endpoints(net, key):
    """(tail, head) of a link key."""
    if net.kind == 'wireline':
        arc = net.arcs[key]
        return arc.tail, arc.head
    h, j = key
    return net.hyperarcs[h].tail, j


def link_label(net, key):
    if net.kind == 'wireline':
        return net.labels[key]
    h, j = key
    return f"{net.hyperarcs[h].label}:{j}"


@dataclass(frozen=True)
class Cut:
    source_side: frozenset
    value: float

    @property
    def q(self):
        return self.source_side


@dataclass(frozen=True, eq=False)
class FlowSolution:
    network: object
    source: str
    sink: str
    value: float
    flows: dict
    weights: dict = field(default=None)

    def endpoints(self, key):
        return link_endpoints(self.network, key)

    def support(self, tolerance):
        """Links carrying more than ``tolerance``, in key order."""
        return [key for key in sorted(self.flows) if self.flows[key] > tolerance]

    def net_outflow(self):
        """Outflow minus inflow at every node."""
        balance = {node: 0.0 for node in self.network.nodes}
        for key, f in self.flows.items():
            tail, head = self.endpoints(key)
            balance[tail] += f
            balance[head] -= f
        return balance

    def conservation_residuals(self):
        """Deviation of every node's net outflow from R, -R or 0."""
        residuals = {}
        for node, balance in self.net_outflow().items():
            expected = self.value if node == self.source else -self.value if node == self.sink else 0.0
            residuals[node] = balance - expected
        return residuals

    def with_flows(self, flows, **changes):
        return replace(self, flows=dict(flows), **changes)


@dataclass(frozen=True)
class Path:
    nodes: tuple
    links: tuple
    rate: float


@dataclass(frozen=True)
class PathDecomposition:
    paths: tuple

    @property
    def rates(self):
        return tuple(p.rate for p in self.paths)

    @property
    def value(self):
        return sum(self.rates)

    def __len__(self):
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def link_loads(self):
        loads = {}
        for path in self.paths:
            for key in path.links:
                loads[key] = loads.get(key, 0.0) + path.rate
        return loads

"""
Wireline graphs and wireless hypergraphs.

Node ids are strings. A wireline arc (i, j) carries an injection process and
a loss process, or states its reception rate z directly. A wireless
hyperarc (i, J) carries an injection process, an optional loss process that
erases whole transmissions, and a reception distribution over non-empty
receiver sets K of J (what is left is loss); or it states z_iJK directly, or
takes part in a slotted Aloha channel.

Networks are immutable after construction; construction validates them.
"""
from dataclasses import dataclass, field
from itertools import combinations

from ..exceptions import ConfigurationError
from .processes import InjectionProcess, LossProcess
from .rates import lossy_rate


def nonempty_subsets(nodes):
    """Non-empty subsets of ``nodes`` as frozensets, smallest first."""
    nodes = sorted(nodes)
    for size in range(1, len(nodes) + 1):
        for combo in combinations(nodes, size):
            yield frozenset(combo)


def format_set(nodes):
    return '{' + ','.join(sorted(nodes)) + '}'


# ============================================================================
# WIRELINE
# ============================================================================

@dataclass(frozen=True)
class Arc:
    tail: str
    head: str
    injection: InjectionProcess = None
    loss: LossProcess = field(default_factory=LossProcess.lossless)
    z_override: float = None

    @property
    def z(self):
        if self.z_override is not None:
            return self.z_override
        if self.injection is None:
            return 0.0
        return lossy_rate(self.injection, self.loss)

    @property
    def is_simulatable(self):
        return self.injection is not None or self.z_override is not None


class WirelineNetwork:
    kind = 'wireline'

    def __init__(self, nodes, arcs, source=None, sinks=()):
        self.nodes = tuple(str(n) for n in nodes)
        self.arcs = tuple(arcs)
        self.source = None if source is None else str(source)
        self.sinks = tuple(str(t) for t in sinks)
        self._validate()
        self.labels = _link_labels([(a.tail, a.head) for a in self.arcs])

    def _validate(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise ConfigurationError("duplicate node ids", 'nodes')
        known = set(self.nodes)
        for index, arc in enumerate(self.arcs):
            location = f'arcs[{index}]'
            if arc.tail not in known or arc.head not in known:
                raise ConfigurationError(f"arc ({arc.tail}, {arc.head}) uses an unknown node", location)
            if arc.tail == arc.head:
                raise ConfigurationError(f"self-loop at node {arc.tail}", location)
            if not arc.is_simulatable:
                raise ConfigurationError("arc needs an injection process or an explicit z", location)
            if arc.injection is None and arc.loss.kind != LossProcess.LOSSLESS:
                raise ConfigurationError("an explicit z already includes losses; drop the loss process",
                                         f"{location}.loss.kind")
            if not arc.z >= 0:
                raise ConfigurationError(f"reception rate must be non-negative, got {arc.z}", location)
        _validate_terminals(self)

    @property
    def z(self):
        """Reception rate per arc index."""
        return tuple(arc.z for arc in self.arcs)

    def arc_index(self, tail, head):
        for index, arc in enumerate(self.arcs):
            if arc.tail == str(tail) and arc.head == str(head):
                return index
        raise ConfigurationError(f"no arc ({tail}, {head})", 'arcs')

    def __repr__(self):
        return f"WirelineNetwork(nodes={len(self.nodes)}, arcs={len(self.arcs)})"


# ============================================================================
# WIRELESS
# ============================================================================

@dataclass(frozen=True)
class Hyperarc:
    tail: str
    heads: frozenset
    injection: InjectionProcess = None
    reception: dict = None
    z_override: dict = None
    loss: LossProcess = field(default_factory=LossProcess.lossless)
    name: str = None

    def __post_init__(self):
        object.__setattr__(self, 'heads', frozenset(str(j) for j in self.heads))
        for attr in ('reception', 'z_override'):
            mapping = getattr(self, attr)
            if mapping is not None:
                object.__setattr__(self, attr, {frozenset(str(j) for j in k): float(v) for k, v in mapping.items()})

    @property
    def label(self):
        return self.name or f"{self.tail}->{format_set(self.heads)}"

    @property
    def is_aloha(self):
        return self.loss.kind == LossProcess.ALOHA

    def reception_distribution(self):
        """Probability of each non-empty receiver set K per transmission."""
        if self.reception is not None:
            return dict(self.reception)
        if self.z_override is not None:
            total = sum(self.z_override.values())
            if total <= 0:
                return {}
            return {k: z / total for k, z in self.z_override.items()}
        return {self.heads: 1.0}

    def surviving_rate(self):
        """Transmissions per unit time that survive the loss process."""
        if self.injection is not None:
            return lossy_rate(self.injection, self.loss)
        if self.z_override is not None:
            return sum(self.z_override.values())
        return 0.0


class WirelessNetwork:
    kind = 'wireless'

    def __init__(self, nodes, hyperarcs, source=None, sinks=(), aloha=None):
        self.nodes = tuple(str(n) for n in nodes)
        self.hyperarcs = tuple(hyperarcs)
        self.source = None if source is None else str(source)
        self.sinks = tuple(str(t) for t in sinks)
        self.aloha = aloha
        self._validate()
        self._z = self._reception_rates()

    def _validate(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise ConfigurationError("duplicate node ids", 'nodes')
        known = set(self.nodes)
        for index, h in enumerate(self.hyperarcs):
            location = f'hyperarcs[{index}]'
            if h.tail not in known or not h.heads <= known:
                raise ConfigurationError(f"hyperarc {h.label} uses an unknown node", location)
            if not h.heads:
                raise ConfigurationError("hyperarc has no receivers", location)
            if h.tail in h.heads:
                raise ConfigurationError(f"hyperarc {h.label} loops back to its tail", location)
            for attr in ('reception', 'z_override'):
                mapping = getattr(h, attr) or {}
                for k, value in mapping.items():
                    if not k or not k <= h.heads:
                        raise ConfigurationError(f"receiver set {format_set(k)} is not a non-empty subset of J", location)
                    if value < 0:
                        raise ConfigurationError(f"negative {attr} value for {format_set(k)}", location)
            if h.reception is not None and sum(h.reception.values()) > 1.0 + 1e-12:
                raise ConfigurationError("reception probabilities sum to more than 1", f'{location}.reception')
            if h.is_aloha and self.aloha is None:
                raise ConfigurationError("aloha hyperarc in a network without an aloha channel", location)
            if not h.is_aloha and h.injection is None and h.z_override is None:
                raise ConfigurationError("hyperarc needs an injection process or explicit z", location)
            if h.injection is None and h.loss.kind in (LossProcess.IID, LossProcess.MARKOV):
                raise ConfigurationError("an explicit z already includes losses; drop the loss process",
                                         f"{location}.loss.kind")
        _validate_terminals(self)

    def _reception_rates(self):
        rates = [None] * len(self.hyperarcs)
        if any(h.is_aloha for h in self.hyperarcs):
            from .aloha import aloha_reception_rates

            for index, z in aloha_reception_rates(self).items():
                rates[index] = z
        for index, h in enumerate(self.hyperarcs):
            if h.z_override is not None:
                rates[index] = dict(h.z_override)
            elif rates[index] is None:
                r = h.surviving_rate()
                rates[index] = {k: r * p for k, p in h.reception_distribution().items()}
        return tuple(rates)

    @property
    def z(self):
        """z_iJK per hyperarc index, as a dict keyed by receiver set K."""
        return self._z

    def links(self):
        """Virtual links (hyperarc index, receiver j) in a stable order."""
        return [(index, j) for index, h in enumerate(self.hyperarcs) for j in sorted(h.heads)]

    def __repr__(self):
        return f"WirelessNetwork(nodes={len(self.nodes)}, hyperarcs={len(self.hyperarcs)})"


def _validate_terminals(net):
    known = set(net.nodes)
    if net.source is not None and net.source not in known:
        raise ConfigurationError(f"source {net.source} is not a node", 'source')
    for t in net.sinks:
        if t not in known:
            raise ConfigurationError(f"sink {t} is not a node", 'sinks')


def _link_labels(pairs):
    seen = {}
    labels = []
    for tail, head in pairs:
        base = f"{tail}->{head}"
        n = seen.get(base, 0)
        seen[base] = n + 1
        labels.append(base if n == 0 else f"{base}#{n}")
    return tuple(labels)

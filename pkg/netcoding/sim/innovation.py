"""
Innovative-packet instrumentation.

Every packet emitted by the source and received somewhere becomes a basis
vector v_n; the auxiliary encoding vector beta of any other packet expresses
it over v_1..v_N. The simulator fills an ``AuxiliaryLedger`` while it runs
(pass one). After the run, ``track_innovation`` replays the deliveries once
per path p_m of a path decomposition (pass two):

* each delivery is attributed to at most one path, P_x, drawn with
  probability R_m / z on an arc, or R_m alpha^(j)_iJK / sum_L alpha^(j)_iJL z_iJL
  on a hyperarc received by K; leftover probability means no path;
* a delivery attributed to p_m at its first hop is innovative;
* further along, at position l, it is innovative iff its beta is outside
  span(V_l + V~_m), |V_(l-1)| > |V_l| + rho - 1, and (with candidate
  thinning) an independent coin of bias 1 - q^-rho comes up;
* V~_m holds W of the paths before m and U of the paths after m, taken at
  the end of the run, which is why the rule needs a second pass.
"""
import logging
from dataclasses import dataclass

import numpy as np

from ..exceptions import ConfigurationError
from ..gf import EchelonBasis
from ..capacity import Path, PathDecomposition
from .config import InnovationTracking

logger = logging.getLogger(__name__)


# ============================================================================
# PASS ONE
# ============================================================================

class _BetaStore:
    """Auxiliary vectors of the packets a node has stored, in memory order."""

    def __init__(self):
        self.rows = np.zeros((16, 16), dtype=np.uint8)
        self.count = 0
        self.width = 0

    def append(self, beta):
        n = beta.shape[0]
        rows, cols = self.rows.shape
        if n > cols or self.count == rows:
            grown = np.zeros((rows * 2 if self.count == rows else rows, max(cols, 2 * n)), dtype=np.uint8)
            grown[:rows, :cols] = self.rows
            self.rows = grown
        self.rows[self.count, :n] = beta
        self.count += 1
        self.width = max(self.width, n)

    def combine(self, field, coefficients):
        return field.combine(coefficients, self.rows[:self.count, :self.width])


@dataclass(frozen=True)
class Delivery:
    seq: int
    time: float
    link: object
    sender: str
    receivers: frozenset
    beta: np.ndarray


class AuxiliaryLedger:
    def __init__(self, field, nodes, source):
        self.field = field
        self.source = source
        self._stores = {node: _BetaStore() for node in nodes}
        self.size = 0
        self.deliveries = []

    def emitted(self, sender, coefficients):
        """beta of a packet about to leave ``sender``; None marks a fresh source packet."""
        if sender == self.source:
            return None
        return self._stores[sender].combine(self.field, coefficients)

    def delivered(self, time, link, sender, receivers, beta, stored_at):
        if beta is None:
            beta = np.zeros(self.size + 1, dtype=np.uint8)
            beta[-1] = 1
            self.size += 1
        self.deliveries.append(Delivery(len(self.deliveries), time, link, sender, frozenset(receivers), beta))
        for node in stored_at:
            self._stores[node].append(beta)
        return beta


# ============================================================================
# PASS TWO
# ============================================================================

@dataclass(frozen=True)
class PathInnovation:
    index: int
    nodes: tuple
    rate: float
    counts: tuple
    samples: tuple
    gated: int
    innovative: int

    @property
    def final_w(self):
        return self.counts[-1]

    def queue_sizes(self, counts=None):
        """|V_l| - |V_(l+1)| at every intermediate position of the path."""
        counts = self.counts if counts is None else counts
        return tuple(counts[i] - counts[i + 1] for i in range(len(counts) - 1))


@dataclass(frozen=True)
class InnovationReport:
    rho: int
    basis_size: int
    paths: tuple
    sink_rank_samples: tuple
    unassigned: int
    span_violations: int
    gate_violations: int
    union_independent: bool

    @property
    def violations(self):
        return self.span_violations + self.gate_violations + (0 if self.union_independent else 1)


class PathReplay:
    """
    Innovative sets V_1..V_L of one path during the replay.

    Each marking past the first hop is audited: membership is certified
    before and after the insertion with ``EchelonBasis.spans`` rather than
    with the elimination that performed it, and the gate is re-evaluated on
    the per-position tallies of marked vectors, which ``counts`` must match.
    """

    def __init__(self, field, path, rho, background):
        self.path = path
        self.rho = rho
        hops = len(path.links)
        self.counts = [0] * (hops + 1)
        self.bases = {p: background.copy() for p in range(2, hops + 1)}
        self.marked = {p: [] for p in range(1, hops + 1)}
        self.gated = 0
        self.innovative = 0
        self.span_violations = 0
        self.gate_violations = 0

    @property
    def hops(self):
        return len(self.path.links)

    @property
    def first_hop(self):
        return self.marked[1]

    @property
    def last_hop(self):
        return self.marked[self.hops]

    def mark_innovative(self, beta, position, candidate):
        """Apply the innovation rule to a reception at ``position``; return whether it is innovative."""
        if position == 1:
            self.counts[1] += 1
            self.marked[1].append(beta)
            return True
        previous, current = self.counts[position - 1], self.counts[position]
        if not previous > current + self.rho - 1:
            return False
        self.gated += 1
        if not candidate:
            return False
        basis = self.bases[position]
        before = basis.rank
        outside = not (basis.is_reduced() and basis.spans(beta))
        if not basis.insert(beta):
            return False
        if not (outside and basis.rank == before + 1 and basis.is_reduced() and basis.spans(beta)):
            self.span_violations += 1
        upstream, downstream = len(self.marked[position - 1]), len(self.marked[position])
        if (upstream, downstream) != (previous, current) or not upstream > downstream + self.rho - 1:
            self.gate_violations += 1
        self.counts[position] += 1
        self.marked[position].append(beta)
        self.innovative += 1
        return True


def tandem_path(net, s, t):
    """The single s-t path of a wireline tandem."""
    if net.kind != 'wireline':
        raise ConfigurationError("tandem tracking needs a wireline network", 'network')
    nodes = [s]
    links = []
    while nodes[-1] != t:
        out = [a for a, arc in enumerate(net.arcs) if arc.tail == nodes[-1]]
        if len(out) != 1 or net.arcs[out[0]].head in nodes:
            raise ConfigurationError(f"network is not a tandem from {s} to {t}", 'network')
        links.append(out[0])
        nodes.append(net.arcs[out[0]].head)
    rate = min(net.arcs[a].z for a in links)
    return Path(tuple(nodes), tuple(links), rate)


class _Attribution:
    """P_x probabilities for the deliveries of a run."""

    def __init__(self, net, decomposition, tracking, weights):
        self.net = net
        self.tandem = tracking.assignment == InnovationTracking.TANDEM
        self.weights = weights or {}
        self.rates = decomposition.rates
        self.by_link = {}
        for m, path in enumerate(decomposition.paths):
            for position, key in enumerate(path.links, start=1):
                self.by_link.setdefault(key, []).append((m, position))

    def choices(self, delivery):
        """[(path index, position, probability)] for one delivery."""
        if self.net.kind == 'wireline':
            entries = self.by_link.get(delivery.link, [])
            if self.tandem:
                return [(m, p, 1.0) for m, p in entries]
            z = self.net.z[delivery.link]
            return [(m, p, self.rates[m] / z) for m, p in entries if z > 0]
        h = delivery.link
        out = []
        for j in sorted(delivery.receivers):
            for m, position in self.by_link.get((h, j), []):
                denominator = sum(
                    self.weights.get((h, l, j), 0.0) * z
                    for l, z in self.net.z[h].items() if j in l
                )
                alpha = self.weights.get((h, delivery.receivers, j), 0.0)
                if denominator > 0 and alpha > 0:
                    out.append((m, position, self.rates[m] * alpha / denominator))
        return out


def _sample_times(interval, end_time):
    if not interval:
        return []
    n = int(np.floor(end_time / interval + 1e-12))
    return [interval * (i + 1) for i in range(n)]


def track_innovation(ledger, net, tracking, decomposition, weights, field, rng, end_time, rank_log=()):
    """
    Replay the deliveries of a run against every path; see the module docstring.

    Args:
        ledger: AuxiliaryLedger filled by the engine during the run
        net: network the run was simulated on
        tracking: InnovationTracking settings (rho, assignment, sampling)
        decomposition: path decomposition of the max flow
        weights: splitting weights of a wireless flow, or None
        field: GF context of the run
        rng: generator used for path attribution and candidate thinning
        end_time: time the run stopped
        rank_log: (time, node, rank) entries for the sink rank samples

    Returns:
        InnovationReport with per-path counts and the soundness counters
    """
    attribution = _Attribution(net, decomposition, tracking, weights)
    threshold = 1.0 - float(field.q) ** -tracking.rho

    assigned = []
    unassigned = 0
    for delivery in ledger.deliveries:
        u_path, u_candidate = rng.random(2)
        candidate = (not tracking.candidate_thinning) or u_candidate < threshold
        choice = None
        cumulative = 0.0
        for m, position, p in attribution.choices(delivery):
            cumulative += p
            if u_path < cumulative:
                choice = (m, position)
                break
        if choice is None:
            unassigned += 1
        assigned.append((choice, candidate))

    width = max(1, ledger.size)
    first_hops = {m: [] for m in range(len(decomposition.paths))}
    for delivery, (choice, _) in zip(ledger.deliveries, assigned):
        if choice is not None and choice[1] == 1:
            first_hops[choice[0]].append(delivery.beta)

    grid = _sample_times(tracking.sample_interval, end_time)
    finished_w = {}
    reports = []
    span_violations = gate_violations = 0
    for m, path in enumerate(decomposition.paths):
        background = EchelonBasis(field, width)
        for n in range(m):
            for beta in finished_w[n]:
                background.insert(beta)
        for n in range(m + 1, len(decomposition.paths)):
            for beta in first_hops[n]:
                background.insert(beta)
        replay = PathReplay(field, path, tracking.rho, background)
        samples = []
        pending = iter(grid)
        next_sample = next(pending, None)
        for delivery, (choice, candidate) in zip(ledger.deliveries, assigned):
            while next_sample is not None and next_sample < delivery.time:
                samples.append((next_sample, tuple(replay.counts[1:])))
                next_sample = next(pending, None)
            if choice is None or choice[0] != m:
                continue
            replay.mark_innovative(delivery.beta, choice[1], candidate)
        while next_sample is not None:
            samples.append((next_sample, tuple(replay.counts[1:])))
            next_sample = next(pending, None)
        finished_w[m] = replay.last_hop
        span_violations += replay.span_violations
        gate_violations += replay.gate_violations
        reports.append(PathInnovation(
            index=m,
            nodes=path.nodes,
            rate=path.rate,
            counts=tuple(replay.counts[1:]),
            samples=tuple(samples),
            gated=replay.gated,
            innovative=replay.innovative,
        ))

    union = EchelonBasis(field, width)
    total = 0
    independent = True
    for vectors in finished_w.values():
        for beta in vectors:
            total += 1
            if not union.insert(beta):
                independent = False
    if not independent:
        logger.error("innovative sets at the sink are linearly dependent (%d vectors, rank %d)", total, union.rank)

    rank_samples = []
    if grid:
        current = {}
        log = iter(rank_log)
        entry = next(log, None)
        for t in grid:
            while entry is not None and entry[0] <= t:
                current[entry[1]] = entry[2]
                entry = next(log, None)
            rank_samples.append((t, tuple(sorted(current.items()))))

    return InnovationReport(
        rho=tracking.rho,
        basis_size=ledger.size,
        paths=tuple(reports),
        sink_rank_samples=tuple(rank_samples),
        unassigned=unassigned,
        span_violations=span_violations,
        gate_violations=gate_violations,
        union_independent=independent,
    )


def tracking_decomposition(net, source, sink, tracking):
    """Paths (and hyperarc splitting weights) the tracker attributes receptions to."""
    from ..capacity import decompose_paths, max_flow, splitting_weights

    if tracking.assignment == InnovationTracking.TANDEM:
        return PathDecomposition((tandem_path(net, source, sink),)), None
    if tracking.decomposition is not None:
        weights = None
        if net.kind == 'wireless':
            weights = splitting_weights(net, tracking.decomposition.link_loads())
        return tracking.decomposition, weights
    flow = max_flow(net, source, sink)
    if flow is None:
        return PathDecomposition(()), None
    return decompose_paths(flow), flow.weights

"""
Slotted Aloha medium access on a wireless hypergraph.

In every unit slot each Aloha hyperarc (i, J) transmits independently with
probability q_iJ. Given the set C of transmitting hyperarcs, the receiver
set of a transmission is drawn from a conditional table p'(K | C) when one
is declared for (i, J, C); otherwise the collision rule applies: j in J
receives iff no node in j's interferer set, other than i, transmits. Nodes
without a declared interferer set are interfered with by every transmitting
node other than the sender and themselves.
"""
import logging
from dataclasses import dataclass, field

from ..conf import get_setting
from ..exceptions import ConfigurationError, GuardRefusal

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlohaChannel:
    interferers: dict = field(default_factory=dict)
    table: dict = field(default_factory=dict)

    def __post_init__(self):
        interferers = {str(j): frozenset(str(n) for n in nodes) for j, nodes in self.interferers.items()}
        object.__setattr__(self, 'interferers', interferers)
        table = {}
        for (h, transmitting), distribution in self.table.items():
            transmitting = frozenset(int(x) for x in transmitting)
            if h not in transmitting:
                raise ConfigurationError(f"table entry for hyperarc {h} must list it as transmitting", 'aloha.table')
            distribution = {frozenset(str(j) for j in k): float(p) for k, p in distribution.items()}
            if any(p < 0 for p in distribution.values()) or sum(distribution.values()) > 1.0 + 1e-12:
                raise ConfigurationError(f"invalid reception distribution for hyperarc {h}", 'aloha.table')
            table[(int(h), transmitting)] = distribution
        object.__setattr__(self, 'table', table)

    def interferes(self, receiver, sender, transmitting_nodes):
        declared = self.interferers.get(receiver)
        others = transmitting_nodes - {sender, receiver}
        if declared is None:
            return bool(others)
        return bool(declared & others)

    def receivers(self, net, h, transmitting):
        """Distribution of receiver sets of hyperarc ``h`` when ``transmitting`` send."""
        entry = self.table.get((h, transmitting))
        if entry is not None:
            return entry
        hyperarc = net.hyperarcs[h]
        nodes = {net.hyperarcs[g].tail for g in transmitting}
        k = frozenset(j for j in hyperarc.heads if not self.interferes(j, hyperarc.tail, nodes))
        return {k: 1.0} if k else {}

    def sample_slot(self, net, rng):
        """
        Draw one slot: transmitting hyperarcs and the receiver set of each.

        Returns a dict from transmitting hyperarc index to a (possibly empty)
        frozenset of receivers.
        """
        members = aloha_hyperarcs(net)
        draws = rng.random(len(members))
        transmitting = frozenset(
            h for h, u in zip(members, draws)
            if u < net.hyperarcs[h].loss.transmit_probability
        )
        outcome = {}
        for h in sorted(transmitting):
            distribution = self.receivers(net, h, transmitting)
            u = rng.random()
            chosen = frozenset()
            cumulative = 0.0
            for k in sorted(distribution, key=lambda s: (len(s), sorted(s))):
                cumulative += distribution[k]
                if u < cumulative:
                    chosen = k
                    break
            outcome[h] = chosen
        return outcome


def aloha_hyperarcs(net):
    return [index for index, h in enumerate(net.hyperarcs) if h.is_aloha]


def aloha_reception_rates(net):
    """
    Exact z_iJK for every Aloha hyperarc by summing over all transmit sets.

    Returns {hyperarc index: {K: z}}. Refuses networks with more Aloha
    hyperarcs than MAX_ALOHA_HYPERARCS.
    """
    members = aloha_hyperarcs(net)
    limit = get_setting('MAX_ALOHA_HYPERARCS')
    if len(members) > limit:
        raise GuardRefusal(f"{len(members)} Aloha hyperarcs exceed the enumeration limit of {limit}")
    channel = net.aloha
    q = [net.hyperarcs[h].loss.transmit_probability for h in members]
    rates = {h: {} for h in members}
    for mask in range(1 << len(members)):
        probability = 1.0
        transmitting = []
        for bit, h in enumerate(members):
            if mask >> bit & 1:
                probability *= q[bit]
                transmitting.append(h)
            else:
                probability *= 1.0 - q[bit]
        if probability == 0.0:
            continue
        transmitting = frozenset(transmitting)
        for h in transmitting:
            for k, p in channel.receivers(net, h, transmitting).items():
                if k:
                    rates[h][k] = rates[h].get(k, 0.0) + probability * p
    logger.debug("enumerated %d Aloha transmit patterns", 1 << len(members))
    return rates

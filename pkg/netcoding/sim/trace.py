"""
Records produced by a simulation run.
"""
from dataclasses import dataclass, field

from ..netmodel import format_set


@dataclass
class LinkCounts:
    """
    Counting processes of one arc or hyperarc.

    ``receptions`` maps each receiver set K (a frozenset; empty means lost)
    to the number of injections that ended there, so
    ``injections == sum(receptions.values())`` always holds.
    """

    label: str
    injections: int = 0
    skipped: int = 0
    receptions: dict = field(default_factory=dict)
    reception_times: list = field(default_factory=list)

    def record(self, receivers, time=None):
        self.injections += 1
        self.receptions[receivers] = self.receptions.get(receivers, 0) + 1
        if time is not None and receivers:
            self.reception_times.append(time)

    @property
    def lost(self):
        return self.receptions.get(frozenset(), 0)

    @property
    def received(self):
        return self.injections - self.lost

    def received_by(self, node):
        return sum(n for k, n in self.receptions.items() if node in k)


@dataclass(frozen=True)
class SinkOutcome:
    sink: str
    decoded: bool
    decode_time: float
    rank: int
    received: int
    deadline: float = None


@dataclass(frozen=True)
class EventRecord:
    time: float
    kind: str
    link: str
    node: str
    packet_id: int
    rank_after: int


@dataclass
class SimTrace:
    replication: int
    seed: int
    end_time: float
    links: tuple
    sinks: dict
    ranks: dict
    events: tuple = ()
    innovation: object = None

    def outcome(self, sink):
        return self.sinks[sink]

    @property
    def all_decoded(self):
        return all(o.decoded for o in self.sinks.values())

    def reception_rate(self, index, receivers=None):
        """Receptions per unit time on a link, optionally for one receiver set."""
        counts = self.links[index]
        if receivers is None:
            n = counts.received
        else:
            n = counts.receptions.get(frozenset(receivers), 0)
        return n / self.end_time if self.end_time > 0 else 0.0

    def link_rows(self):
        """(link, receiver set, count) rows in a stable order."""
        rows = []
        for counts in self.links:
            for k in sorted(counts.receptions, key=lambda s: (len(s), sorted(s))):
                rows.append((counts.label, format_set(k), counts.receptions[k]))
        return rows

    def fingerprint(self):
        """Tuple capturing everything a run determines, for equality checks."""
        return (
            self.end_time,
            tuple((c.label, c.injections, c.skipped, tuple(sorted((format_set(k), n) for k, n in c.receptions.items())),
                   tuple(c.reception_times)) for c in self.links),
            tuple(sorted((t, o.decoded, o.decode_time, o.rank, o.received) for t, o in self.sinks.items())),
            tuple(sorted(self.ranks.items())),
            self.events,
        )

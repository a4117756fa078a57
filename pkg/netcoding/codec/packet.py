from dataclasses import dataclass, field
from itertools import count

import numpy as np

_packet_ids = count(1)


def next_packet_id():
    return next(_packet_ids)


@dataclass(frozen=True, eq=False)
class Packet:
    """
    A coded packet: global encoding vector (length K) and payload (length lambda).

    ``payload == gamma . W`` holds for the session's message matrix W.
    """

    global_encoding_vector: np.ndarray
    payload: np.ndarray
    origin: object = None
    created_at: float = 0.0
    packet_id: int = field(default_factory=next_packet_id)

    @classmethod
    def from_row(cls, row, k, **kwargs):
        row = np.asarray(row, dtype=np.uint8)
        return cls(row[:k].copy(), row[k:].copy(), **kwargs)

    @property
    def row(self):
        """Augmented row [gamma | payload]."""
        return np.concatenate([self.global_encoding_vector, self.payload])

    @property
    def is_zero(self):
        return not self.global_encoding_vector.any()

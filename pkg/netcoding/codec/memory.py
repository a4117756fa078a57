"""
Node memory: store received packets, emit random combinations, decode.

With pruning on, a node keeps only packets whose global encoding vector
extends the span of what it already holds, so its memory is always a basis.
With pruning off every received packet is stored; the rank is still tracked
through an echelon basis.
"""
import logging

import numpy as np

from ..exceptions import DomainError, EncodeOnEmptyError
from ..gf import EchelonBasis, solve
from .packet import Packet

logger = logging.getLogger(__name__)


class NodeMemory:
    """Coded packets held by one node, as augmented rows [gamma | payload]."""

    def __init__(self, field, k, payload_length, prune=True):
        self.field = field
        self.k = k
        self.payload_length = payload_length
        self.prune = prune
        self._basis = EchelonBasis(field, k + payload_length, pivot_limit=k)
        self._stored = np.zeros((k if prune else max(k, 8), k + payload_length), dtype=np.uint8)
        self._count = 0

    def __len__(self):
        return self._count

    @property
    def rank(self):
        return self._basis.rank

    @property
    def is_full_rank(self):
        return self._basis.rank == self.k

    @property
    def stored_rows(self):
        return self._stored[:self._count]

    def _append(self, row):
        if self._count == self._stored.shape[0]:
            grown = np.zeros((2 * self._count, self._stored.shape[1]), dtype=np.uint8)
            grown[:self._count] = self._stored
            self._stored = grown
        self._stored[self._count] = row
        self._count += 1

    def receive(self, packet):
        """
        Offer ``packet`` to the memory; return whether it was stored.

        A pruning memory stores the packet only if it raises the rank.
        """
        row = packet.row
        if row.shape[0] != self.k + self.payload_length:
            raise DomainError(
                f"packet has {row.shape[0]} symbols, memory expects {self.k + self.payload_length}"
            )
        innovative = self._basis.insert(row)
        if self.prune and not innovative:
            return False
        self._append(row)
        return True

    def draw_coefficients(self, rng):
        """Uniform mixing coefficients, one per stored packet."""
        if self._count == 0:
            raise EncodeOnEmptyError("cannot encode from an empty memory")
        return self.field.random_elements(rng, self._count)

    def combine(self, coefficients, origin=None, created_at=0.0):
        """Packet carrying the combination ``coefficients`` of the stored rows."""
        row = self.field.combine(coefficients, self.stored_rows)
        return Packet.from_row(row, self.k, origin=origin, created_at=created_at)

    def encode(self, rng, origin=None, created_at=0.0):
        """Emit a uniformly random linear combination of the stored packets."""
        return self.combine(self.draw_coefficients(rng), origin=origin, created_at=created_at)

    def try_decode(self):
        """
        Recover the K x lambda message matrix, or ``None`` below full rank.
        """
        if not self.is_full_rank:
            return None
        rows = self.stored_rows
        if not self.prune:
            selector = EchelonBasis(self.field, self.k)
            chosen = []
            for index, row in enumerate(rows):
                if selector.insert(row[:self.k]):
                    chosen.append(index)
                    if selector.rank == self.k:
                        break
            rows = rows[chosen]
        solution = solve(self.field, rows[:, :self.k], rows[:, self.k:])
        if solution is None:
            logger.error("full-rank memory produced a singular system")
            return None
        return solution.entries

"""
Coding sessions.

A session fixes the field, the number of messages K and the payload length
lambda, and holds the K source messages. The source node's memory starts
with the messages themselves, each tagged with its unit global encoding
vector.
"""
import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import DomainError
from ..gf import FieldContext
from .packet import Packet


def payload_length_for_bits(bits, q):
    """Number of GF(q) symbols needed to carry ``bits`` bits."""
    if bits <= 0:
        raise DomainError("message size must be positive")
    return math.ceil(bits / math.log2(q))


@dataclass(frozen=True, eq=False)
class Session:
    field: FieldContext
    messages: np.ndarray

    @property
    def k(self):
        return self.messages.shape[0]

    @property
    def payload_length(self):
        return self.messages.shape[1]

    def expected_payload(self, gamma):
        """Payload a packet with global encoding vector ``gamma`` must carry."""
        return self.field.combine(np.asarray(gamma, dtype=np.uint8), self.messages)

    def is_consistent(self, packet):
        return bool(np.array_equal(packet.payload, self.expected_payload(packet.global_encoding_vector)))

    def source_packets(self, origin=None):
        identity = np.eye(self.k, dtype=np.uint8)
        return [
            Packet(identity[i].copy(), self.messages[i].copy(), origin=origin)
            for i in range(self.k)
        ]

    def source_memory(self, prune=True, origin=None):
        from .memory import NodeMemory

        memory = NodeMemory(self.field, self.k, self.payload_length, prune=prune)
        for packet in self.source_packets(origin):
            memory.receive(packet)
        return memory


def source_init(field, k, payload_length, rng, messages=None):
    """
    Create a session with K messages of ``payload_length`` symbols.

    Messages are drawn uniformly from ``rng`` unless given explicitly.
    """
    if k < 1:
        raise DomainError(f"K must be at least 1, got {k}")
    if payload_length < 1:
        raise DomainError(f"payload length must be at least 1, got {payload_length}")
    if messages is None:
        messages = field.random_elements(rng, (k, payload_length))
    else:
        messages = np.array(messages, dtype=np.uint8, copy=True)
        if messages.shape != (k, payload_length):
            raise DomainError(f"messages must have shape {(k, payload_length)}, got {messages.shape}")
        field.check(*messages.ravel())
    messages.setflags(write=False)
    return Session(field, messages)

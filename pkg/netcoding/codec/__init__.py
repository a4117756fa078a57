"""
Node coding behaviour: sessions, coded packets and node memories.
"""
from .memory import NodeMemory
from .packet import Packet
from .session import Session, payload_length_for_bits, source_init

__all__ = [
    'NodeMemory',
    'Packet',
    'Session',
    'payload_length_for_bits',
    'source_init',
]

"""
Discrete-event simulation of random linear coding with innovative-packet
instrumentation.
"""
from .config import InnovationTracking, SimConfig
from .engine import Simulation
from .experiments import (
    estimate_error_probability,
    is_exponent_comparable,
    multicast_run,
    run,
    run_replications,
    success_rate,
)
from .innovation import (
    AuxiliaryLedger,
    InnovationReport,
    PathInnovation,
    PathReplay,
    tandem_path,
    track_innovation,
    tracking_decomposition,
)
from .trace import EventRecord, LinkCounts, SimTrace, SinkOutcome

__all__ = [
    'AuxiliaryLedger',
    'EventRecord',
    'InnovationReport',
    'InnovationTracking',
    'LinkCounts',
    'PathInnovation',
    'PathReplay',
    'SimConfig',
    'SimTrace',
    'Simulation',
    'SinkOutcome',
    'estimate_error_probability',
    'is_exponent_comparable',
    'multicast_run',
    'run',
    'run_replications',
    'success_rate',
    'tandem_path',
    'track_innovation',
    'tracking_decomposition',
]

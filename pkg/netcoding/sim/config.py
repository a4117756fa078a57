"""
Simulation configuration.

A configuration names the network, the source and sinks, the coding
parameters (K, payload length, field size) and the operating mode:

* ``block``    - every sink attempts to decode at its deadline Delta_t;
* ``rateless`` - sinks record the first time their rank reaches K.

Innovation tracking is off unless an ``InnovationTracking`` is given.
"""
from dataclasses import dataclass, replace

from ..conf import get_setting
from ..exceptions import ConfigurationError
from ..gf import FieldContext


@dataclass(frozen=True)
class InnovationTracking:
    """
    Settings of the innovative-packet instrumentation.

    ``assignment`` selects how receptions are attributed to paths:
    ``flow`` draws the path of each reception with the flow-decomposition
    probabilities; ``tandem`` attributes every reception on a tandem's links
    to its single path. With ``candidate_thinning`` a gated reception is
    only a candidate with probability 1 - q^-rho.
    """

    FLOW = 'flow'
    TANDEM = 'tandem'

    rho: int = 1
    assignment: str = FLOW
    decomposition: object = None
    candidate_thinning: bool = False
    sample_interval: float = None

    def __post_init__(self):
        if int(self.rho) < 1:
            raise ConfigurationError(f"innovation order must be at least 1, got {self.rho}", 'tracking.rho')
        if self.assignment not in (self.FLOW, self.TANDEM):
            raise ConfigurationError(f"unknown assignment {self.assignment!r}", 'tracking.assignment')
        if self.sample_interval is not None and self.sample_interval <= 0:
            raise ConfigurationError("sample interval must be positive", 'tracking.sample_interval')


@dataclass(frozen=True)
class SimConfig:
    BLOCK = 'block'
    RATELESS = 'rateless'

    network: object
    k: int = 1
    payload_length: int = None
    field_size: int = None
    source: str = None
    sinks: tuple = ()
    mode: str = BLOCK
    deadline: float = None
    sink_deadlines: dict = None
    horizon: float = None
    seed: int = 0
    replications: int = 1
    prune_intermediate: bool = True
    tracking: InnovationTracking = None
    stop_when_decoded: bool = False
    record_events: bool = False
    record_reception_times: bool = False

    def __post_init__(self):
        net = self.network
        if self.payload_length is None:
            object.__setattr__(self, 'payload_length', get_setting('DEFAULT_PAYLOAD_LENGTH'))
        if self.field_size is None:
            object.__setattr__(self, 'field_size', get_setting('DEFAULT_FIELD'))
        source = self.source if self.source is not None else net.source
        if source is None:
            raise ConfigurationError("no source given and the network declares none", 'source')
        object.__setattr__(self, 'source', str(source))
        sinks = tuple(str(t) for t in (self.sinks or net.sinks))
        if not sinks:
            raise ConfigurationError("no sinks given and the network declares none", 'sinks')
        object.__setattr__(self, 'sinks', sinks)
        self._validate()

    def _validate(self):
        nodes = set(self.network.nodes)
        if self.source not in nodes:
            raise ConfigurationError(f"source {self.source} is not a node", 'source')
        for t in self.sinks:
            if t not in nodes:
                raise ConfigurationError(f"sink {t} is not a node", 'sinks')
            if t == self.source:
                raise ConfigurationError("a sink cannot be the source", 'sinks')
        if self.k < 1:
            raise ConfigurationError(f"K must be at least 1, got {self.k}", 'K')
        if self.payload_length < 1:
            raise ConfigurationError("payload length must be at least 1", 'payload_length')
        try:
            FieldContext.for_size(self.field_size)
        except ValueError as exc:
            raise ConfigurationError(str(exc), 'field') from exc
        if self.mode not in (self.BLOCK, self.RATELESS):
            raise ConfigurationError(f"unknown mode {self.mode!r}", 'mode')
        if self.mode == self.BLOCK:
            for t in self.sinks:
                deadline = self.deadline_for(t)
                if deadline is None or not deadline > 0:
                    raise ConfigurationError(f"sink {t} needs a positive decoding deadline", 'delta')
        elif self.horizon is not None and not self.horizon > 0:
            raise ConfigurationError("rateless horizon must be positive", 'horizon')
        if self.replications < 0:
            raise ConfigurationError("replication count must be non-negative", 'reps')

    @property
    def field_context(self):
        return FieldContext.for_size(self.field_size)

    def deadline_for(self, sink):
        if self.sink_deadlines and sink in self.sink_deadlines:
            return float(self.sink_deadlines[sink])
        return None if self.deadline is None else float(self.deadline)

    def with_changes(self, **changes):
        return replace(self, **changes)

"""
Injection and loss processes attached to arcs and hyperarcs.

Injection processes say when a node places a packet on a link:

* ``poisson``       - Poisson arrivals with rate r;
* ``deterministic`` - one injection per unit time, B(tau) = 1 + floor(tau);
* ``trace``         - an explicit, sorted list of injection times.

Loss processes say which injected packets are received:

* ``lossless``;
* ``iid``    - each packet lost independently with probability epsilon;
* ``markov`` - loss probability (and optionally injection rate) modulated by
  a continuous-time Markov chain; arcs naming the same chain share its state;
* ``aloha``  - slotted Aloha transmission with probability q per unit slot,
  reception decided by the network's Aloha channel.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import ConfigurationError, DomainError


def _check_probability(value, location):
    if not (0.0 <= float(value) <= 1.0) or math.isnan(float(value)):
        raise ConfigurationError(f"probability {value} is outside [0, 1]", location)


# ============================================================================
# INJECTIONS
# ============================================================================

@dataclass(frozen=True)
class InjectionProcess:
    POISSON = 'poisson'
    DETERMINISTIC = 'deterministic'
    TRACE = 'trace'

    kind: str
    rate: float = 1.0
    times: tuple = ()

    def __post_init__(self):
        if self.kind not in (self.POISSON, self.DETERMINISTIC, self.TRACE):
            raise ConfigurationError(f"unknown injection kind {self.kind!r}", 'injection.kind')
        if self.kind == self.POISSON and not self.rate >= 0:
            raise ConfigurationError(f"injection rate must be non-negative, got {self.rate}", 'injection.rate')
        if self.kind == self.TRACE:
            times = tuple(float(t) for t in self.times)
            if any(t < 0 for t in times) or list(times) != sorted(times):
                raise ConfigurationError("trace times must be non-negative and sorted", 'injection.times')
            object.__setattr__(self, 'times', times)

    @classmethod
    def poisson(cls, rate):
        return cls(cls.POISSON, float(rate))

    @classmethod
    def deterministic(cls):
        return cls(cls.DETERMINISTIC, 1.0)

    @classmethod
    def trace(cls, times):
        return cls(cls.TRACE, 0.0, tuple(times))

    @property
    def mean_rate(self):
        """Long-run injections per unit time."""
        if self.kind == self.POISSON:
            return self.rate
        if self.kind == self.DETERMINISTIC:
            return 1.0
        if not self.times or self.times[-1] <= 0:
            return 0.0
        return len(self.times) / self.times[-1]

    def arrival_times(self, rng):
        """Yield injection times in increasing order (possibly forever)."""
        if self.kind == self.POISSON:
            if self.rate <= 0:
                return
            t = 0.0
            scale = 1.0 / self.rate
            while True:
                t += rng.exponential(scale)
                yield t
        elif self.kind == self.DETERMINISTIC:
            n = 0
            while True:
                yield float(n)
                n += 1
        else:
            yield from self.times

    def to_dict(self):
        if self.kind == self.POISSON:
            return {'kind': self.kind, 'rate': self.rate}
        if self.kind == self.TRACE:
            return {'kind': self.kind, 'times': list(self.times)}
        return {'kind': self.kind}


# ============================================================================
# MARKOV MODULATION
# ============================================================================

@dataclass(frozen=True, eq=False)
class MarkovChain:
    """
    Continuous-time Markov chain modulating losses (and injection rates).

    ``transition_rates[k][l]`` is the rate of jumping from state k to l; the
    diagonal is ignored and rebuilt so that rows of the generator sum to 0.
    """

    transition_rates: np.ndarray
    loss: tuple
    rates: tuple = None
    name: str = None

    def __post_init__(self):
        q = np.array(self.transition_rates, dtype=float, ndmin=2)
        n = q.shape[0]
        if q.shape != (n, n):
            raise ConfigurationError(f"transition rate matrix must be square, got {q.shape}", 'chain.transitions')
        np.fill_diagonal(q, 0.0)
        if np.any(q < 0):
            raise ConfigurationError("transition rates must be non-negative", 'chain.transitions')
        np.fill_diagonal(q, -q.sum(axis=1))
        q.setflags(write=False)
        object.__setattr__(self, 'transition_rates', q)

        loss = tuple(float(e) for e in self.loss)
        if len(loss) != n:
            raise ConfigurationError(f"need {n} per-state loss probabilities, got {len(loss)}", 'chain.loss')
        for k, e in enumerate(loss):
            _check_probability(e, f'chain.loss[{k}]')
        object.__setattr__(self, 'loss', loss)

        if self.rates is not None:
            rates = tuple(float(r) for r in self.rates)
            if len(rates) != n or any(r < 0 for r in rates):
                raise ConfigurationError(f"need {n} non-negative per-state injection rates", 'chain.rates')
            object.__setattr__(self, 'rates', rates)

    @property
    def generator(self):
        return self.transition_rates

    @property
    def states(self):
        return self.transition_rates.shape[0]

    def is_irreducible(self):
        """Every state reaches every other through positive rates."""
        n = self.states
        adjacency = (self.transition_rates > 0) | np.eye(n, dtype=bool)
        reach = adjacency.copy()
        for _ in range(max(1, int(math.ceil(math.log2(n))) + 1)):
            reach = reach | ((reach.astype(int) @ reach.astype(int)) > 0)
        return bool(reach.all())

    def steady_state(self):
        """Solve pi Q = 0 with sum(pi) = 1."""
        if not self.is_irreducible():
            raise DomainError("Markov chain is not irreducible")
        n = self.states
        a = self.transition_rates.T.copy()
        a[-1, :] = 1.0
        b = np.zeros(n)
        b[-1] = 1.0
        pi = np.linalg.solve(a, b)
        pi = np.clip(pi, 0.0, None)
        return pi / pi.sum()

    def state_rates(self, default_rate):
        if self.rates is not None:
            return np.asarray(self.rates, dtype=float)
        return np.full(self.states, float(default_rate))


class MarkovChainRuntime:
    """
    Sampled trajectory of a MarkovChain, advanced lazily in simulation time.

    The initial state is drawn from the steady-state distribution. Queries
    must come with non-decreasing times, which the event loop guarantees.
    """

    def __init__(self, chain, rng):
        self.chain = chain
        self.rng = rng
        self.time = 0.0
        pi = chain.steady_state()
        self.state = int(rng.choice(chain.states, p=pi))
        self._next_change = self._holding_time()

    def _holding_time(self):
        exit_rate = -self.chain.transition_rates[self.state, self.state]
        if exit_rate <= 0:
            return math.inf
        return self.time + self.rng.exponential(1.0 / exit_rate)

    def state_at(self, t):
        while self._next_change <= t:
            self.time = self._next_change
            row = self.chain.transition_rates[self.state].copy()
            row[self.state] = 0.0
            self.state = int(self.rng.choice(self.chain.states, p=row / row.sum()))
            self._next_change = self._holding_time()
        return self.state

    def loss_probability(self, t):
        return self.chain.loss[self.state_at(t)]


# ============================================================================
# LOSSES
# ============================================================================

@dataclass(frozen=True)
class LossProcess:
    LOSSLESS = 'lossless'
    IID = 'iid'
    MARKOV = 'markov'
    ALOHA = 'aloha'

    kind: str = LOSSLESS
    epsilon: float = 0.0
    chain: MarkovChain = field(default=None, compare=False)
    transmit_probability: float = 1.0

    def __post_init__(self):
        if self.kind not in (self.LOSSLESS, self.IID, self.MARKOV, self.ALOHA):
            raise ConfigurationError(f"unknown loss kind {self.kind!r}", 'loss.kind')
        _check_probability(self.epsilon, 'loss.epsilon')
        _check_probability(self.transmit_probability, 'loss.transmit_probability')
        if self.kind == self.MARKOV and self.chain is None:
            raise ConfigurationError("markov loss needs a chain", 'loss.chain')

    @classmethod
    def lossless(cls):
        return cls(cls.LOSSLESS)

    @classmethod
    def iid(cls, epsilon):
        return cls(cls.IID, float(epsilon))

    @classmethod
    def markov(cls, chain):
        return cls(cls.MARKOV, chain=chain)

    @classmethod
    def aloha(cls, transmit_probability):
        return cls(cls.ALOHA, transmit_probability=float(transmit_probability))

"""
Discrete-event simulation of random linear coding over a network.

One ``Simulation`` is one replication. It owns a simpy environment, a numpy
generator seeded with ``seed XOR replication``, the memory of every node and
the runtime state of every Markov chain. Each arc or non-Aloha hyperarc is
a simpy process that waits for its next injection; an Aloha channel is one
process that plays unit slots; every sink in block mode has a deadline
process. At equal times injections and slots run before deadlines, so a
packet injected exactly at Delta_t still counts.

On an injection the sender draws mixing coefficients; an empty sender skips
the injection. The loss process (or the reception distribution of a
hyperarc) then picks the receiver set and the same packet is offered to
every receiver.
"""
import logging
import math

import numpy as np
import simpy

from ..capacity import min_cut
from ..codec import NodeMemory, source_init
from ..conf import get_setting
from ..netmodel import InjectionProcess, LossProcess, MarkovChainRuntime
from .config import SimConfig
from .innovation import AuxiliaryLedger, track_innovation, tracking_decomposition
from .trace import EventRecord, LinkCounts, SimTrace, SinkOutcome

logger = logging.getLogger(__name__)


class Simulation:
    def __init__(self, config, replication=0):
        self.config = config
        self.replication = replication
        self.seed = int(config.seed) ^ int(replication)
        self.rng = np.random.default_rng(self.seed)
        self.env = simpy.Environment()
        self.net = config.network
        self.field = config.field_context

        session = source_init(self.field, config.k, config.payload_length, self.rng)
        self.session = session
        self.memories = {}
        for node in self.net.nodes:
            if node == config.source:
                self.memories[node] = session.source_memory(prune=True, origin=node)
            else:
                prune = node in config.sinks or config.prune_intermediate
                self.memories[node] = NodeMemory(self.field, config.k, config.payload_length, prune=prune)

        labels = self.net.labels if self.net.kind == 'wireline' else [h.label for h in self.net.hyperarcs]
        self.counts = [LinkCounts(label) for label in labels]
        self.sink_received = {t: 0 for t in config.sinks}
        self.outcomes = {}
        self.events = []
        self.rank_log = []
        self.chains = {}
        self.packets_sent = 0
        self.ledger = None
        if config.tracking is not None:
            self.ledger = AuxiliaryLedger(self.field, self.net.nodes, config.source)
        self.finished = self.env.event()

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------

    def _chain_runtime(self, chain):
        key = chain.name or id(chain)
        if key not in self.chains:
            self.chains[key] = MarkovChainRuntime(chain, self.rng)
        return self.chains[key]

    def _finish(self):
        if not self.finished.triggered:
            self.finished.succeed()

    def end_time(self):
        config = self.config
        if config.mode == SimConfig.BLOCK:
            return max(config.deadline_for(t) for t in config.sinks)
        if config.horizon is not None:
            return float(config.horizon)
        capacity = min(min_cut(self.net, config.source, t).value for t in config.sinks)
        factor = get_setting('RATELESS_HORIZON_FACTOR')
        return factor * config.k / capacity if capacity > 0 else factor * config.k

    # ------------------------------------------------------------------
    # Transmission
    # ------------------------------------------------------------------

    def _emit(self, sender):
        """Mixing coefficients of the next packet of ``sender``, or None if it is empty."""
        memory = self.memories[sender]
        if len(memory) == 0:
            return None
        return memory.draw_coefficients(self.rng)

    def _deliver(self, index, sender, coefficients, receivers):
        """Offer one packet from ``sender`` to every node of ``receivers``."""
        now = self.env.now
        self.counts[index].record(receivers, now if self.config.record_reception_times else None)
        if not receivers:
            return
        packet = self.memories[sender].combine(coefficients, origin=sender, created_at=now)
        self.packets_sent += 1
        beta = self.ledger.emitted(sender, coefficients) if self.ledger is not None else None
        stored_at = []
        for node in sorted(receivers):
            memory = self.memories[node]
            if memory.receive(packet):
                stored_at.append(node)
            if self.config.record_events:
                self.events.append(EventRecord(now, 'reception', self.counts[index].label, node,
                                               self.packets_sent, memory.rank))
            if node in self.sink_received:
                self._sink_reception(node, now)
        if self.ledger is not None:
            self.ledger.delivered(now, index, sender, receivers, beta, stored_at)

    def _sink_reception(self, sink, now):
        self.sink_received[sink] += 1
        memory = self.memories[sink]
        if self.ledger is not None:
            self.rank_log.append((now, sink, memory.rank))
        config = self.config
        if config.mode == SimConfig.RATELESS:
            if sink not in self.outcomes and memory.is_full_rank:
                self.outcomes[sink] = self._outcome(sink, now, None)
                if len(self.outcomes) == len(config.sinks) and self.ledger is None:
                    self._finish()
        elif config.stop_when_decoded and self.ledger is None:
            if all(self.memories[t].is_full_rank for t in config.sinks):
                for t in config.sinks:
                    if t not in self.outcomes:
                        self.outcomes[t] = self._outcome(t, config.deadline_for(t), config.deadline_for(t))
                self._finish()

    def _outcome(self, sink, time, deadline):
        memory = self.memories[sink]
        messages = memory.try_decode()
        decoded = messages is not None and bool(np.array_equal(messages, self.session.messages))
        if messages is not None and not decoded:
            logger.error("sink %s decoded wrong messages", sink)
        if self.config.record_events:
            self.events.append(EventRecord(time, 'decode', '', sink, 0, memory.rank))
        return SinkOutcome(sink, decoded, time, memory.rank, self.sink_received[sink], deadline)

    # ------------------------------------------------------------------
    # Processes
    # ------------------------------------------------------------------

    def _loss_probability(self, loss, runtime):
        if loss.kind == LossProcess.IID:
            return loss.epsilon
        if loss.kind == LossProcess.MARKOV:
            return runtime.loss_probability(self.env.now)
        return 0.0

    def _modulation(self, injection, loss):
        """
        ``(injection, runtime, state rates)`` of one link.

        A chain with per-state rates modulates a Poisson stream by thinning
        one at the peak rate; other injections keep their own times and
        ``state rates`` is None.
        """
        runtime = self._chain_runtime(loss.chain) if loss.kind == LossProcess.MARKOV else None
        rates = None
        if runtime is not None and loss.chain.rates is not None and injection.kind == InjectionProcess.POISSON:
            rates = loss.chain.state_rates(injection.rate)
            injection = InjectionProcess.poisson(float(rates.max()))
        return injection, runtime, rates

    def _thinned_out(self, injection, runtime, rates):
        # must run at the injection time: chain runtimes only move forward
        return rates is not None and not self.rng.random() * injection.rate < rates[runtime.state_at(self.env.now)]

    def _arc_process(self, index):
        arc = self.net.arcs[index]
        injection = arc.injection or InjectionProcess.poisson(arc.z)
        loss = arc.loss if arc.injection is not None else LossProcess.lossless()
        injection, runtime, rates = self._modulation(injection, loss)
        for t in injection.arrival_times(self.rng):
            yield self.env.timeout(t - self.env.now)
            if self._thinned_out(injection, runtime, rates):
                continue
            coefficients = self._emit(arc.tail)
            if coefficients is None:
                self.counts[index].skipped += 1
                continue
            lost = self.rng.random() < self._loss_probability(loss, runtime)
            self._deliver(index, arc.tail, coefficients, frozenset() if lost else frozenset([arc.head]))

    def _hyperarc_process(self, index):
        hyperarc = self.net.hyperarcs[index]
        injection = hyperarc.injection or InjectionProcess.poisson(hyperarc.surviving_rate())
        loss = hyperarc.loss if hyperarc.injection is not None else LossProcess.lossless()
        injection, runtime, rates = self._modulation(injection, loss)
        distribution = hyperarc.reception_distribution()
        order = sorted(distribution, key=lambda k: (len(k), sorted(k)))
        for t in injection.arrival_times(self.rng):
            yield self.env.timeout(t - self.env.now)
            if self._thinned_out(injection, runtime, rates):
                continue
            coefficients = self._emit(hyperarc.tail)
            if coefficients is None:
                self.counts[index].skipped += 1
                continue
            lost, u = self.rng.random(2)
            receivers = frozenset()
            if not lost < self._loss_probability(loss, runtime):
                cumulative = 0.0
                for k in order:
                    cumulative += distribution[k]
                    if u < cumulative:
                        receivers = k
                        break
            self._deliver(index, hyperarc.tail, coefficients, receivers)

    def _aloha_process(self):
        channel = self.net.aloha
        slot = 0
        while True:
            yield self.env.timeout(slot - self.env.now)
            for index, receivers in sorted(channel.sample_slot(self.net, self.rng).items()):
                sender = self.net.hyperarcs[index].tail
                coefficients = self._emit(sender)
                if coefficients is None:
                    self.counts[index].skipped += 1
                    continue
                self._deliver(index, sender, coefficients, receivers)
            slot += 1

    def _deadline_process(self, sink, deadline):
        yield self.env.timeout(deadline)
        yield self.env.timeout(0)
        if sink not in self.outcomes:
            self.outcomes[sink] = self._outcome(sink, deadline, deadline)
        if len(self.outcomes) == len(self.config.sinks):
            self._finish()

    def _horizon_process(self, horizon):
        yield self.env.timeout(horizon)
        yield self.env.timeout(0)
        self._finish()

    # ------------------------------------------------------------------
    # Run
    # ------------------------------------------------------------------

    def run(self):
        config = self.config
        end = self.end_time()
        if self.net.kind == 'wireline':
            for index in range(len(self.net.arcs)):
                self.env.process(self._arc_process(index))
        else:
            for index, hyperarc in enumerate(self.net.hyperarcs):
                if not hyperarc.is_aloha:
                    self.env.process(self._hyperarc_process(index))
            if any(h.is_aloha for h in self.net.hyperarcs):
                self.env.process(self._aloha_process())
        if config.mode == SimConfig.BLOCK:
            for t in config.sinks:
                self.env.process(self._deadline_process(t, config.deadline_for(t)))
        else:
            self.env.process(self._horizon_process(end))
        self.env.run(until=self.finished)
        stopped_at = self.env.now

        if config.mode == SimConfig.RATELESS:
            for t in config.sinks:
                if t not in self.outcomes:
                    self.outcomes[t] = SinkOutcome(t, False, math.inf, self.memories[t].rank,
                                                   self.sink_received[t], None)

        report = None
        if self.ledger is not None:
            report = self._innovation_report(end)
            if report.violations:
                logger.error("innovation tracking found %d soundness violations", report.violations)

        return SimTrace(
            replication=self.replication,
            seed=self.seed,
            end_time=stopped_at,
            links=tuple(self.counts),
            sinks={t: self.outcomes[t] for t in config.sinks},
            ranks={node: self.memories[node].rank for node in self.net.nodes},
            events=tuple(self.events),
            innovation=report,
        )

    def _innovation_report(self, end):
        tracking = self.config.tracking
        sink = self.config.sinks[0]
        decomposition, weights = tracking_decomposition(self.net, self.config.source, sink, tracking)
        rng = np.random.default_rng([self.seed, 1])
        return track_innovation(self.ledger, self.net, tracking, decomposition, weights,
                                self.field, rng, end, self.rank_log)

"""
Discrete-event simulation of one SEGNET deployment.

A :class:`Simulation` owns the network, the ledgers and the event queue. It carries the
messages of the protocol flows (it is their :class:`~segnet.protocol.flows.Transport`) and
hosts the detection modules of the role holders (it is their
:class:`~segnet.detection.module.DetectionHost`). Everything it does is written to the trace.
"""
import itertools
import logging
import math
import random
from typing import Any, Callable, Dict, List, Optional, Set, Tuple, Type

from ..base.exceptions import ElectionError
from ..base.units import Micro, NodeId
from ..config.loading import defaults_applied
from ..config.schema import Behavior, ScenarioConfig
from ..detection.ledger import DetectionLedger
from ..detection.module import detection_stage
from ..detection.rules import Action, Decision, anomaly_detect, confirm_intrusion, decide_action
from ..detection.tickets import TicketReason, WarningTicket
from ..detection.watchdogs import flow_detectors, watchdog_co, watchdog_mn, watchdog_zo
from ..energy.ledger import Activity, EnergyLedger
from ..energy.lifetime import check_deactivation, network_alive_fraction
from ..protocol.flows import handle_new_node_mid_cycle, issue_query, relay_query, route_packet, sense, wake_zone
from ..protocol.ledger import CoinLedger
from ..protocol.messages import (Ack, BlockNotice, DataPacket, EnergyQuery, EnergyReport, Hello, Message, Overhear,
                                 SensingQuery, WakeUpCoin, WarningTicketMessage)
from ..protocol.schedule import boundaries, scheduled_asleep
from ..topology.deployment import deploy, make_node, schedule_of
from ..topology.election import ElectionParameters, elect, reconfigure
from ..topology.types import Designation, Disposition, Handshake, Hierarchy, NodeState, PowerMode, RoleAssignment
from ..tracing.records import RecordKind, TraceLog
from .attacker import arrival_times, attacker_step
from .events import Event, EventKind, EventQueue, Timer
from .metrics import compute_metrics
from .result import RunResult

LOGGER = logging.getLogger(__name__)

_HANDSHAKE_MESSAGES: Dict[str, Tuple[Type[Message], Type[Message]]] = {
    'gn_discovery': (Hello, Ack),
    'energy_query': (EnergyQuery, EnergyReport),
    'cluster_form': (Hello, Ack),
    'zone_form': (Hello, Ack),
}

_PER_PACKET = (TicketReason.PACKET_COUNT, TicketReason.LOW_ENERGY)


def _pkt_id(message: Message) -> Optional[int]:
    if isinstance(message, DataPacket):
        return message.packet.pkt_id

    if isinstance(message, WarningTicketMessage):
        return message.ticket.subject_packet

    return None


class Simulation:
    """
    One run of a scenario.

    Not reusable: build a new instance per run. Two instances built from the same scenario,
    seed and detection flag produce identical traces.
    """

    def __init__(self, scenario: ScenarioConfig, detection_enabled: Optional[bool] = None,
                 seed: Optional[int] = None) -> None:
        self.scenario = scenario
        self.seed = scenario.sim.seed if seed is None else seed
        self.detection_enabled = scenario.detection_enabled if detection_enabled is None else detection_enabled
        self.thresholds = scenario.thresholds
        self.latency = scenario.sim.hop_latency
        self.duration = scenario.sim.duration
        self.params = ElectionParameters.from_config(scenario)

        self.rng = random.Random(self.seed)
        self.queue = EventQueue()
        self.log = TraceLog()
        self.network = deploy(scenario)
        self.energy = EnergyLedger(scenario.energy, self.network, on_death=self._on_death)
        self.coins = CoinLedger()
        self.ledger = DetectionLedger(self.thresholds.t_interval)
        self.hierarchy = Hierarchy(gn=self.network.gn)

        self._now = 0.0
        self._msg_ids = itertools.count(1)
        self._pkt_ids = itertools.count(1)
        self._awaiting: Set[Tuple[NodeId, int]] = set()
        self._collected: Dict[Tuple[NodeId, int], Dict[NodeId, WarningTicket]] = {}
        self._flow_reports: Dict[NodeId, Set[NodeId]] = {}
        self._reconfigure_times: List[float] = []
        self._deactivated = False
        self._closing = False

        self._handlers: Dict[EventKind, Callable[[Event], None]] = {
            EventKind.MESSAGE_DELIVERY: self._on_delivery,
            EventKind.TIMER_EXPIRY: self._on_timer,
            EventKind.DUTY_CYCLE_BOUNDARY: self._on_duty_boundary,
            EventKind.RECONFIGURE_TRIGGER: self._on_reconfigure,
            EventKind.ATTACKER_ACTION: self._on_attacker,
            EventKind.WINDOW_ROLLOVER: self._on_rollover,
        }
        self._timers: Dict[str, Callable[[Timer], None]] = {
            'arrival': self._on_arrival,
            'query': self._on_query_timer,
            'wake_hold': self._on_wake_hold,
            'decide': self._on_decide,
        }

    # Transport

    @property
    def now(self) -> float:
        return self._now

    def new_msg_id(self) -> int:
        return next(self._msg_ids)

    def new_pkt_id(self) -> int:
        return next(self._pkt_ids)

    def note(self, node: Optional[NodeId], reason: str, **data: Any) -> None:
        self.log.emit(self._now, RecordKind.NOTE, node=node, reason=reason, data=data or None)

    def set_power(self, node: NodeId, mode: PowerMode) -> None:
        state = self.network[node]

        if state.power_mode is mode or not state.alive:
            return

        self.energy.accrue(node, self._now)

        if not state.alive:
            return

        state.power_mode = mode
        self.log.emit(self._now, RecordKind.POWER, node=node, verdict=mode.value)

    def transmit(self, message: Message) -> None:
        if message.src in self.network and not self.network[message.src].active:
            LOGGER.debug('%s %s from inactive node %s suppressed', message.kind, message.msg_id, message.src)
            self.note(None, 'suppressed', src=message.src, message=message.kind)
            return

        self.log.emit(self._now, RecordKind.SEND, node=message.src, peer=message.dst, message=message.kind,
                      msg_id=message.msg_id, pkt_id=_pkt_id(message), forged=message.forged,
                      data=message.describe() or None)

        if message.src in self.network:
            self._charge(message.src, Activity.TX)

        self.queue.push(self._now + self.latency, EventKind.MESSAGE_DELIVERY, message)

        if isinstance(message, DataPacket):
            self._overhear(message)

    # DetectionHost

    def detection_active(self, node: NodeId) -> bool:
        if not self.detection_enabled or node not in self.network:
            return False

        state = self.network[node]

        return state.detection_module_enabled and state.active

    def charge_detection(self, node: NodeId) -> None:
        self._charge(node, Activity.DETECT)

    # Run

    def run(self) -> RunResult:
        self._emit_header()

        try:
            self._initialize()

        except ElectionError as e:
            LOGGER.error('initial election failed: %s', e)
            self.log.emit(self._now, RecordKind.END, reason='election_failed', data={'error': str(e)})

            return self._result(error=str(e))

        while self.queue and not self._deactivated:
            event = self.queue.peek()

            if event is None or event.time >= self.duration:
                break

            self.queue.pop()
            self._now = event.time
            self._handlers[event.kind](event)

        self._finish()

        return self._result()

    def _result(self, error: Optional[str] = None) -> RunResult:
        records = list(self.log.records)

        return RunResult(scenario=self.scenario, seed=self.seed, detection_enabled=self.detection_enabled,
                         trace=records, network=self.network, hierarchy=self.hierarchy, energy=self.energy,
                         metrics=None if error else compute_metrics(records), error=error)

    def _emit_header(self) -> None:
        scenario = self.scenario
        attacker = scenario.attacker

        self.log.emit(0.0, RecordKind.HEADER, data={
            'scenario': scenario.name,
            'seed': self.seed,
            'scenario_seed': scenario.sim.seed,
            'nodes': sorted(spec.id for spec in scenario.nodes),
            'labels': {str(node_id): label for node_id, label in sorted(scenario.labels.items())},
            'gn': self.network.gn,
            'attacker': attacker.node_id if attacker else None,
            'attacked': sorted(set(attacker.targets)) if attacker else [],
            'compromised': sorted(spec.id for spec in scenario.nodes if spec.compromised is not None),
            'detection_enabled': self.detection_enabled,
            'band_mode': scenario.band_mode.value,
            'duration': self.duration,
            'hop_latency': self.latency,
            'defaults_applied': defaults_applied(scenario),
        })

    def _initialize(self) -> None:
        hierarchy = elect(self.network, self.params, self.rng, strict=True)
        self._apply_hierarchy(hierarchy, 'init')
        self._schedule()

    def _schedule(self) -> None:
        """Queue every event known in advance, in a fixed order so ties resolve the same way each run."""
        scenario, sim, push = self.scenario, self.scenario.sim, self.queue.push

        for spec in sorted((s for s in scenario.nodes if s.join_at > 0), key=lambda s: (s.join_at, s.id)):
            if spec.join_at < self.duration:
                push(spec.join_at, EventKind.TIMER_EXPIRY, Timer('arrival', spec.id))

        for k in itertools.count(1):
            if (t := k * self.thresholds.t_interval) >= self.duration:
                break

            push(t, EventKind.WINDOW_ROLLOVER)

        for k in itertools.count(1):
            if (t := k * sim.reconfiguration_every) >= self.duration:
                break

            self._reconfigure_times.append(t)
            push(t, EventKind.RECONFIGURE_TRIGGER, 'periodic')

        for t, asleep in boundaries(schedule_of(scenario), self.duration):
            push(t, EventKind.DUTY_CYCLE_BOUNDARY, asleep)

        period = scenario.duty_cycle.period

        for cycle in itertools.count():
            if (base := cycle * period) >= self.duration:
                break

            for q in range(sim.queries_per_cycle):
                if (t := base + sim.query_offset + q * sim.query_spacing) < self.duration:
                    push(t, EventKind.TIMER_EXPIRY, Timer('query'))

        if scenario.attacker is not None:
            for t, target in arrival_times(scenario.attacker, self.duration, self.seed):
                push(t, EventKind.ATTACKER_ACTION, target)

    def _finish(self) -> None:
        end = self._now if self._deactivated else self.duration
        self._now = end
        self._closing = True

        for event in self.queue.drain():
            if event.kind is EventKind.MESSAGE_DELIVERY and not isinstance(event.payload, Overhear):
                self._drop(event.payload, 'in_flight')

        self.energy.accrue_all(end)
        self.log.emit(end, RecordKind.END, data={'energy': self._energies(),
                                                 'alive': network_alive_fraction(self.network)})
        LOGGER.info('run of %s (seed %s) ended at %s with %d records', self.scenario.name, self.seed, end,
                    len(self.log))

    # Bookkeeping helpers

    def _energies(self) -> Dict[str, Micro]:
        return {str(node.id): self.energy.residual_energy(node.id) for node in self.network}

    def _charge(self, node: NodeId, activity: Activity, count: int = 1) -> None:
        if node not in self.network:
            return

        self.energy.accrue(node, self._now)

        if not self.network[node].alive:
            self.note(None, 'charge_dead', dead=node, activity=activity.value)

        # the ledger ignores dead nodes with a warning
        self.energy.charge(node, activity, self._now, count)

    def _drop(self, message: Message, reason: str) -> None:
        self.log.emit(self._now, RecordKind.DROP, node=message.dst, peer=message.src, message=message.kind,
                      msg_id=message.msg_id, pkt_id=_pkt_id(message), reason=reason, forged=message.forged)

    def _misbehaves(self, node: NodeId, behavior: Behavior) -> bool:
        spec = self.network[node].compromised

        return spec is not None and spec.kind is behavior and self._now >= spec.onset

    def _should_sleep(self, node: NodeState) -> bool:
        if node.parked or node.disposition is Disposition.BLOCKED:
            return True

        return (node.desig is Designation.SN and node.awake_until <= self._now
                and scheduled_asleep(node.sleep_schedule, self._now))

    def _at_reconfiguration(self, t: float) -> bool:
        return any(math.isclose(t, r) for r in self._reconfigure_times)

    # Hierarchy

    def _apply_hierarchy(self, hierarchy: Hierarchy, reason: str) -> None:
        self.hierarchy = hierarchy
        self._trace_handshakes(hierarchy.handshakes)

        for change in hierarchy.changes:
            self.log.emit(self._now, RecordKind.ROLE, node=change.node, verdict=change.after.value,
                          data={'before': change.before.value})

        self.log.emit(self._now, RecordKind.CLASSIFY, node=hierarchy.gn,
                      data={'intelligent': sorted(hierarchy.intelligent_set), 'simple': sorted(hierarchy.simple_set)})

        for sn in sorted(hierarchy.unreachable):
            self.log.emit(self._now, RecordKind.UNREACHABLE, node=sn)

        for text in hierarchy.degraded:
            self.log.emit(self._now, RecordKind.DEGRADED, node=hierarchy.gn, data={'reason': text})

        self.log.emit(self._now, RecordKind.RECONFIGURE, node=hierarchy.gn, reason=reason, data=hierarchy.to_dict())

        for node in self.network:
            if node.alive:
                self.set_power(node.id, PowerMode.ASLEEP if self._should_sleep(node) else PowerMode.AWAKE)

    def _trace_handshakes(self, handshakes: Tuple[Handshake, ...]) -> None:
        """Account the election rounds: one broadcast per origin, one reply per responder."""
        timely = 2 * self.latency <= self.params.timer_t

        for handshake in handshakes:
            request, reply = _HANDSHAKE_MESSAGES[handshake.kind]
            origin = handshake.origin

            if not self.network[origin].alive:
                continue

            self._charge(origin, Activity.TX)

            for node in handshake.reached:
                if not self.network[node].active:
                    continue

                message = request(msg_id=self.new_msg_id(), src=origin, dst=node, sent_at=self._now)
                self._exchange(message, delivered=True)

            for node in handshake.responders:
                if not self.network[node].alive:
                    continue

                if reply is EnergyReport:
                    message = EnergyReport(msg_id=self.new_msg_id(), src=node, dst=origin, sent_at=self._now,
                                           energy=self.network[node].energy)
                else:
                    message = reply(msg_id=self.new_msg_id(), src=node, dst=origin, sent_at=self._now)

                self._charge(node, Activity.TX)
                self._exchange(message, delivered=timely)

    def _exchange(self, message: Message, delivered: bool) -> None:
        self.log.emit(self._now, RecordKind.SEND, node=message.src, peer=message.dst, message=message.kind,
                      msg_id=message.msg_id, forged=False, data=message.describe() or None)

        if not delivered:
            self._drop(message, 'timer_expired')
            return

        self.log.emit(self._now, RecordKind.DELIVER, node=message.dst, peer=message.src, message=message.kind,
                      msg_id=message.msg_id)
        self._charge(message.dst, Activity.RX)

    # Event handlers

    def _on_timer(self, event: Event) -> None:
        timer: Timer = event.payload
        self._timers[timer.purpose](timer)

    def _on_delivery(self, event: Event) -> None:
        message: Message = event.payload

        if isinstance(message, Overhear):
            self._on_overhear(message)
            return

        if message.dst not in self.network:
            self._drop(message, 'unknown_dst')
            return

        if message.src in self.network:
            src = self.network[message.src]

            if not src.alive:
                self._drop(message, 'src_dead')
                return

            if src.disposition is Disposition.BLOCKED:
                self._drop(message, 'src_blocked')
                return

        dst = self.network[message.dst]

        if not dst.alive:
            self._drop(message, 'dst_dead')
            return

        if dst.disposition is Disposition.BLOCKED:
            self._drop(message, 'dst_blocked')
            return

        self.log.emit(self._now, RecordKind.DELIVER, node=message.dst, peer=message.src, message=message.kind,
                      msg_id=message.msg_id, pkt_id=_pkt_id(message), forged=message.forged)
        self._charge(dst.id, Activity.RX)

        if not dst.alive:
            return

        if isinstance(message, SensingQuery):
            self._on_query(message)

        elif isinstance(message, WakeUpCoin):
            self._on_coin(message)

        elif isinstance(message, DataPacket):
            self._on_data(message)

        elif isinstance(message, WarningTicketMessage):
            self._on_ticket(message)

    def _on_query(self, query: SensingQuery) -> None:
        if query.dst == query.target_zone:
            wake_zone(self, query.dst)
        else:
            relay_query(self, query.dst, query)

    def _on_coin(self, coin: WakeUpCoin) -> None:
        sn = coin.dst
        node = self.network[sn]

        if node.desig is not Designation.SN and not node.parked:
            self.note(sn, 'coin_ignored', coin_id=coin.coin_id)
            return

        legitimate = self.coins.is_legitimate(sn, coin.coin_id, coin.issuer) and \
            self.hierarchy.zone_of(sn) == coin.issuer

        if not legitimate:
            self.coins.record_unsolicited(sn)
            self.note(sn, 'unsolicited_wakeup', coin_id=coin.coin_id, issuer=coin.issuer)

        self._wake(sn)

        if node.parked:
            return

        self._charge(sn, Activity.SENSE)

        if node.alive:
            sense(self, sn)

    def _wake(self, sn: NodeId) -> None:
        node = self.network[sn]
        node.awake_until = max(node.awake_until, self._now + self.scenario.sim.wake_hold)
        self.set_power(sn, PowerMode.AWAKE)
        self.queue.push(node.awake_until, EventKind.TIMER_EXPIRY, Timer('wake_hold', sn))

    def _on_wake_hold(self, timer: Timer) -> None:
        assert timer.node is not None
        node = self.network[timer.node]

        if node.alive and self._now >= node.awake_until and self._should_sleep(node):
            self.set_power(node.id, PowerMode.ASLEEP)

    def _on_data(self, message: DataPacket) -> None:
        node = message.dst
        message.packet.receive(self._now)

        if node == self.hierarchy.gn:
            return

        cluster = self.hierarchy.cluster_of(node)

        if cluster is not None and node in cluster.zos:
            self._stamp(node, message)
            route_packet(self, node, message)

        elif cluster is not None and node == cluster.co:
            self._awaiting.add((node, message.packet.pkt_id))
            self.queue.push(self._now + self.latency, EventKind.TIMER_EXPIRY,
                            Timer('decide', node, {'message': message}))

        else:
            route_packet(self, node, message)

    def _overhear(self, message: DataPacket) -> None:
        """Queue passive receptions for the monitors of the cluster a packet crosses."""
        if not self.detection_enabled:
            return

        cluster = self.hierarchy.cluster_of(message.src)

        if cluster is None:
            return

        upward = (message.src in cluster.zos and message.dst == cluster.co) or \
            (message.src == cluster.co and message.dst == self.hierarchy.gn)

        if not upward:
            return

        for mn in cluster.mns:
            if mn == message.dst or not self.network[mn].active or not self.network.in_range(mn, message.src):
                continue

            overhear = Overhear(msg_id=message.msg_id, src=message.src, dst=mn, sent_at=self._now, observed=message)
            self.queue.push(self._now, EventKind.MESSAGE_DELIVERY, overhear)

    def _on_overhear(self, overhear: Overhear) -> None:
        mn = overhear.dst
        observed = overhear.observed

        if not isinstance(observed, DataPacket) or not self.detection_active(mn):
            return

        self._charge(mn, Activity.RX)

        if not self.network[mn].alive:
            return

        if observed.dst == self.hierarchy.gn:
            self.ledger.record_flow(mn, observed.src)
            self.log.emit(self._now, RecordKind.OBSERVE, node=mn, peer=observed.src, msg_id=observed.msg_id,
                          pkt_id=observed.packet.pkt_id, data={'flow': True})
            return

        ticket = self._confirm(mn, observed)

        if ticket is not None:
            self.transmit(WarningTicketMessage(msg_id=self.new_msg_id(), src=mn, dst=observed.dst, sent_at=self._now,
                                               ticket=ticket))

    def _on_ticket(self, message: WarningTicketMessage) -> None:
        ticket = message.ticket
        receiver = message.dst

        if ticket.reason in _PER_PACKET:
            key = (receiver, ticket.subject_packet)

            if key not in self._awaiting:
                LOGGER.info('ticket from %s for packet %s reached %s after its verdict', ticket.issuer,
                            ticket.subject_packet, receiver)
                self.note(receiver, 'unknown_ticket', pkt_id=ticket.subject_packet, issuer=ticket.issuer)
                return

            collected = self._collected.setdefault(key, {})

            if ticket.issuer not in collected:
                collected[ticket.issuer] = ticket
                self.ledger.record_ticket(ticket, self._now)

        elif ticket.reason is TicketReason.ZO_FALSE_DETECTION:
            self._block(ticket.subject_node, receiver, 'watchdog_zo', {'issuer': ticket.issuer})

        elif ticket.reason is TicketReason.CO_FLOW:
            reporters = self._flow_reports.setdefault(ticket.subject_node, set())
            reporters.add(ticket.issuer)

            if len(reporters) > 1:
                self._block(ticket.subject_node, receiver, 'watchdog_co', {'reporters': sorted(reporters)})

    def _on_decide(self, timer: Timer) -> None:
        co = timer.node
        assert co is not None
        message: DataPacket = timer.data['message']
        packet = message.packet
        key = (co, packet.pkt_id)
        self._awaiting.discard(key)
        tickets = self._collected.pop(key, {})

        if not self.network[co].active:
            self.note(None, 'decider_inactive', co=co, pkt_id=packet.pkt_id)
            return

        decision: Optional[Decision] = self._decide(co, message, tickets)

        if decision is not None:
            if decision.observe:
                self._observe(packet.origin, co)

            if decision.action is Action.DROP_ERRONEOUS:
                self.ledger.record_false_detection(message.src, self._now)

            if decision.block:
                self._block(packet.origin, co, 'warning_threshold',
                            {'count': decision.warnings, 'threshold': self.thresholds.warning_block_threshold})

            if decision.action is not Action.FORWARD:
                return

        behavior = self.network[co].compromised
        copies = behavior.flood_factor if behavior and self._misbehaves(co, Behavior.FLOW_FLOOD) else 1
        route_packet(self, co, message, copies)

    def _on_query_timer(self, timer: Timer) -> None:
        gn = self.network.gn

        if not self.network[gn].active:
            return

        for cluster in self.hierarchy.clusters:
            for zo in cluster.zos:
                issue_query(self, gn, zo)

    def _on_duty_boundary(self, event: Event) -> None:
        asleep: bool = event.payload

        for node in self.network:
            if node.desig is not Designation.SN or not node.active or node.parked:
                continue

            if asleep and node.awake_until > self._now:
                continue

            self.set_power(node.id, PowerMode.ASLEEP if asleep else PowerMode.AWAKE)

    def _on_attacker(self, event: Event) -> None:
        attacker = self.scenario.attacker
        assert attacker is not None

        coins, skipped = attacker_step(attacker, self.network, self._now, [event.payload], self.new_msg_id,
                                       self.duration)

        for target in skipped:
            self.note(None, 'target_unavailable', target=target)

        for coin in coins:
            self.log.emit(self._now, RecordKind.INJECT, node=attacker.node_id, peer=coin.dst, msg_id=coin.msg_id,
                          forged=True)
            self.transmit(coin)

    def _on_arrival(self, timer: Timer) -> None:
        spec = next(s for s in self.scenario.nodes if s.id == timer.node)
        node = make_node(spec, self.scenario, self.network.gn)
        self.network.add(node)
        self.energy.register(node.id, self._now)
        self.network.refresh_neighbors()

        if self._at_reconfiguration(self._now):
            self.note(node.id, 'joined_at_reconfiguration')
            return

        handle_new_node_mid_cycle(self, self.network.gn, node.id)
        self.log.emit(self._now, RecordKind.PARK, node=node.id)

    def _on_reconfigure(self, event: Event) -> None:
        reason: str = event.payload

        # everyone taking part in the election listens
        for node in self.network:
            if node.active:
                node.parked = False
                self.set_power(node.id, PowerMode.AWAKE)

        self.energy.accrue_all(self._now)
        self._apply_hierarchy(reconfigure(self.network, self.hierarchy, self.params, self.rng), reason)

    def _on_rollover(self, event: Event) -> None:
        self.energy.accrue_all(self._now)
        self._flow_reports.clear()

        if self.detection_enabled:
            for cluster in self.hierarchy.clusters:
                self._watch_cluster(cluster.co, cluster)

        self.ledger.close_window()
        self.coins.roll()
        self.log.emit(self._now, RecordKind.WINDOW, data={'energy': self._energies(),
                                                          'alive': network_alive_fraction(self.network)})

    def _on_death(self, node: NodeId, time: float) -> None:
        self.log.emit(time, RecordKind.DEATH, node=node)
        LOGGER.info('node %s died at %s', node, time)

        if self._closing:
            return

        if node in self.hierarchy.role_nodes() or node == self.hierarchy.gn:
            self.queue.push(time, EventKind.RECONFIGURE_TRIGGER, 'death')

        ratio = network_alive_fraction(self.network)

        if not self._deactivated and check_deactivation(ratio, self.thresholds.lifetime_threshold):
            self._deactivated = True
            self.log.emit(time, RecordKind.DEACTIVATED, data={'alive': ratio})
            LOGGER.info('network deactivated at %s with %.2f of its nodes alive', time, ratio)

    # Detection stages

    @detection_stage
    def _stamp(self, node: NodeId, message: DataPacket) -> Optional[int]:
        packet = message.packet
        origin = packet.origin
        known = origin in self.network and self.hierarchy.zone_of(origin) == node
        wake_count = self.coins.wake_count(origin)

        if self._misbehaves(node, Behavior.FALSE_FLAG):
            packet.stamp(1)
        else:
            anomaly_detect(self.coins, packet, self._now, self.thresholds,
                           self.network[origin].sleep_schedule if known else None)

        self.log.emit(self._now, RecordKind.STAMP, node=node, peer=origin, msg_id=message.msg_id,
                      pkt_id=packet.pkt_id, verdict=str(packet.status),
                      data={'t1': self._now, 'wake_count': wake_count, 'known': known})

        if not known:
            self.note(node, 'unknown_origin', origin=origin, pkt_id=packet.pkt_id)

        return packet.status

    @detection_stage
    def _confirm(self, node: NodeId, observed: DataPacket) -> Optional[WarningTicket]:
        packet = observed.packet
        origin = packet.origin
        self.ledger.record_observation(node, origin, self._now)
        count = self.ledger.observed_count(node, origin, self._now)
        residual = observed.energy_report if observed.energy_report is not None \
            else self.energy.residual_energy(origin)

        ticket = confirm_intrusion(node, packet, count, residual, self.thresholds, self._now, self.scenario.band_mode)

        if ticket is None and self._misbehaves(node, Behavior.FALSE_TICKET):
            reason = TicketReason.PACKET_COUNT if count > self.thresholds.th_max else TicketReason.LOW_ENERGY
            ticket = WarningTicket(issuer=node, subject_node=origin, subject_packet=packet.pkt_id,
                                   issued_at=self._now, reason=reason)

        self.log.emit(self._now, RecordKind.OBSERVE, node=node, peer=origin, msg_id=observed.msg_id,
                      pkt_id=packet.pkt_id, verdict='clear' if ticket is None else 'ticket',
                      reason=None if ticket is None else ticket.reason.value,
                      data={'count': count, 'residual': residual, 'zo': observed.src})

        return ticket

    @detection_stage
    def _decide(self, node: NodeId, message: DataPacket, tickets: Dict[NodeId, WarningTicket]) -> Decision:
        packet = message.packet
        warnings = self.ledger.warning_count(packet.origin, self._now)
        decision = decide_action(packet, tickets.values(), warnings, self.thresholds)

        self.log.emit(self._now, RecordKind.VERDICT, node=node, peer=packet.origin, msg_id=message.msg_id,
                      pkt_id=packet.pkt_id, verdict=decision.action.value,
                      data={'status': packet.status, 'issuers': sorted(tickets), 'warnings': warnings,
                            'zo': message.src})

        return decision

    @detection_stage
    def _watch_cluster(self, node: NodeId, cluster: RoleAssignment) -> None:
        """Run the ZO, MN and CO watchdogs of one cluster at a window boundary."""
        now, network, thresholds = self._now, self.network, self.thresholds
        active_mns = [mn for mn in cluster.mns if network[mn].active]

        for zo in cluster.zos:
            if not network[zo].active:
                continue

            hearing = [mn for mn in active_mns if network.in_range(mn, zo)]
            finding = watchdog_zo(zo, hearing, self.ledger.false_detections(zo, now), thresholds)

            if finding is None:
                continue

            self.log.emit(now, RecordKind.WATCHDOG, node=zo, peer=node, verdict='fired', reason='zo',
                          data={**finding.evidence, 'reporters': list(finding.reporters)})

            for mn in finding.reporters:
                ticket = WarningTicket(issuer=mn, subject_node=zo, subject_packet=None, issued_at=now,
                                       reason=TicketReason.ZO_FALSE_DETECTION)
                self.transmit(WarningTicketMessage(msg_id=self.new_msg_id(), src=mn, dst=node, sent_at=now,
                                                   ticket=ticket))

        uncorroborated = {mn: self.ledger.uncorroborated(mn, now) for mn in active_mns}

        for finding in watchdog_mn(active_mns, self.ledger.reporting_mns(now), uncorroborated, thresholds):
            self.log.emit(now, RecordKind.WATCHDOG, node=finding.subject, peer=node, verdict='fired', reason='mn',
                          data=finding.evidence)
            self._block(finding.subject, node, 'watchdog_mn', finding.evidence)

        if not network[node].active:
            return

        volumes = {mn: v for mn, v in self.ledger.flow_volumes(node).items() if mn in active_mns}
        co_finding = watchdog_co(node, volumes, thresholds)

        if co_finding is None:
            detectors = flow_detectors(volumes, thresholds)

            if detectors:
                self.log.emit(now, RecordKind.WATCHDOG, node=node, verdict='insufficient', reason='co',
                              data={'reporters': detectors})
            return

        self.log.emit(now, RecordKind.WATCHDOG, node=node, peer=self.hierarchy.gn, verdict='fired', reason='co',
                      data={**co_finding.evidence, 'reporters': list(co_finding.reporters)})

        for mn in co_finding.reporters:
            ticket = WarningTicket(issuer=mn, subject_node=node, subject_packet=None, issued_at=now,
                                   reason=TicketReason.CO_FLOW)
            self.transmit(WarningTicketMessage(msg_id=self.new_msg_id(), src=mn, dst=self.hierarchy.gn,
                                               sent_at=now, ticket=ticket))

    # Dispositions

    def _observe(self, origin: NodeId, decider: NodeId) -> None:
        node = self.network[origin]

        if node.disposition is not Disposition.NORMAL:
            return

        node.disposition = Disposition.OBSERVED
        self.log.emit(self._now, RecordKind.DISPOSITION, node=origin, peer=decider, verdict='observed',
                      reason='drop_fake')

    def _block(self, subject: NodeId, decider: NodeId, reason: str, data: Dict[str, Any]) -> None:
        """Put `subject` to sleep for good and tell the GN and the cluster's role holders."""
        if subject not in self.network or not self.network[subject].active:
            return

        node = self.network[subject]
        self.set_power(subject, PowerMode.ASLEEP)

        if not node.alive:
            return

        node.disposition = Disposition.BLOCKED
        node.awake_until = 0.0
        self.log.emit(self._now, RecordKind.DISPOSITION, node=subject, peer=decider, verdict='blocked', reason=reason,
                      data=data)
        LOGGER.info('node %s blocked by %s at %s (%s)', subject, decider, self._now, reason)

        cluster = self.hierarchy.cluster_of(subject) or self.hierarchy.cluster_of(decider)
        recipients = {self.hierarchy.gn}

        if cluster is not None:
            recipients |= {cluster.co, *cluster.mns, *cluster.zos}

        for recipient in sorted(recipients - {decider, subject}):
            self.transmit(BlockNotice(msg_id=self.new_msg_id(), src=decider, dst=recipient, sent_at=self._now,
                                      subject=subject, reason=reason))

        if subject in self.hierarchy.role_nodes():
            self.queue.push(self._now, EventKind.RECONFIGURE_TRIGGER, 'blocked')


def run(scenario: ScenarioConfig, *, detection_enabled: Optional[bool] = None, seed: Optional[int] = None) -> RunResult:
    """
    Simulate `scenario` to completion.

    :raises: ConfigurationError when the scenario cannot be deployed
    """
    return Simulation(scenario, detection_enabled=detection_enabled, seed=seed).run()

"""Tests."""
import logging
import math

import pytest

from segnet.base.exceptions import ReplayMismatchError
from segnet.base.units import to_micro
from segnet.config import BandMode, Thresholds, load_fixture, with_overrides
from segnet.detection import (Action, DetectionLedger, TicketReason, WarningTicket, anomaly_status,
                              choose_action, confirm_intrusion, decide_action, detection_stage, flow_abnormal,
                              intrusion_reason, replay, should_block, watchdog_co, watchdog_mn, watchdog_zo)
from segnet.protocol import Packet
from segnet.simkernel import run
from segnet.topology import SleepSchedule
from segnet.tracing import RecordKind

SCHEDULE = SleepSchedule(sleep_start=0.0, sleep_end=80.0, period=100.0)
THRESHOLDS = Thresholds()
LOW = to_micro(980.0)


def _ticket(issuer, subject, pkt_id, reason=TicketReason.PACKET_COUNT):
    return WarningTicket(issuer=issuer, subject_node=subject, subject_packet=pkt_id, issued_at=0.0, reason=reason)


class TestAnomalyDetection:

    def test_unknown_origin_is_suspected(self):
        assert anomaly_status(None, 89.0, 0, 3) == 1

    def test_sleep_window(self):
        assert anomaly_status(SCHEDULE, 12.0, 1, 3) == 1
        assert anomaly_status(SCHEDULE, 80.0, 1, 3) == 1
        assert anomaly_status(SCHEDULE, 89.0, 1, 3) == 0

    def test_wake_count(self):
        assert anomaly_status(SCHEDULE, 89.0, 3, 3) == 0
        assert anomaly_status(SCHEDULE, 89.0, 4, 3) == 1


class TestIntrusionConfirmation:

    def test_outside_the_band(self):
        assert intrusion_reason(4, LOW, THRESHOLDS) is TicketReason.PACKET_COUNT
        assert intrusion_reason(0, LOW, THRESHOLDS) is TicketReason.LOW_ENERGY
        assert intrusion_reason(2, LOW, THRESHOLDS) is None

    def test_energy_gate(self):
        assert intrusion_reason(4, to_micro(990.0), THRESHOLDS) is None
        assert intrusion_reason(4, to_micro(989.999999), THRESHOLDS) is TicketReason.PACKET_COUNT

    def test_inside_the_band(self):
        assert intrusion_reason(2, LOW, THRESHOLDS, BandMode.INSIDE) is TicketReason.LOW_ENERGY
        assert intrusion_reason(4, LOW, THRESHOLDS, BandMode.INSIDE) is None

    def test_ticket_fields(self):
        packet = Packet(pkt_id=4, origin=1, payload_kind='temperature', created_at=26.0)
        ticket = confirm_intrusion(7, packet, 4, LOW, THRESHOLDS, 27.0)

        assert ticket == WarningTicket(issuer=7, subject_node=1, subject_packet=4, issued_at=27.0,
                                       reason=TicketReason.PACKET_COUNT)
        assert confirm_intrusion(7, packet, 2, LOW, THRESHOLDS, 27.0) is None


class TestDecision:

    def test_actions(self):
        assert choose_action(1, []) is Action.DROP_ERRONEOUS
        assert choose_action(0, []) is Action.FORWARD
        assert choose_action(None, []) is Action.FORWARD
        assert choose_action(1, [7]) is Action.FORWARD
        assert choose_action(1, [7, 7]) is Action.FORWARD
        assert choose_action(0, [7, 8]) is Action.DROP_FAKE

    def test_block_threshold(self):
        assert should_block(6, THRESHOLDS)
        assert not should_block(5, THRESHOLDS)
        assert not should_block(10 ** 6, Thresholds(warning_block_threshold=math.inf))

    def test_tickets_for_other_packets_are_ignored(self):
        packet = Packet(pkt_id=4, origin=1, payload_kind='temperature', created_at=26.0, status=1)
        decision = decide_action(packet, [_ticket(7, 1, 4), _ticket(8, 1, 3)], 6, THRESHOLDS)

        assert decision.action is Action.FORWARD
        assert not decision.observe
        assert decision.block

    def test_drop_fake_observes(self):
        packet = Packet(pkt_id=4, origin=1, payload_kind='temperature', created_at=26.0, status=1)
        decision = decide_action(packet, [_ticket(7, 1, 4), _ticket(8, 1, 4)], 2, THRESHOLDS)

        assert decision.action is Action.DROP_FAKE
        assert decision.observe
        assert not decision.block


class TestLedger:

    def test_observation_window(self):
        ledger = DetectionLedger(100.0)

        for t in (0.0, 50.0, 100.0):
            ledger.record_observation(7, 1, t)

        assert ledger.observed_count(7, 1, 100.0) == 2
        assert ledger.observed_count(7, 1, 149.0) == 2
        assert ledger.observed_count(7, 1, 150.0) == 1
        assert ledger.observed_count(8, 1, 150.0) == 0

    def test_tickets(self):
        ledger = DetectionLedger(100.0)
        ledger.record_ticket(_ticket(7, 1, 1), 10.0)
        ledger.record_ticket(_ticket(8, 1, 1), 10.0)
        ledger.record_ticket(_ticket(7, 1, 2), 20.0)

        assert ledger.warning_count(1, 20.0) == 3
        assert ledger.issuers(1) == frozenset({7, 8})
        assert ledger.reporting_mns(20.0) == frozenset({7, 8})
        assert ledger.uncorroborated(7, 20.0) == 1
        assert ledger.uncorroborated(8, 20.0) == 0
        assert ledger.warning_count(1, 115.0) == 1
        assert ledger.reporting_mns(115.0) == frozenset({7})

    def test_only_packet_tickets_count(self):

        with pytest.raises(ValueError):
            DetectionLedger(100.0).record_ticket(_ticket(7, 5, None, TicketReason.ZO_FALSE_DETECTION), 0.0)

    def test_false_detections(self):
        ledger = DetectionLedger(300.0)

        for t in (91.0, 191.0, 291.0):
            ledger.record_false_detection(5, t)

        assert ledger.false_detections(5, 300.0) == 3
        assert ledger.false_detections(5, 391.0) == 2

    def test_flow_windows(self):
        ledger = DetectionLedger(100.0)

        for _ in range(4):
            ledger.record_flow(7, 13)

        ledger.record_flow(8, 12)
        ledger.close_window()
        ledger.record_flow(7, 13)
        ledger.record_flow(7, 13)

        assert ledger.flow_volumes(13) == {7: ((4,), 2)}

        ledger.close_window()

        assert ledger.flow_volumes(12) == {8: ((1, 0), 0)}


class TestWatchdogs:

    strict = Thresholds(false_detection_threshold=5)

    def test_zone_owner(self):
        finding = watchdog_zo(5, [8, 7], 6, self.strict)

        assert finding.kind == 'zo' and finding.subject == 5
        assert finding.reporters == (7, 8)
        assert watchdog_zo(5, [7, 8], 5, self.strict) is None
        assert watchdog_zo(5, [], 6, self.strict) is None

    def test_monitor(self):
        mns = [7, 8, 9, 10, 11, 12]
        culprits = watchdog_mn(mns, {7}, {7: 6, 8: 0}, self.strict)

        assert [f.subject for f in culprits] == [7]
        assert watchdog_mn(mns, {7}, {7: 5}, self.strict) == []
        assert watchdog_mn(mns, {7}, {7: 6}, Thresholds(false_detection_threshold=5, ticket_rate_threshold=0.5)) == []
        assert watchdog_mn([], {7}, {7: 6}, self.strict) == []

    def test_flow_volume(self):
        assert not flow_abnormal([], 10, 3.0)
        assert not flow_abnormal([0, 0], 10, 3.0)
        assert not flow_abnormal([4, 4, 4], 12, 3.0)
        assert flow_abnormal([4, 4, 4], 13, 3.0)
        assert flow_abnormal([100, 4, 4, 4, 4], 40, 3.0)

    def test_cluster_owner_needs_two_monitors(self):
        one = {7: ((4, 4, 4), 40), 8: ((4, 4, 4), 4)}
        two = {7: ((4, 4, 4), 40), 8: ((4, 4, 4), 40)}

        assert watchdog_co(13, one, THRESHOLDS) is None

        finding = watchdog_co(13, two, THRESHOLDS)

        assert finding.subject == 13 and finding.reporters == (7, 8)


class TestDetectionStage:

    class Host:

        def __init__(self, active):
            self.active = active
            self.charged = []

        def detection_active(self, node):
            return self.active

        def charge_detection(self, node):
            self.charged.append(node)

        @detection_stage
        def evaluate(self, node, value):
            return value * 2

    def test_disabled_module_skips_and_costs_nothing(self):
        host = self.Host(False)

        assert host.evaluate(3, 5) is None
        assert host.charged == []

    def test_enabled_module_charges_the_evaluating_node(self):
        host = self.Host(True)

        assert host.evaluate(node=3, value=5) == 10
        assert host.charged == [3]


@pytest.fixture(scope='module')
def casestudy():
    scenario = load_fixture('casestudy')

    return scenario, run(scenario)


class TestReplay:

    def test_clean_trace_replays(self, casestudy):
        scenario, result = casestudy
        report = replay(result.trace, scenario)

        assert report.ok
        assert report.checked > 0
        assert report.skipped == 0

    def test_flipped_verdict_is_found(self, casestudy):
        scenario, result = casestudy
        trace = list(result.trace)
        index = next(i for i, r in enumerate(trace) if r.kind is RecordKind.VERDICT and r.verdict == 'DropFake')
        trace[index] = trace[index].model_copy(update={'verdict': 'Forward'})

        report = replay(trace, scenario)

        assert len(report.divergences) == 1
        divergence = report.divergences[0]
        assert divergence.seq == trace[index].seq
        assert (divergence.expected, divergence.recorded) == ('DropFake', 'Forward')

    def test_flipped_stamp_is_found(self, casestudy):
        scenario, result = casestudy
        trace = list(result.trace)
        index = next(i for i, r in enumerate(trace) if r.kind is RecordKind.STAMP and r.verdict == '1')
        trace[index] = trace[index].model_copy(update={'verdict': '0'})

        assert [d.seq for d in replay(trace, scenario).divergences] == [trace[index].seq]

    def test_other_seed_is_a_mismatch(self, casestudy):
        scenario, result = casestudy

        with pytest.raises(ReplayMismatchError, match='seed'):
            replay(result.trace, with_overrides(scenario, {'seed': 8}))

    def test_other_node_set_is_a_mismatch(self, casestudy):
        scenario, result = casestudy

        with pytest.raises(ReplayMismatchError, match='node set'):
            replay(result.trace, load_fixture('compromised_zo'))

    def test_empty_trace(self, caplog):
        caplog.set_level(logging.WARNING, logger='segnet.detection.oracle')
        report = replay([], load_fixture('casestudy'))

        assert report.ok and report.checked == 0
        assert 'no header' in caplog.text

    def test_compromised_verdicts_are_skipped(self):
        scenario = load_fixture('compromised_zo')
        report = replay(run(scenario).trace, scenario)

        assert report.ok
        assert report.skipped > 0

"""Tests."""
import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from segnet.base.exceptions import ProtocolError
from segnet.config import load_fixture
from segnet.protocol import (CoinLedger, DataPacket, Hello, Packet, SensingQuery, SleepSignal, WakeUpCoin,
                             boundaries, handle_new_node_mid_cycle, in_sleep_window, issue_query, next_hop,
                             relay_query, route_packet, scheduled_asleep, send_wakeup, sense, wake_zone)
from segnet.topology import Disposition, ElectionParameters, Hierarchy, PowerMode, SleepSchedule, deploy, elect

from .factories import ids

SCHEDULE = SleepSchedule(sleep_start=0.0, sleep_end=80.0, period=100.0)


class Recorder:
    """Stands in for the event loop: keeps what the flows send instead of delivering it."""

    def __init__(self, name='casestudy'):
        config = load_fixture(name)
        self.label = ids(config)
        self.network = deploy(config)
        self.hierarchy = elect(self.network, ElectionParameters.from_config(config), random.Random(1))
        self.coins = CoinLedger()
        self.now = 85.0
        self.sent = []
        self.notes = []
        self._msg_ids = itertools.count(1)
        self._pkt_ids = itertools.count(1)

    def transmit(self, message):
        self.sent.append(message)

    def new_msg_id(self):
        return next(self._msg_ids)

    def new_pkt_id(self):
        return next(self._pkt_ids)

    def set_power(self, node, mode):
        self.network[node].power_mode = mode

    def note(self, node, reason, **data):
        self.notes.append((node, reason))


class TestSchedule:

    def test_window_is_closed(self):
        assert in_sleep_window(SCHEDULE, 0.0)
        assert in_sleep_window(SCHEDULE, 80.0)
        assert in_sleep_window(SCHEDULE, 100.0)
        assert not in_sleep_window(SCHEDULE, 80.5)
        assert not in_sleep_window(SCHEDULE, 99.0)

    def test_power_view_wakes_at_window_end(self):
        assert scheduled_asleep(SCHEDULE, 79.9)
        assert not scheduled_asleep(SCHEDULE, 80.0)

    def test_offset_window(self):
        schedule = SleepSchedule(sleep_start=20.0, sleep_end=60.0, period=100.0)

        assert in_sleep_window(schedule, 20.0)
        assert in_sleep_window(schedule, 160.0)
        assert not in_sleep_window(schedule, 10.0)
        assert not in_sleep_window(schedule, 110.0)

    def test_boundaries(self):
        assert list(boundaries(SCHEDULE, 250.0)) == [(0.0, True), (80.0, False), (100.0, True), (180.0, False),
                                                     (200.0, True)]

    def test_invalid_schedule(self):

        with pytest.raises(ValueError):
            SleepSchedule(sleep_start=10.0, sleep_end=10.0, period=100.0)

    @given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=0, max_value=50))
    def test_window_repeats_every_period(self, t, k):
        assert in_sleep_window(SCHEDULE, t) == in_sleep_window(SCHEDULE, t + k * 100)


class TestMessages:

    def test_packet_is_stamped_once(self):
        packet = Packet(pkt_id=1, origin=1, payload_kind='temperature', created_at=0.0)
        packet.stamp(0)

        with pytest.raises(ProtocolError):
            packet.stamp(1)

    def test_invalid_status(self):

        with pytest.raises(ProtocolError):
            Packet(pkt_id=1, origin=1, payload_kind='temperature', created_at=0.0).stamp(2)

    def test_receipt_times_increase(self):
        packet = Packet(pkt_id=1, origin=1, payload_kind='temperature', created_at=0.0)
        packet.receive(1.0)
        packet.receive(2.0)

        with pytest.raises(ProtocolError):
            packet.receive(2.0)

        assert packet.hops == 2

    def test_replica_has_its_own_receipts(self):
        packet = Packet(pkt_id=1, origin=1, payload_kind='temperature', created_at=0.0, status=0)
        packet.receive(1.0)
        replica = packet.replicate()
        replica.receive(2.0)

        assert replica.pkt_id == packet.pkt_id and replica.status == 0
        assert packet.receipt_times == [1.0]

    def test_no_message_to_self(self):

        with pytest.raises(ProtocolError):
            Hello(msg_id=1, src=3, dst=3, sent_at=0.0)

    def test_data_packet_description(self):
        packet = Packet(pkt_id=4, origin=1, payload_kind='humidity', created_at=0.0)
        message = DataPacket(msg_id=9, src=1, dst=5, sent_at=0.0, packet=packet, energy_report=7)

        assert message.describe() == {'origin': 1, 'payload_kind': 'humidity', 'energy_report': 7}


class TestCoinLedger:

    def test_issued_coins_are_legitimate(self):
        coins = CoinLedger()
        coins.issue(1, 10, 5.0, 5)

        assert coins.is_legitimate(1, 10, 5)
        assert not coins.is_legitimate(1, 10, 6)
        assert not coins.is_legitimate(2, 10, 5)
        assert not coins.is_legitimate(1, 11, 5)

    def test_wake_count_includes_unsolicited(self):
        coins = CoinLedger()
        coins.issue(1, 10, 5.0, 5)
        coins.record_unsolicited(1)
        coins.record_unsolicited(1)

        assert coins.wake_count(1) == 3
        assert coins.unsolicited(1) == 2
        assert coins.issued(1) == ((10, 5.0),)

    def test_roll_keeps_coin_identities(self):
        coins = CoinLedger()
        coins.issue(1, 10, 5.0, 5)
        coins.record_unsolicited(1)
        coins.roll()

        assert coins.wake_count(1) == 0
        assert coins.is_legitimate(1, 10, 5)


class TestFlows:

    @pytest.fixture()
    def transport(self):
        return Recorder()

    def test_next_hop(self, transport):
        label, hierarchy = transport.label, transport.hierarchy

        assert next_hop(hierarchy, label['A']) == label['E']
        assert next_hop(hierarchy, label['E']) == label['M']
        assert next_hop(hierarchy, label['M']) == label['N']
        assert next_hop(hierarchy, label['N']) is None
        assert next_hop(hierarchy, label['G']) is None

    def test_query_goes_through_the_cluster_owner(self, transport):
        label = transport.label
        query = issue_query(transport, label['N'], label['E'])
        relayed = relay_query(transport, label['M'], query)

        assert (query.src, query.dst, query.target_zone) == (label['N'], label['M'], label['E'])
        assert (relayed.src, relayed.dst) == (label['M'], label['E'])
        assert transport.sent == [query, relayed]

    def test_query_needs_a_zone_owner(self, transport):

        with pytest.raises(ProtocolError):
            issue_query(transport, transport.label['N'], transport.label['A'])

    def test_send_wakeup_records_the_coin(self, transport):
        label = transport.label
        coin = send_wakeup(transport, label['E'], label['A'])

        assert transport.sent == [coin]
        assert (coin.src, coin.dst, coin.issuer, coin.forged) == (label['E'], label['A'], label['E'], False)
        assert transport.coins.issued(label['A']) == ((coin.coin_id, 85.0),)
        assert transport.coins.wake_count(label['A']) == 1

    def test_wake_zone_issues_coins(self, transport):
        label = transport.label
        coins = wake_zone(transport, label['E'])

        assert [c.dst for c in coins] == [label['A'], label['B']]
        assert all(isinstance(c, WakeUpCoin) and c.issuer == label['E'] for c in coins)
        assert all(transport.coins.is_legitimate(c.dst, c.coin_id, label['E']) for c in coins)

    def test_wake_zone_skips_blocked_nodes(self, transport):
        label = transport.label
        transport.network[label['A']].disposition = Disposition.BLOCKED

        assert [c.dst for c in wake_zone(transport, label['E'])] == [label['B']]
        assert wake_zone(transport, label['M']) == []

    def test_sense_reports_energy(self, transport):
        label = transport.label
        message = sense(transport, label['C'])

        assert message.dst == label['F']
        assert message.packet.origin == label['C']
        assert message.packet.created_at == 85.0
        assert message.energy_report == transport.network[label['C']].energy

    def test_sense_off_the_hierarchy(self, transport):
        transport.hierarchy = Hierarchy(gn=transport.label['N'])

        assert sense(transport, transport.label['A']) is None
        assert transport.notes == [(transport.label['A'], 'no_route')]

    def test_route_packet_copies(self, transport):
        label = transport.label
        message = sense(transport, label['A'])
        copies = route_packet(transport, label['E'], message, copies=3)

        assert [c.dst for c in copies] == [label['M']] * 3
        assert {c.packet.pkt_id for c in copies} == {message.packet.pkt_id}
        assert len({c.msg_id for c in copies}) == 3
        assert copies[0].packet is message.packet
        assert copies[1].packet is not message.packet

    def test_mid_cycle_join_parks_the_node(self, transport):
        label = transport.label
        signal = handle_new_node_mid_cycle(transport, label['N'], label['B'])

        assert isinstance(signal, SleepSignal)
        assert transport.network[label['B']].parked
        assert transport.network[label['B']].power_mode is PowerMode.ASLEEP

    def test_queries_carry_their_zone(self):
        query = SensingQuery(msg_id=1, src=14, dst=13, sent_at=0.0, target_zone=5)

        assert query.describe() == {'target_zone': 5}

"""
The three detection stages as pure rules.

ZO anomaly detection stamps a packet, MN intrusion confirmation may issue a warning ticket,
and the CO decides what happens to the packet and its origin.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from ..base.units import Micro, NodeId, to_micro
from ..config.schema import BandMode, Thresholds
from ..protocol.ledger import CoinLedger
from ..protocol.messages import Packet
from ..protocol.schedule import in_sleep_window
from ..topology.types import SleepSchedule
from .tickets import TicketReason, WarningTicket


class Action(str, Enum):

    FORWARD = 'Forward'
    DROP_ERRONEOUS = 'DropErroneous'
    DROP_FAKE = 'DropFake'


@dataclass(frozen=True)
class Decision:

    action: Action
    observe: bool
    block: bool
    warnings: int


def anomaly_status(schedule: Optional[SleepSchedule], t1: float, wake_count: int, th_token: int) -> int:
    """
    1 (suspected) iff the packet was received inside the origin's sleep window or the origin
    was woken more than `th_token` times; an unknown origin (no schedule) is always suspected.
    """
    if schedule is None:
        return 1

    return int(in_sleep_window(schedule, t1) or wake_count > th_token)


def anomaly_detect(coins: CoinLedger, packet: Packet, t1: float, thresholds: Thresholds,
                   schedule: Optional[SleepSchedule]) -> Packet:
    packet.stamp(anomaly_status(schedule, t1, coins.wake_count(packet.origin), thresholds.th_token))

    return packet


def count_anomalous(count: int, thresholds: Thresholds, band_mode: BandMode) -> bool:
    within = thresholds.th_min <= count <= thresholds.th_max

    return not within if band_mode is BandMode.OUTSIDE else within


def intrusion_reason(count: int, residual: Micro, thresholds: Thresholds,
                     band_mode: BandMode = BandMode.OUTSIDE) -> Optional[TicketReason]:
    """Why a monitor would ticket, or None."""
    if residual >= to_micro(thresholds.th_energy) or not count_anomalous(count, thresholds, band_mode):
        return None

    return TicketReason.PACKET_COUNT if count > thresholds.th_max else TicketReason.LOW_ENERGY


def confirm_intrusion(mn: NodeId, packet: Packet, count: int, residual: Micro, thresholds: Thresholds,
                      time: float, band_mode: BandMode = BandMode.OUTSIDE) -> Optional[WarningTicket]:
    reason = intrusion_reason(count, residual, thresholds, band_mode)

    if reason is None:
        return None

    return WarningTicket(issuer=mn, subject_node=packet.origin, subject_packet=packet.pkt_id, issued_at=time,
                         reason=reason)


def choose_action(status: Optional[int], issuers: Iterable[NodeId]) -> Action:
    distinct = set(issuers)

    if len(distinct) >= 2:
        return Action.DROP_FAKE

    if status == 1 and not distinct:
        return Action.DROP_ERRONEOUS

    return Action.FORWARD


def should_block(warnings: int, thresholds: Thresholds) -> bool:
    return warnings > thresholds.warning_block_threshold


def decide_action(packet: Packet, tickets: Iterable[WarningTicket], warnings: int,
                  thresholds: Thresholds) -> Decision:
    """
    CO verdict over one packet and the tickets collected for it.

    `warnings` is cnt(Warning) for the packet's origin within the window, these tickets included.
    """
    action = choose_action(packet.status, (t.issuer for t in tickets if t.subject_packet == packet.pkt_id))

    return Decision(action=action, observe=action is Action.DROP_FAKE, block=should_block(warnings, thresholds),
                    warnings=warnings)

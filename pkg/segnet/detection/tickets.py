"""Warning tickets."""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

from ..base.units import NodeId


class TicketReason(str, Enum):

    PACKET_COUNT = 'PacketCountAnomaly'
    LOW_ENERGY = 'LowResidualEnergy'
    ZO_FALSE_DETECTION = 'ZoFalseDetection'
    CO_FLOW = 'CoFlowAnomaly'


@dataclass(frozen=True)
class WarningTicket:
    """An MN's assertion that a packet, node or flow shows intrusion symptoms."""

    issuer: NodeId
    subject_node: NodeId
    subject_packet: Optional[int]
    issued_at: float
    reason: TicketReason

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'issuer': self.issuer, 'subject_node': self.subject_node,
                                'issued_at': self.issued_at, 'reason': self.reason.value}

        if self.subject_packet is not None:
            data['subject_packet'] = self.subject_packet

        return data

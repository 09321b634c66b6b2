"""Message vocabulary."""
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Any, ClassVar, Dict, List, Optional

from ..base.exceptions import ProtocolError
from ..base.units import Micro, NodeId

if TYPE_CHECKING:
    from ..detection.tickets import WarningTicket


@dataclass
class Packet:
    """Sensing data travelling SN -> ZO -> CO -> GN."""

    pkt_id: int
    origin: NodeId
    payload_kind: str
    created_at: float
    status: Optional[int] = None
    receipt_times: List[float] = field(default_factory=list)

    def stamp(self, status: int) -> None:
        if self.status is not None:
            raise ProtocolError(f'packet {self.pkt_id} is already stamped')

        if status not in (0, 1):
            raise ProtocolError(f'invalid packet status {status}')

        self.status = status

    def receive(self, time: float) -> None:
        if self.receipt_times and time <= self.receipt_times[-1]:
            raise ProtocolError(f'packet {self.pkt_id} receipt times must increase')

        self.receipt_times.append(time)

    @property
    def hops(self) -> int:
        return len(self.receipt_times)

    def replicate(self) -> 'Packet':
        return Packet(self.pkt_id, self.origin, self.payload_kind, self.created_at, self.status,
                      list(self.receipt_times))


@dataclass(frozen=True, kw_only=True)
class Message:

    kind: ClassVar[str] = 'Message'
    control: ClassVar[bool] = True

    msg_id: int
    src: NodeId
    dst: NodeId
    sent_at: float
    forged: bool = False

    def __post_init__(self) -> None:
        if self.src == self.dst:
            raise ProtocolError(f'{self.kind} {self.msg_id} addressed to its own source {self.src}')

    def describe(self) -> Dict[str, Any]:
        """Payload fields worth tracing."""
        return {}

    def readdress(self, msg_id: int, src: NodeId, dst: NodeId, sent_at: float) -> 'Message':
        return replace(self, msg_id=msg_id, src=src, dst=dst, sent_at=sent_at)


@dataclass(frozen=True, kw_only=True)
class Hello(Message):

    kind: ClassVar[str] = 'Hello'

    profile: Dict[str, Any] = field(default_factory=dict)

    def describe(self) -> Dict[str, Any]:
        return dict(self.profile)


@dataclass(frozen=True, kw_only=True)
class Ack(Message):

    kind: ClassVar[str] = 'Ack'


@dataclass(frozen=True, kw_only=True)
class EnergyQuery(Message):

    kind: ClassVar[str] = 'EnergyQuery'


@dataclass(frozen=True, kw_only=True)
class EnergyReport(Message):

    kind: ClassVar[str] = 'EnergyReport'

    energy: Micro

    def describe(self) -> Dict[str, Any]:
        return {'energy': self.energy}


@dataclass(frozen=True, kw_only=True)
class SensingQuery(Message):

    kind: ClassVar[str] = 'SensingQuery'

    target_zone: NodeId

    def describe(self) -> Dict[str, Any]:
        return {'target_zone': self.target_zone}


@dataclass(frozen=True, kw_only=True)
class WakeUpCoin(Message):
    """Opaque wake-up token; legitimacy is judged by the coin ledger."""

    kind: ClassVar[str] = 'WakeUpCoin'

    coin_id: int
    issuer: NodeId

    def describe(self) -> Dict[str, Any]:
        return {'coin_id': self.coin_id, 'issuer': self.issuer}


@dataclass(frozen=True, kw_only=True)
class DataPacket(Message):

    kind: ClassVar[str] = 'DataPacket'
    control: ClassVar[bool] = False

    packet: Packet
    energy_report: Optional[Micro] = None

    def describe(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'origin': self.packet.origin, 'payload_kind': self.packet.payload_kind}

        if self.energy_report is not None:
            data['energy_report'] = self.energy_report

        return data


@dataclass(frozen=True, kw_only=True)
class WarningTicketMessage(Message):

    kind: ClassVar[str] = 'WarningTicket'

    ticket: 'WarningTicket'

    def describe(self) -> Dict[str, Any]:
        return self.ticket.to_dict()


@dataclass(frozen=True, kw_only=True)
class SleepSignal(Message):

    kind: ClassVar[str] = 'SleepSignal'


@dataclass(frozen=True, kw_only=True)
class BlockNotice(Message):

    kind: ClassVar[str] = 'BlockNotice'

    subject: NodeId
    reason: str = ''

    def describe(self) -> Dict[str, Any]:
        return {'subject': self.subject, 'reason': self.reason}


@dataclass(frozen=True, kw_only=True)
class Overhear(Message):
    """A monitor node passively receiving a transmission addressed to someone else."""

    kind: ClassVar[str] = 'Overhear'

    observed: Message

    def describe(self) -> Dict[str, Any]:
        return {'observed': self.observed.msg_id, 'from': self.observed.src, 'to': self.observed.dst}

"""Query, wake-up and data flows along the SN -> ZO -> CO -> GN hierarchy."""
import logging
from typing import Any, List, Optional, Protocol

from ..base.exceptions import ProtocolError
from ..base.units import NodeId
from ..topology.types import Disposition, Hierarchy, Network, PowerMode
from .ledger import CoinLedger
from .messages import DataPacket, Message, Packet, SensingQuery, SleepSignal, WakeUpCoin

LOGGER = logging.getLogger(__name__)


class Transport(Protocol):
    """What a flow needs from the event loop that carries its messages."""

    network: Network
    hierarchy: Hierarchy
    coins: CoinLedger

    @property
    def now(self) -> float:
        ...

    def transmit(self, message: Message) -> None:
        ...

    def new_msg_id(self) -> int:
        ...

    def new_pkt_id(self) -> int:
        ...

    def set_power(self, node: NodeId, mode: PowerMode) -> None:
        ...

    def note(self, node: Optional[NodeId], reason: str, **data: Any) -> None:
        ...


def next_hop(hierarchy: Hierarchy, node: NodeId) -> Optional[NodeId]:
    """Upward neighbour of `node`, None at the GN or off the hierarchy."""
    if node == hierarchy.gn:
        return None

    zo = hierarchy.zone_of(node)

    if zo is not None:
        return zo

    cluster = hierarchy.cluster_of(node)

    if cluster is None:
        return None

    if node in cluster.zos:
        return cluster.co

    if node == cluster.co:
        return hierarchy.gn

    return None


def issue_query(transport: Transport, gn: NodeId, zone: NodeId) -> SensingQuery:
    """
    Send the first hop (GN -> CO) of a sensing query for `zone`.

    :raises: ProtocolError when `zone` is not a zone owner of the current hierarchy
    """
    cluster = transport.hierarchy.cluster_of(zone)

    if cluster is None or zone not in cluster.zos:
        raise ProtocolError(f'node {zone} owns no zone')

    query = SensingQuery(msg_id=transport.new_msg_id(), src=gn, dst=cluster.co, sent_at=transport.now,
                         target_zone=zone)
    transport.transmit(query)

    return query


def relay_query(transport: Transport, co: NodeId, query: SensingQuery) -> SensingQuery:
    relayed = SensingQuery(msg_id=transport.new_msg_id(), src=co, dst=query.target_zone, sent_at=transport.now,
                           target_zone=query.target_zone)
    transport.transmit(relayed)

    return relayed


def send_wakeup(transport: Transport, zo: NodeId, sn: NodeId) -> WakeUpCoin:
    """Issue a coin to `sn` and record it in the coin ledger."""
    msg_id = transport.new_msg_id()
    transport.coins.issue(sn, msg_id, transport.now, zo)
    coin = WakeUpCoin(msg_id=msg_id, src=zo, dst=sn, sent_at=transport.now, coin_id=msg_id, issuer=zo)
    transport.transmit(coin)

    return coin


def wake_zone(transport: Transport, zo: NodeId) -> List[WakeUpCoin]:
    """Coin every sensing node of the zone that is not blocked."""
    cluster = transport.hierarchy.cluster_of(zo)

    if cluster is None or zo not in cluster.zone_members:
        return []

    members = sorted(cluster.zone_members[zo])

    return [send_wakeup(transport, zo, sn) for sn in members
            if transport.network[sn].disposition is not Disposition.BLOCKED]


def sense(transport: Transport, sn: NodeId) -> Optional[DataPacket]:
    """Sample the sensor and send the reading, with an energy report, to the zone owner."""
    node = transport.network[sn]
    zo = next_hop(transport.hierarchy, sn)

    if zo is None:
        transport.note(sn, 'no_route')
        return None

    packet = Packet(pkt_id=transport.new_pkt_id(), origin=sn, payload_kind=node.sensing,
                    created_at=transport.now)
    message = DataPacket(msg_id=transport.new_msg_id(), src=sn, dst=zo, sent_at=transport.now,
                         packet=packet, energy_report=node.energy)
    transport.transmit(message)

    return message


def route_packet(transport: Transport, node: NodeId, message: DataPacket, copies: int = 1) -> List[DataPacket]:
    """Move a packet held by `node` one hop up the hierarchy."""
    dst = next_hop(transport.hierarchy, node)

    if dst is None:
        transport.note(node, 'no_route', pkt_id=message.packet.pkt_id)
        return []

    sent = []

    for copy in range(copies):
        packet = message.packet if copy == 0 else message.packet.replicate()
        forward = DataPacket(msg_id=transport.new_msg_id(), src=node, dst=dst, sent_at=transport.now,
                             packet=packet, energy_report=message.energy_report)
        transport.transmit(forward)
        sent.append(forward)

    return sent


def handle_new_node_mid_cycle(transport: Transport, gn: NodeId, n: NodeId) -> SleepSignal:
    """Park a node that joined mid-cycle until the next reconfiguration."""
    node = transport.network[n]
    node.parked = True
    signal = SleepSignal(msg_id=transport.new_msg_id(), src=gn, dst=n, sent_at=transport.now)
    transport.transmit(signal)
    transport.set_power(n, PowerMode.ASLEEP)

    LOGGER.info('node %s joined mid-cycle at %s and is parked', n, transport.now)

    return signal

"""Per-activity energy accounting."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

from ..base.units import Micro, NodeId, to_micro
from ..config.schema import EnergyModel
from ..topology.types import Disposition, Network, PowerMode

LOGGER = logging.getLogger(__name__)


class Activity(str, Enum):

    TX = 'tx'
    RX = 'rx'
    SENSE = 'sense'
    DETECT = 'detect'
    IDLE = 'idle'
    SLEEP = 'sleep'


PER_EVENT = (Activity.TX, Activity.RX, Activity.SENSE, Activity.DETECT)


@dataclass(frozen=True)
class Charge:

    time: float
    node: NodeId
    activity: Activity
    amount: Micro


DeathListener = Callable[[NodeId, float], None]


class EnergyLedger:
    """
    Running balances over the nodes of a network, with an append-only charge log.

    Balances live on the node states in micro-units; a charge larger than the balance
    clamps it to zero and kills the node.
    """

    def __init__(self, model: EnergyModel, network: Network, on_death: Optional[DeathListener] = None) -> None:
        self.model = model
        self.network = network
        self.on_death = on_death
        self.costs: Dict[Activity, Micro] = {
            Activity.TX: to_micro(model.cost_tx),
            Activity.RX: to_micro(model.cost_rx),
            Activity.SENSE: to_micro(model.cost_sense),
            Activity.DETECT: to_micro(model.cost_detect),
            Activity.IDLE: to_micro(model.cost_idle_per_time),
            Activity.SLEEP: to_micro(model.cost_sleep_per_time),
        }
        self.initial: Dict[NodeId, Micro] = {}
        self.log: Dict[NodeId, List[Charge]] = {}
        self._accrued_at: Dict[NodeId, float] = {}

        for node in network:
            self.register(node.id, 0.0)

    def register(self, node_id: NodeId, time: float) -> None:
        self.initial[node_id] = self.network[node_id].energy
        self.log[node_id] = []
        self._accrued_at[node_id] = time

    def _debit(self, node_id: NodeId, activity: Activity, cost: Micro, time: float) -> Micro:
        node = self.network[node_id]

        if not node.alive:
            LOGGER.warning('charging dead node %s for %s at %s ignored', node_id, activity.value, time)
            return 0

        spent = min(cost, node.energy)
        node.energy -= spent

        if spent:
            self.log[node_id].append(Charge(time, node_id, activity, spent))

        if node.energy == 0 and cost > 0:
            node.disposition = Disposition.DEAD

            if self.on_death is not None:
                self.on_death(node_id, time)

        return node.energy

    def charge(self, node_id: NodeId, activity: Activity, time: float, count: int = 1) -> Micro:
        """Charge `count` occurrences of a per-event activity; returns the new balance."""
        if activity not in PER_EVENT:
            raise ValueError(f'{activity.value} is charged by duration, use accrue')

        return self._debit(node_id, activity, self.costs[activity] * count, time)

    def accrue(self, node_id: NodeId, time: float) -> Micro:
        """Charge idle or sleep time since the last accrual, per the node's current power mode."""
        node = self.network[node_id]
        elapsed = time - self._accrued_at.get(node_id, time)
        self._accrued_at[node_id] = time

        if elapsed <= 0 or not node.alive:
            return node.energy

        activity = Activity.SLEEP if node.power_mode is PowerMode.ASLEEP else Activity.IDLE

        return self._debit(node_id, activity, round(self.costs[activity] * elapsed), time)

    def accrue_all(self, time: float) -> None:
        for node in self.network:
            self.accrue(node.id, time)

    def residual_energy(self, node_id: NodeId) -> Micro:
        node = self.network[node_id]

        return node.energy if node.alive else 0

    def spent(self, node_id: NodeId) -> Micro:
        return sum(c.amount for c in self.log[node_id])

    def conserved(self, node_id: NodeId) -> bool:
        return self.initial[node_id] - self.residual_energy(node_id) == self.spent(node_id)

    def snapshot(self) -> Tuple[Tuple[NodeId, Micro], ...]:
        return tuple((node.id, self.residual_energy(node.id)) for node in self.network)

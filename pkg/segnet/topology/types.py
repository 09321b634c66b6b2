"""Topology types."""
import copy
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

import numpy as np

from ..base.units import Micro, NodeId
from ..config.schema import CompromisedBehavior, NodeCategory


class Designation(str, Enum):

    GN = 'GN'
    CO = 'CO'
    MN = 'MN'
    ZO = 'ZO'
    SN = 'SN'
    UNASSIGNED = 'Unassigned'


class PowerMode(str, Enum):

    AWAKE = 'awake'
    ASLEEP = 'asleep'


class Disposition(str, Enum):

    NORMAL = 'normal'
    OBSERVED = 'observed'
    BLOCKED = 'blocked'
    DEAD = 'dead'


@dataclass(frozen=True)
class Position:

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError('coordinates must be finite')


@dataclass(frozen=True)
class SleepSchedule:
    """Periodic sleep window `[sleep_start, sleep_end]` repeating every `period`."""

    sleep_start: float
    sleep_end: float
    period: float

    def __post_init__(self) -> None:
        if not self.sleep_start < self.sleep_end <= self.sleep_start + self.period:
            raise ValueError('sleep schedule needs sleep_start < sleep_end <= sleep_start + period')


@dataclass
class NodeState:

    id: NodeId
    pos: Position
    category: NodeCategory
    desig: Designation
    energy: Micro
    capacity: Micro
    sleep_schedule: SleepSchedule
    maturity: int = 0
    neighbors: FrozenSet[NodeId] = frozenset()
    power_mode: PowerMode = PowerMode.AWAKE
    disposition: Disposition = Disposition.NORMAL
    detection_module_enabled: bool = False
    label: str = ''
    sensing: str = 'temperature'
    compromised: Optional[CompromisedBehavior] = None
    parked: bool = False
    awake_until: float = 0.0

    @property
    def alive(self) -> bool:
        return self.disposition is not Disposition.DEAD

    @property
    def active(self) -> bool:
        """Alive and allowed to communicate."""
        return self.disposition not in (Disposition.BLOCKED, Disposition.DEAD)

    @property
    def degree(self) -> int:
        return len(self.neighbors)

    @property
    def name(self) -> str:
        return self.label or str(self.id)


class Network:
    """Node states keyed by id, with a cached pairwise distance matrix."""

    def __init__(self, nodes: Iterable[NodeState], radio_range: float, gn: NodeId) -> None:
        self.radio_range = radio_range
        self.gn = gn
        self._nodes: Dict[NodeId, NodeState] = {}
        self._index: Dict[NodeId, int] = {}
        self._distances = np.zeros((0, 0))

        for node in sorted(nodes, key=lambda n: n.id):
            self._nodes[node.id] = node

        self._rebuild()

    def _rebuild(self) -> None:
        ids = sorted(self._nodes)
        self._index = {node_id: i for i, node_id in enumerate(ids)}
        coordinates = np.array([[self._nodes[i].pos.x, self._nodes[i].pos.y] for i in ids], dtype=float)

        if len(ids):
            delta = coordinates[:, None, :] - coordinates[None, :, :]
            self._distances = np.hypot(delta[..., 0], delta[..., 1])

        else:
            self._distances = np.zeros((0, 0))

    def __getitem__(self, node_id: NodeId) -> NodeState:
        return self._nodes[node_id]

    def __contains__(self, node_id: object) -> bool:
        return node_id in self._nodes

    def __iter__(self) -> Iterator[NodeState]:
        return iter(self._nodes[i] for i in sorted(self._nodes))

    def __len__(self) -> int:
        return len(self._nodes)

    @property
    def ids(self) -> List[NodeId]:
        return sorted(self._nodes)

    def add(self, node: NodeState) -> None:
        if node.id in self._nodes:
            raise ValueError(f'node {node.id} already deployed')

        self._nodes[node.id] = node
        self._rebuild()

    def distance(self, a: NodeId, b: NodeId) -> float:
        return float(self._distances[self._index[a], self._index[b]])

    def in_range(self, a: NodeId, b: NodeId) -> bool:
        """Closed-ball disk model."""
        return a != b and self.distance(a, b) <= self.radio_range

    def within_range(self, origin: NodeId, pool: Optional[Iterable[NodeId]] = None) -> List[NodeId]:
        candidates = self.ids if pool is None else sorted(pool)

        return [n for n in candidates if n in self._nodes and self.in_range(origin, n)]

    def refresh_neighbors(self) -> None:
        """Recompute every node's neighbor set over active nodes."""
        active = [n.id for n in self if n.active]

        for node in self:
            node.neighbors = frozenset(self.within_range(node.id, active))

    def alive_fraction(self) -> float:
        if not self._nodes:
            return 0.0

        return sum(1 for n in self if n.alive) / len(self._nodes)

    def copy(self) -> 'Network':
        return Network([copy.copy(n) for n in self], self.radio_range, self.gn)


@dataclass(frozen=True)
class RoleAssignment:
    """Roles and memberships of one cluster."""

    co: NodeId
    mns: Tuple[NodeId, ...]
    zos: Tuple[NodeId, ...]
    cluster_members: FrozenSet[NodeId]
    simple_members: FrozenSet[NodeId]
    zone_members: Mapping[NodeId, FrozenSet[NodeId]]
    g_neighbors: FrozenSet[NodeId]
    intelligent_set: FrozenSet[NodeId]
    simple_set: FrozenSet[NodeId]

    def to_dict(self) -> Dict[str, object]:
        return {
            'co': self.co,
            'mns': list(self.mns),
            'zos': list(self.zos),
            'cluster_members': sorted(self.cluster_members),
            'simple_members': sorted(self.simple_members),
            'zone_members': {str(zo): sorted(self.zone_members[zo]) for zo in sorted(self.zone_members)},
            'g_neighbors': sorted(self.g_neighbors),
            'intelligent_set': sorted(self.intelligent_set),
            'simple_set': sorted(self.simple_set),
        }


@dataclass(frozen=True)
class Handshake:
    """One broadcast/acknowledge exchange of an election round."""

    kind: str
    origin: NodeId
    reached: Tuple[NodeId, ...]
    responders: Tuple[NodeId, ...]


@dataclass(frozen=True)
class RoleChange:

    node: NodeId
    before: Designation
    after: Designation


@dataclass(frozen=True)
class Hierarchy:
    """Outcome of an election round over the whole network."""

    gn: NodeId
    clusters: Tuple[RoleAssignment, ...] = ()
    g_neighbors: FrozenSet[NodeId] = frozenset()
    intelligent_set: FrozenSet[NodeId] = frozenset()
    simple_set: FrozenSet[NodeId] = frozenset()
    unreachable: FrozenSet[NodeId] = frozenset()
    handshakes: Tuple[Handshake, ...] = ()
    changes: Tuple[RoleChange, ...] = ()
    degraded: Tuple[str, ...] = ()
    _zone_of: Dict[NodeId, NodeId] = field(default_factory=dict, compare=False, repr=False)
    _cluster_of: Dict[NodeId, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        for index, cluster in enumerate(self.clusters):
            for member in cluster.cluster_members | {cluster.co}:
                self._cluster_of.setdefault(member, index)

            for zo, members in cluster.zone_members.items():
                self._cluster_of.setdefault(zo, index)

                for sn in members:
                    self._zone_of[sn] = zo
                    self._cluster_of.setdefault(sn, index)

    def zone_of(self, sn: NodeId) -> Optional[NodeId]:
        return self._zone_of.get(sn)

    def cluster_of(self, node: NodeId) -> Optional[RoleAssignment]:
        index = self._cluster_of.get(node)

        return None if index is None else self.clusters[index]

    def role_nodes(self) -> List[NodeId]:
        nodes = set()

        for cluster in self.clusters:
            nodes.add(cluster.co)
            nodes.update(cluster.mns)
            nodes.update(cluster.zos)

        return sorted(nodes)

    def to_dict(self) -> Dict[str, object]:
        return {
            'gn': self.gn,
            'clusters': [cluster.to_dict() for cluster in self.clusters],
            'unreachable': sorted(self.unreachable),
            'degraded': list(self.degraded),
        }

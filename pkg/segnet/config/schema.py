"""Scenario schema."""
import math
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..base.units import NodeId


class NodeCategory(str, Enum):

    BASE = 'base'
    INTELLIGENT = 'intelligent'
    SIMPLE = 'simple'


class BandMode(str, Enum):

    OUTSIDE = 'outside'
    INSIDE = 'inside'


class Behavior(str, Enum):
    """Misbehaviour of a compromised role holder."""

    FALSE_FLAG = 'false_flag'
    FALSE_TICKET = 'false_ticket'
    FLOW_FLOOD = 'flow_flood'


class Arrivals(str, Enum):

    PERIODIC = 'periodic'
    POISSON = 'poisson'


class _Model(BaseModel):

    model_config = ConfigDict(extra='forbid', frozen=True)


class CompromisedBehavior(_Model):

    kind: Behavior
    onset: float = Field(0.0, ge=0.0)
    flood_factor: int = Field(10, ge=2)


class NodeSpec(_Model):

    id: NodeId = Field(..., ge=0)
    label: Optional[str] = None
    x: float
    y: float
    category: Optional[NodeCategory] = None
    initial_energy: Optional[float] = Field(None, gt=0.0)
    sensing: str = 'temperature'
    join_at: float = Field(0.0, ge=0.0)
    compromised: Optional[CompromisedBehavior] = None

    @field_validator('x', 'y')
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError('coordinates must be finite')

        return value

    @model_validator(mode='after')
    def _category_or_energy(self) -> 'NodeSpec':
        if self.category is None and self.initial_energy is None:
            raise ValueError(f'node {self.id} needs a category or an initial_energy')

        return self

    @property
    def name(self) -> str:
        return self.label if self.label is not None else str(self.id)


class Thresholds(_Model):

    th_token: int = Field(3, ge=1)
    th_min: int = Field(1, ge=0)
    th_max: int = Field(3, ge=0)
    th_energy: float = Field(990.0, ge=0.0)
    warning_block_threshold: float = Field(5.0, ge=0.0)
    t_interval: float = Field(100.0, gt=0.0)
    false_detection_threshold: int = Field(10, ge=0)
    ticket_rate_threshold: float = Field(0.1, gt=0.0, le=1.0)
    flow_factor: float = Field(3.0, gt=1.0)
    lifetime_threshold: float = Field(0.5, ge=0.0, le=1.0)

    @model_validator(mode='after')
    def _band(self) -> 'Thresholds':
        if not self.th_min < self.th_max:
            raise ValueError('th_min must be lower than th_max')

        return self


class DutyCycle(_Model):

    period: float = Field(100.0, gt=0.0)
    sleep_start: float = Field(0.0, ge=0.0)
    sleep_end: float = Field(80.0, ge=0.0)

    @model_validator(mode='after')
    def _window(self) -> 'DutyCycle':
        if not self.sleep_start < self.sleep_end <= self.sleep_start + self.period:
            raise ValueError('duty cycle needs sleep_start < sleep_end <= sleep_start + period')

        return self


class EnergyModel(_Model):

    cost_tx: float = Field(3.0, ge=0.0)
    cost_rx: float = Field(2.0, ge=0.0)
    cost_sense: float = Field(1.0, ge=0.0)
    cost_detect: float = Field(1.0, ge=0.0)
    cost_idle_per_time: float = Field(0.1, ge=0.0)
    cost_sleep_per_time: float = Field(0.01, ge=0.0)
    initial_energy_simple: float = Field(1000.0, gt=0.0)
    initial_energy_base: float = Field(3000.0, gt=0.0)

    @model_validator(mode='after')
    def _sleep_saves(self) -> 'EnergyModel':
        if not self.cost_sleep_per_time < self.cost_idle_per_time:
            raise ValueError('cost_sleep_per_time must be lower than cost_idle_per_time')

        return self


class AttackerModel(_Model):

    kind: str = 'sleep_deprivation'
    node_id: NodeId = Field(NodeId(255), ge=0)
    targets: List[NodeId] = Field(..., min_length=1)
    rate: float = Field(..., gt=0.0)
    start: float = Field(0.0, ge=0.0)
    stop: Optional[float] = None
    arrivals: Arrivals = Arrivals.PERIODIC

    @field_validator('kind')
    @classmethod
    def _known_kind(cls, value: str) -> str:
        if value != 'sleep_deprivation':
            raise ValueError(f'unsupported attacker kind {value!r}')

        return value


class SimParameters(_Model):

    duration: float = Field(2000.0, gt=0.0)
    seed: int
    reconfigure_interval: Optional[float] = Field(None, gt=0.0)
    hop_latency: float = Field(1.0, gt=0.0)
    timer_t: Optional[float] = Field(None, gt=0.0)
    query_offset: float = Field(85.0, ge=0.0)
    queries_per_cycle: int = Field(1, ge=0)
    query_spacing: float = Field(2.0, gt=0.0)
    wake_hold: float = Field(2.0, ge=0.0)

    @property
    def reconfiguration_every(self) -> float:
        return self.reconfigure_interval if self.reconfigure_interval is not None else self.duration / 4

    @property
    def timer(self) -> float:
        return self.timer_t if self.timer_t is not None else 2 * self.hop_latency


class ScenarioConfig(_Model):

    name: str = 'scenario'
    nodes: List[NodeSpec]
    gateway: Optional[NodeId] = None
    radio_range: float = Field(..., gt=0.0)
    mu: float = Field(2.0, gt=1.0)
    k_mn: int = Field(6, ge=1)
    z_zo: int = Field(2, ge=1)
    clusters: int = Field(1, ge=1)
    thresholds: Thresholds = Thresholds()
    duty_cycle: DutyCycle = DutyCycle()
    energy: EnergyModel = EnergyModel()
    attacker: Optional[AttackerModel] = None
    sim: SimParameters
    detection_enabled: bool = True
    band_mode: BandMode = BandMode.OUTSIDE

    @model_validator(mode='after')
    def _consistent(self) -> 'ScenarioConfig':
        if not self.nodes:
            raise ValueError('a scenario needs at least one node')

        seen: Dict[int, int] = {}
        for index, node in enumerate(self.nodes):
            if node.id in seen:
                raise ValueError(f'nodes.{index}: duplicate node id {node.id} (first at nodes.{seen[node.id]})')

            seen[node.id] = index

        if self.gateway is not None and self.gateway not in seen:
            raise ValueError(f'gateway {self.gateway} is not a declared node')

        if self.attacker is not None:
            if self.attacker.node_id in seen:
                raise ValueError(f'attacker id {self.attacker.node_id} clashes with a network node')

            for target in self.attacker.targets:
                if target not in seen:
                    raise ValueError(f'attacker target {target} is not a declared node')

        return self

    @property
    def initial_energy_intelligent(self) -> float:
        """Intelligent nodes hold mu times the energy of simple nodes."""
        return self.mu * self.energy.initial_energy_simple

    @property
    def labels(self) -> Dict[int, str]:
        return {node.id: node.name for node in self.nodes}

    def node_by_label(self, label: str) -> NodeSpec:
        for node in self.nodes:
            if node.name == label:
                return node

        raise KeyError(label)

"""Deployment and neighbor discovery."""
import logging
from typing import FrozenSet, Iterable, Tuple

from ..base.exceptions import ConfigurationError, ProtocolError
from ..base.units import Micro, NodeId, to_micro
from ..config.schema import NodeCategory, NodeSpec, ScenarioConfig
from .types import Designation, Network, NodeState, Position, PowerMode, SleepSchedule

LOGGER = logging.getLogger(__name__)


def infer_category(spec: NodeSpec, config: ScenarioConfig) -> NodeCategory:
    """Hardware category, declared or inferred from the battery size."""
    if spec.category is not None:
        return spec.category

    energy = spec.initial_energy or 0.0

    if energy >= config.energy.initial_energy_base:
        return NodeCategory.BASE

    if energy > config.energy.initial_energy_simple:
        return NodeCategory.INTELLIGENT

    return NodeCategory.SIMPLE


def initial_energy(spec: NodeSpec, config: ScenarioConfig) -> Micro:
    if spec.initial_energy is not None:
        return to_micro(spec.initial_energy)

    category = infer_category(spec, config)

    if category is NodeCategory.BASE:
        return to_micro(config.energy.initial_energy_base)

    if category is NodeCategory.INTELLIGENT:
        return to_micro(config.initial_energy_intelligent)

    return to_micro(config.energy.initial_energy_simple)


def gateway_of(config: ScenarioConfig) -> NodeId:
    """The configured gateway, else the lowest-id base node deployed at start."""
    if config.gateway is not None:
        return config.gateway

    bases = sorted(spec.id for spec in config.nodes
                   if spec.join_at == 0 and infer_category(spec, config) is NodeCategory.BASE)

    if not bases:
        raise ConfigurationError('no GN-capable base node is deployed at start')

    return bases[0]


def schedule_of(config: ScenarioConfig) -> SleepSchedule:
    duty = config.duty_cycle

    return SleepSchedule(sleep_start=duty.sleep_start, sleep_end=duty.sleep_end, period=duty.period)


def make_node(spec: NodeSpec, config: ScenarioConfig, gn: NodeId) -> NodeState:
    """Instantiate a node Awake, Unassigned (or GN), inexperienced, with a full battery."""
    return NodeState(
        id=spec.id,
        pos=Position(spec.x, spec.y),
        category=infer_category(spec, config),
        desig=Designation.GN if spec.id == gn else Designation.UNASSIGNED,
        energy=initial_energy(spec, config),
        capacity=initial_energy(spec, config),
        sleep_schedule=schedule_of(config),
        power_mode=PowerMode.AWAKE,
        detection_module_enabled=spec.id == gn,
        label=spec.name,
        sensing=spec.sensing,
        compromised=spec.compromised,
    )


def _check_unique(specs: Iterable[NodeSpec]) -> None:
    seen = set()

    for spec in specs:
        if spec.id in seen:
            raise ConfigurationError(f'duplicate node id {spec.id}')

        seen.add(spec.id)


def deploy(config: ScenarioConfig) -> Network:
    """
    Instantiate the nodes deployed at time zero.

    :raises: ConfigurationError on duplicate ids, an empty deployment or a missing gateway
    """
    _check_unique(config.nodes)
    initial = [spec for spec in config.nodes if spec.join_at == 0]

    if not initial:
        raise ConfigurationError('scenario deploys zero nodes')

    gn = gateway_of(config)
    gateway = next((spec for spec in initial if spec.id == gn), None)

    if gateway is None or infer_category(gateway, config) is not NodeCategory.BASE:
        raise ConfigurationError(f'gateway {gn} must be a base node deployed at start')

    network = Network([make_node(spec, config, gn) for spec in initial], config.radio_range, gn)
    network.refresh_neighbors()

    return network


def reachable(network: Network, origin: NodeId) -> Tuple[NodeId, ...]:
    """Nodes a broadcast from `origin` physically reaches."""
    return tuple(n for n in network.within_range(origin) if network[n].alive and not network[n].parked)


def discover_neighbors(network: Network, origin: NodeId, timer_t: float, hop_latency: float) -> FrozenSet[NodeId]:
    """
    Broadcast a profile and collect the acknowledgements that arrive before `timer_t`.

    :raises: ProtocolError when the origin cannot transmit
    """
    node = network[origin]

    if not node.active or node.power_mode is not PowerMode.AWAKE:
        raise ProtocolError(f'node {origin} cannot broadcast ({node.disposition.value}, {node.power_mode.value})')

    if 2 * hop_latency > timer_t:
        return frozenset()

    return frozenset(n for n in reachable(network, origin) if network[n].active)


def form_cluster(network: Network, co: NodeId, timer_t: float, hop_latency: float,
                 simple_set: FrozenSet[NodeId],
                 exclude: FrozenSet[NodeId] = frozenset()) -> Tuple[FrozenSet[NodeId], FrozenSet[NodeId]]:
    """
    Collect the CO's cluster and its simple subset.

    :returns: (C_neighbor, SneighborCO)
    """
    members = discover_neighbors(network, co, timer_t, hop_latency) - {network.gn} - exclude

    if not members:
        LOGGER.warning('cluster of CO %s is empty', co)

    return frozenset(members), frozenset(members & simple_set)

"""Role election."""
import logging
import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from ..base.exceptions import ElectionError
from ..base.units import Micro, NodeId
from ..config.schema import ScenarioConfig
from .deployment import discover_neighbors, form_cluster, reachable
from .types import Designation, Handshake, Hierarchy, Network, RoleAssignment, RoleChange

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class ElectionParameters:

    mu: float
    k_mn: int
    z_zo: int
    clusters: int
    timer_t: float
    hop_latency: float

    @classmethod
    def from_config(cls, config: ScenarioConfig) -> 'ElectionParameters':
        return cls(mu=config.mu, k_mn=config.k_mn, z_zo=config.z_zo, clusters=config.clusters,
                   timer_t=config.sim.timer, hop_latency=config.sim.hop_latency)


def classify_nodes(gn_energy: Micro, members: Iterable[Tuple[NodeId, Micro]],
                   mu: float) -> Tuple[FrozenSet[NodeId], FrozenSet[NodeId]]:
    """
    Split members into (Intelligent_Nd, Simple_Nd).

    A node is intelligent iff its energy exceeds E_GN / mu.
    """
    if mu <= 1:
        raise ValueError('mu must be greater than 1')

    if gn_energy <= 0:
        raise ValueError('gateway energy must be positive')

    intelligent, simple = set(), set()

    for node_id, energy in members:
        (intelligent if energy * mu > gn_energy else simple).add(node_id)

    return frozenset(intelligent), frozenset(simple)


def select_co(network: Network, gn: NodeId, candidates: Iterable[NodeId], g_neighbors: Iterable[NodeId],
              rng: random.Random) -> NodeId:
    """
    Elect the cluster owner among intelligent GN neighbours.

    :raises: ElectionError when there is no candidate
    """
    pool = sorted(set(candidates))

    if not pool:
        raise ElectionError(f'GN {gn} has no intelligent neighbour to elect as CO')

    reference = [network[n] for n in sorted(set(g_neighbors) | set(pool))]
    max_degree = max(n.degree for n in reference)
    max_energy = max(n.energy for n in reference)

    eligible = [c for c in pool if network[c].degree >= max_degree and network[c].energy >= max_energy]

    if eligible:
        fresh = [c for c in eligible if network[c].maturity == 0]
        finalists = fresh or eligible
        chosen = finalists[0] if len(finalists) == 1 else rng.choice(finalists)

    else:
        chosen = min(pool, key=lambda c: (-network[c].degree, -network[c].energy, c))

    node = network[chosen]
    node.maturity = 1
    node.desig = Designation.CO
    node.detection_module_enabled = True

    return chosen


def select_mns(network: Network, co: NodeId, cluster: Iterable[NodeId], intelligent_set: FrozenSet[NodeId],
               k: int) -> Tuple[NodeId, ...]:
    """Pick the k intelligent members closest to the CO (energy, then id, break ties)."""
    if k < 1:
        raise ValueError('k must be at least 1')

    ranked = sorted((n for n in set(cluster) if n in intelligent_set),
                    key=lambda n: (network.distance(co, n), -network[n].energy, n))
    chosen = tuple(ranked[:k])

    if len(chosen) < k:
        LOGGER.warning('degraded monitoring: cluster of CO %s has %d of %d monitor nodes', co, len(chosen), k)

    for node_id in chosen:
        node = network[node_id]
        node.desig = Designation.MN
        node.detection_module_enabled = True
        node.maturity = 1

    return chosen


def select_zos(network: Network, co: NodeId, cluster: Iterable[NodeId], intelligent_set: FrozenSet[NodeId],
               z: int, exclude: Iterable[NodeId] = ()) -> Tuple[NodeId, ...]:
    """
    Pick the z highest-degree intelligent members that are not monitors.

    :raises: ElectionError when no member is eligible
    """
    if z < 1:
        raise ValueError('z must be at least 1')

    excluded = set(exclude)
    eligible = [n for n in set(cluster) if n in intelligent_set and n not in excluded]

    if not eligible:
        raise ElectionError(f'cluster of CO {co} has no member eligible as zone owner')

    ranked = sorted(eligible, key=lambda n: (-network[n].degree, -network[n].energy, n))
    chosen = tuple(ranked[:z])

    for node_id in chosen:
        node = network[node_id]
        node.desig = Designation.ZO
        node.detection_module_enabled = True
        node.maturity = 1

    return chosen


def form_zones(network: Network, zos: Sequence[NodeId],
               sensing: Iterable[NodeId]) -> Tuple[Dict[NodeId, FrozenSet[NodeId]], FrozenSet[NodeId]]:
    """
    Assign every sensing node to its nearest in-range ZO, lower id on ties.

    :returns: (ZO_neighbor per ZO, unreachable sensing nodes)
    """
    zones: Dict[NodeId, Set[NodeId]] = {zo: set() for zo in zos}
    unreachable = set()

    for sn in sorted(set(sensing)):
        owners = [zo for zo in zos if network.in_range(zo, sn)]

        if not owners:
            LOGGER.info('sensing node %s is out of range of every zone owner', sn)
            unreachable.add(sn)
            continue

        zones[min(owners, key=lambda zo: (network.distance(zo, sn), zo))].add(sn)

    return {zo: frozenset(members) for zo, members in zones.items()}, frozenset(unreachable)


def _reset_roles(network: Network) -> Dict[NodeId, Designation]:
    """Unassign every live node but the GN; dead nodes keep their last designation."""
    before = {node.id: node.desig for node in network}

    for node in network:
        if node.id == network.gn or not node.alive:
            continue

        node.desig = Designation.UNASSIGNED
        node.detection_module_enabled = False

    return before


def _changes(network: Network, before: Dict[NodeId, Designation]) -> Tuple[RoleChange, ...]:
    return tuple(RoleChange(node.id, before.get(node.id, Designation.UNASSIGNED), node.desig)
                 for node in network
                 if node.alive and before.get(node.id, Designation.UNASSIGNED) is not node.desig)


def _select_monitors(network: Network, co: NodeId, cluster: FrozenSet[NodeId], intelligent_set: FrozenSet[NodeId],
                     params: ElectionParameters) -> Tuple[NodeId, ...]:
    """Monitors for a cluster, leaving up to z intelligent members free for the zone-owner role."""
    pool = len(cluster & intelligent_set)
    k = min(params.k_mn, pool - min(params.z_zo, pool))

    if k < params.k_mn:
        LOGGER.warning('degraded monitoring: cluster of CO %s has room for %d of %d monitor nodes',
                       co, k, params.k_mn)

    if k < 1:
        return ()

    return select_mns(network, co, cluster, intelligent_set, k)


def elect(network: Network, params: ElectionParameters, rng: random.Random, strict: bool = True) -> Hierarchy:
    """
    Run a full election round: discovery, classification, CO/MN/ZO selection and zone forming.

    Blocked, dead and parked nodes take no part.

    :raises: ElectionError when `strict` and a role cannot be filled
    """
    gn = network.gn
    gateway = network[gn]

    if not gateway.active:
        raise ElectionError(f'gateway {gn} is {gateway.disposition.value}')

    network.refresh_neighbors()
    before = _reset_roles(network)
    timer, latency = params.timer_t, params.hop_latency

    g_neighbors = discover_neighbors(network, gn, timer, latency)
    members = [n for n in network if n.id != gn and n.active and not n.parked]
    handshakes: List[Handshake] = [
        Handshake('gn_discovery', gn, reachable(network, gn), tuple(sorted(g_neighbors))),
        Handshake('energy_query', gn, tuple(n.id for n in members), tuple(n.id for n in members)),
    ]

    intelligent, simple = classify_nodes(gateway.capacity, [(n.id, n.capacity) for n in members], params.mu)

    for sn in simple:
        network[sn].desig = Designation.SN

    degraded: List[str] = []
    taken: Set[NodeId] = set()
    elected: List[Tuple[NodeId, Tuple[NodeId, ...], Tuple[NodeId, ...], FrozenSet[NodeId], FrozenSet[NodeId]]] = []

    for index in range(params.clusters if members else 0):
        candidates = (intelligent & g_neighbors) - taken

        if not candidates and index > 0:
            degraded.append(f'only {index} of {params.clusters} clusters could be formed')
            break

        try:
            co = select_co(network, gn, candidates, g_neighbors - taken, rng)

        except ElectionError as e:
            if strict:
                raise

            degraded.append(str(e))
            break

        taken.add(co)
        cluster, simple_members = form_cluster(network, co, timer, latency, simple, frozenset(taken))
        handshakes.append(Handshake('cluster_form', co, reachable(network, co), tuple(sorted(cluster))))
        taken |= cluster

        mns = _select_monitors(network, co, cluster, intelligent, params)

        try:
            zos = select_zos(network, co, cluster, intelligent, params.z_zo, exclude=mns)

        except ElectionError as e:
            if strict:
                raise

            degraded.append(str(e))
            zos = ()

        elected.append((co, mns, zos, cluster, simple_members))

    all_zos = [zo for _, _, zos, _, _ in elected for zo in zos]
    zones, unreachable = form_zones(network, all_zos, simple)

    for zo in all_zos:
        responders = tuple(n for n in reachable(network, zo) if network[n].active)
        handshakes.append(Handshake('zone_form', zo, reachable(network, zo), responders))

    clusters = tuple(
        RoleAssignment(
            co=co, mns=mns, zos=zos, cluster_members=cluster, simple_members=simple_members,
            zone_members={zo: zones[zo] for zo in zos},
            g_neighbors=g_neighbors, intelligent_set=intelligent, simple_set=simple,
        )
        for co, mns, zos, cluster, simple_members in elected
    )

    changes = _changes(network, before)

    return Hierarchy(gn=gn, clusters=clusters, g_neighbors=g_neighbors, intelligent_set=intelligent,
                     simple_set=simple, unreachable=unreachable, handshakes=tuple(handshakes), changes=changes,
                     degraded=tuple(degraded))


def reconfigure(network: Network, previous: Optional[Hierarchy], params: ElectionParameters,
                rng: random.Random) -> Hierarchy:
    """
    Re-elect every role, excluding blocked and dead nodes.

    Detection modules follow the roles: outgoing holders are disabled, incoming enabled.
    A role that cannot be filled leaves the network degraded instead of failing.
    """
    try:
        hierarchy = elect(network, params, rng, strict=False)

    except ElectionError as e:
        LOGGER.warning('reconfiguration failed: %s', e)
        before = _reset_roles(network)

        return Hierarchy(gn=network.gn, changes=_changes(network, before), degraded=(str(e),))

    for reason in hierarchy.degraded:
        LOGGER.warning('network degraded after reconfiguration: %s', reason)

    if previous is not None and previous.role_nodes() == hierarchy.role_nodes():
        LOGGER.info('reconfiguration kept the previous role holders')

    return hierarchy

"""Tests."""
import logging
import random

import pytest

from segnet.base.exceptions import ConfigurationError, ElectionError, ProtocolError
from segnet.base.units import to_micro
from segnet.config import NodeCategory, load_fixture
from segnet.topology import (Designation, Disposition, ElectionParameters, PowerMode, classify_nodes, deploy,
                             discover_neighbors, elect, form_zones, gateway_of, infer_category, reconfigure,
                             select_co, select_mns, select_zos)

from .factories import ids, node, scenario


def _elect(config, seed=7, strict=True):
    network = deploy(config)
    hierarchy = elect(network, ElectionParameters.from_config(config), random.Random(seed), strict=strict)

    return network, hierarchy


class TestNetwork:

    @pytest.fixture()
    def network(self):
        return deploy(scenario([node(1, 0.0, 0.0, 'base'), node(2, 3.0, 4.0), node(3, 30.0, 0.0),
                                node(4, 30.0001, 0.0)]))

    def test_distance(self, network):
        assert network.distance(1, 2) == 5.0
        assert network.distance(2, 1) == 5.0

    def test_radio_range_is_a_closed_ball(self, network):
        assert network.in_range(1, 3)
        assert not network.in_range(1, 4)
        assert not network.in_range(1, 1)

    def test_neighbors_skip_blocked_nodes(self, network):
        network[2].disposition = Disposition.BLOCKED
        network.refresh_neighbors()

        assert network[1].neighbors == frozenset({3})

    def test_add_rejects_known_ids(self, network):

        with pytest.raises(ValueError):
            network.add(network[2])

    def test_alive_fraction(self, network):
        network[2].disposition = Disposition.DEAD

        assert network.alive_fraction() == 0.75


class TestDeployment:

    def test_gateway_defaults_to_lowest_base(self):
        config = scenario([node(3, 0.0, 0.0, 'base'), node(1, 5.0, 0.0, 'base'), node(2, 10.0, 0.0)])

        assert gateway_of(config) == 1
        assert deploy(config)[1].desig is Designation.GN

    def test_no_base_node(self):

        with pytest.raises(ConfigurationError, match='no GN-capable'):
            deploy(scenario([node(1, 0.0, 0.0), node(2, 5.0, 0.0)]))

    def test_gateway_must_be_a_base(self):

        with pytest.raises(ConfigurationError, match='must be a base node'):
            deploy(scenario([node(1, 0.0, 0.0, 'base'), node(2, 5.0, 0.0)], gateway=2))

    def test_category_from_battery(self):
        config = scenario([{'id': 1, 'x': 0.0, 'y': 0.0, 'initial_energy': 3000.0},
                           {'id': 2, 'x': 1.0, 'y': 0.0, 'initial_energy': 2000.0},
                           {'id': 3, 'x': 2.0, 'y': 0.0, 'initial_energy': 1000.0}])
        categories = [infer_category(spec, config) for spec in config.nodes]

        assert categories == [NodeCategory.BASE, NodeCategory.INTELLIGENT, NodeCategory.SIMPLE]
        assert deploy(config)[2].energy == to_micro(2000.0)

    def test_late_joiners_are_not_deployed(self):
        network = deploy(scenario([node(1, 0.0, 0.0, 'base'), node(2, 5.0, 0.0, join_at=50.0)]))

        assert 2 not in network

    def test_discovery_needs_a_round_trip(self):
        network = deploy(scenario([node(1, 0.0, 0.0, 'base'), node(2, 5.0, 0.0)]))

        assert discover_neighbors(network, 1, 2.0, 1.0) == frozenset({2})
        assert discover_neighbors(network, 1, 1.5, 1.0) == frozenset()

    def test_sleeping_nodes_cannot_broadcast(self):
        network = deploy(scenario([node(1, 0.0, 0.0, 'base'), node(2, 5.0, 0.0)]))
        network[2].power_mode = PowerMode.ASLEEP

        with pytest.raises(ProtocolError):
            discover_neighbors(network, 2, 2.0, 1.0)


class TestClassify:

    def test_split_on_gateway_energy(self):
        intelligent, simple = classify_nodes(3000, [(1, 2000), (2, 1000), (3, 1501)], mu=2.0)

        assert intelligent == frozenset({1, 3})
        assert simple == frozenset({2})

    def test_boundary_is_simple(self):
        intelligent, simple = classify_nodes(3000, [(1, 1500)], mu=2.0)

        assert intelligent == frozenset()
        assert simple == frozenset({1})

    def test_invalid_parameters(self):

        with pytest.raises(ValueError):
            classify_nodes(3000, [], mu=1.0)

        with pytest.raises(ValueError):
            classify_nodes(0, [], mu=2.0)


class TestCaseStudyElection:

    @pytest.fixture()
    def config(self):
        return load_fixture('casestudy')

    def test_roles(self, config):
        network, hierarchy = _elect(config)
        label = ids(config)
        cluster, = hierarchy.clusters

        assert hierarchy.g_neighbors == frozenset({label['M']})
        assert cluster.co == label['M']
        assert set(cluster.mns) == {label[x] for x in 'GHIJKL'}
        assert set(cluster.zos) == {label['E'], label['F']}
        assert cluster.zone_members == {label['E']: frozenset({label['A'], label['B']}),
                                        label['F']: frozenset({label['C'], label['D']})}
        assert hierarchy.unreachable == frozenset()
        assert not hierarchy.degraded

    def test_designations_and_modules(self, config):
        network, hierarchy = _elect(config)
        label = ids(config)

        assert network[label['N']].desig is Designation.GN
        assert network[label['M']].desig is Designation.CO
        assert network[label['E']].desig is Designation.ZO
        assert network[label['L']].desig is Designation.MN
        assert network[label['A']].desig is Designation.SN
        assert network[label['A']].detection_module_enabled is False
        assert all(network[n].detection_module_enabled for n in hierarchy.role_nodes())

    def test_lookups(self, config):
        network, hierarchy = _elect(config)
        label = ids(config)

        assert hierarchy.zone_of(label['A']) == label['E']
        assert hierarchy.zone_of(label['E']) is None
        assert hierarchy.cluster_of(label['D']).co == label['M']
        assert hierarchy.cluster_of(label['N']) is None

    def test_handshakes_and_changes(self, config):
        network, hierarchy = _elect(config)
        label = ids(config)
        kinds = [h.kind for h in hierarchy.handshakes]

        assert kinds == ['gn_discovery', 'energy_query', 'cluster_form', 'zone_form', 'zone_form']
        assert any(c.node == label['M'] and c.before is Designation.UNASSIGNED and c.after is Designation.CO
                   for c in hierarchy.changes)

    def test_spare_node_stays_unassigned(self):
        config = load_fixture('compromised_zo')
        network, hierarchy = _elect(config)
        label = ids(config)

        assert set(hierarchy.clusters[0].zos) == {label['E'], label['F']}
        assert network[label['O']].desig is Designation.UNASSIGNED
        assert label['O'] in hierarchy.clusters[0].cluster_members

    def test_blocked_zone_owner_is_replaced_by_the_spare(self):
        config = load_fixture('compromised_zo')
        network, hierarchy = _elect(config)
        label = ids(config)
        network[label['E']].disposition = Disposition.BLOCKED

        after = reconfigure(network, hierarchy, ElectionParameters.from_config(config), random.Random(1))

        assert set(after.clusters[0].zos) == {label['F'], label['O']}
        assert after.zone_of(label['A']) == label['O']

    def test_blocked_cluster_owner_is_replaced_by_the_spare(self):
        config = load_fixture('compromised_co')
        network, hierarchy = _elect(config)
        label = ids(config)
        network[label['M']].disposition = Disposition.BLOCKED

        after = reconfigure(network, hierarchy, ElectionParameters.from_config(config), random.Random(1))
        cluster, = after.clusters

        assert cluster.co == label['O']
        assert cluster.mns == ()
        assert set(cluster.zos) == {label['E'], label['G']}
        assert after.zone_of(label['A']) == label['E']

    def test_drained_cluster_owner_stays_intelligent(self, config):
        network, hierarchy = _elect(config)
        label = ids(config)
        network[label['M']].energy = to_micro(100.0)

        after = reconfigure(network, hierarchy, ElectionParameters.from_config(config), random.Random(1))

        assert label['M'] in after.intelligent_set
        assert after.clusters[0].co == label['M']
        assert network[label['M']].desig is Designation.CO

    def test_dead_nodes_keep_their_designation(self, config):
        network, hierarchy = _elect(config)
        label = ids(config)
        network[label['A']].disposition = Disposition.DEAD

        after = reconfigure(network, hierarchy, ElectionParameters.from_config(config), random.Random(1))

        assert network[label['A']].desig is Designation.SN
        assert all(c.node != label['A'] for c in after.changes)

    def test_blocked_cluster_owner_degrades_the_network(self, config):
        network, hierarchy = _elect(config)
        label = ids(config)
        network[label['M']].disposition = Disposition.BLOCKED

        after = reconfigure(network, hierarchy, ElectionParameters.from_config(config), random.Random(1))

        assert after.clusters == ()
        assert after.degraded
        assert after.unreachable == frozenset(label[x] for x in 'ABCD')


class TestSelection:

    @pytest.fixture()
    def network(self):
        return deploy(scenario([node(1, 50.0, 50.0, 'base'), node(2, 40.0, 50.0, 'intelligent'),
                                node(3, 60.0, 50.0, 'intelligent'), node(4, 50.0, 60.0)]))

    def test_fresh_candidate_preferred(self, network):
        rng = random.Random(3)
        first = select_co(network, 1, [2, 3], [2, 3, 4], rng)

        network[first].desig = Designation.UNASSIGNED
        second = select_co(network, 1, [2, 3], [2, 3, 4], rng)

        assert {first, second} == {2, 3}
        assert network[first].maturity == network[second].maturity == 1

    def test_no_candidate(self, network):

        with pytest.raises(ElectionError):
            select_co(network, 1, [], [4], random.Random(1))

    def test_fallback_when_nobody_dominates(self, network):
        network[4].energy = to_micro(5000.0)
        network[3].energy -= 1

        assert select_co(network, 1, [2, 3], [2, 3, 4], random.Random(1)) == 2

    def test_fallback_ignores_maturity(self, network):
        network[4].energy = to_micro(5000.0)
        network[3].energy -= 1
        network[2].maturity = 1

        assert select_co(network, 1, [2, 3], [2, 3, 4], random.Random(1)) == 2

    def test_monitor_shortfall_is_logged(self, network, caplog):
        caplog.set_level(logging.WARNING, logger='segnet.topology.election')

        chosen = select_mns(network, 2, [3, 4], frozenset({3}), k=2)

        assert chosen == (3,)
        assert 'degraded monitoring' in caplog.text

    def test_zone_owners_exclude_monitors(self, network):

        with pytest.raises(ElectionError):
            select_zos(network, 2, [3, 4], frozenset({3}), z=1, exclude=[3])

    def test_zone_ties_go_to_the_lower_id(self):
        network = deploy(scenario([node(1, 0.0, 0.0, 'base'), node(5, 40.0, 50.0, 'intelligent'),
                                   node(3, 60.0, 50.0, 'intelligent'), node(7, 50.0, 50.0),
                                   node(8, 95.0, 95.0)]))

        zones, unreachable = form_zones(network, [5, 3], [7, 8])

        assert zones == {5: frozenset(), 3: frozenset({7})}
        assert unreachable == frozenset({8})


class TestElectionFailures:

    def test_gateway_without_intelligent_neighbour(self):
        config = scenario([node(1, 0.0, 0.0, 'base'), node(2, 10.0, 0.0), node(3, 50.0, 0.0, 'intelligent')])

        with pytest.raises(ElectionError):
            _elect(config)

        network, hierarchy = _elect(config, strict=False)

        assert hierarchy.clusters == ()
        assert hierarchy.degraded

    def test_gateway_alone(self):
        network, hierarchy = _elect(scenario([node(1, 0.0, 0.0, 'base')]))

        assert hierarchy.clusters == ()
        assert not hierarchy.degraded

    def test_blocked_gateway(self):
        network = deploy(load_fixture('casestudy'))
        network[14].disposition = Disposition.BLOCKED

        with pytest.raises(ElectionError):
            elect(network, ElectionParameters.from_config(load_fixture('casestudy')), random.Random(1))

"""Tests."""
import random
from collections import Counter

from hypothesis import given, settings
from hypothesis import strategies as st

from segnet.simkernel import run
from segnet.topology import (Designation, ElectionParameters, classify_nodes, deploy, elect, form_zones, select_mns,
                             select_zos)
from segnet.tracing import RecordKind

from .factories import node, scenario

coordinates = st.integers(min_value=0, max_value=100).map(float)

layouts = st.lists(st.tuples(coordinates, coordinates, st.sampled_from(['simple', 'intelligent'])),
                   min_size=1, max_size=14)


def _config(layout, seed=1, **fields):
    nodes = [node(1, 50.0, 50.0, 'base')]
    nodes += [node(i, x, y, category) for i, (x, y, category) in enumerate(layout, start=2)]

    return scenario(nodes, seed=seed, **fields)


def _elect(layout, seed=1):
    config = _config(layout, seed)
    network = deploy(config)
    hierarchy = elect(network, ElectionParameters.from_config(config), random.Random(seed), strict=False)

    return config, network, hierarchy


class TestElection:

    @settings(max_examples=100, deadline=None)
    @given(layouts, st.integers(min_value=1, max_value=1000))
    def test_roles_are_disjoint(self, layout, seed):
        _, network, hierarchy = _elect(layout, seed)

        for cluster in hierarchy.clusters:
            roles = [cluster.co, *cluster.mns, *cluster.zos]

            assert len(roles) == len(set(roles))
            assert network.gn not in roles

    @settings(max_examples=100, deadline=None)
    @given(layouts, st.integers(min_value=1, max_value=1000))
    def test_role_eligibility(self, layout, seed):
        config, network, hierarchy = _elect(layout, seed)

        for cluster in hierarchy.clusters:
            assert cluster.co in hierarchy.g_neighbors & hierarchy.intelligent_set
            assert len(cluster.mns) <= config.k_mn
            assert set(cluster.mns) <= hierarchy.intelligent_set
            assert set(cluster.zos) <= hierarchy.intelligent_set
            assert all(network[n].desig is Designation.MN for n in cluster.mns)

    @settings(max_examples=100, deadline=None)
    @given(layouts)
    def test_classification(self, layout):
        config, network, hierarchy = _elect(layout)
        gateway = network[network.gn].capacity
        members = [n for n in network if n.id != network.gn]

        assert hierarchy.intelligent_set == {n.id for n in members if n.capacity * config.mu > gateway}
        assert hierarchy.simple_set == {n.id for n in members} - hierarchy.intelligent_set

    @settings(max_examples=100, deadline=None)
    @given(layouts)
    def test_zones_partition_the_sensing_nodes(self, layout):
        _, network, hierarchy = _elect(layout)
        zones = [(zo, members) for cluster in hierarchy.clusters for zo, members in cluster.zone_members.items()]
        assigned = [sn for _, members in zones for sn in members]

        assert len(assigned) == len(set(assigned))
        assert set(assigned) | hierarchy.unreachable == hierarchy.simple_set
        assert not set(assigned) & hierarchy.unreachable
        assert all(network.in_range(zo, sn) for zo, members in zones for sn in members)
        assert all(hierarchy.zone_of(sn) == zo for zo, members in zones for sn in members)


class TestZoneForming:

    @settings(max_examples=100, deadline=None)
    @given(layouts, st.randoms(use_true_random=False))
    def test_order_of_zone_owners_does_not_matter(self, layout, rng):
        network = deploy(_config(layout))
        ids = [n.id for n in network if n.id != network.gn]
        zos = ids[::2]
        sensing = ids[1::2]
        shuffled = list(zos)
        rng.shuffle(shuffled)

        assert form_zones(network, zos, sensing) == form_zones(network, shuffled, list(reversed(sensing)))


class TestSelection:

    @settings(max_examples=100, deadline=None)
    @given(layouts, st.randoms(use_true_random=False), st.integers(min_value=1, max_value=6))
    def test_order_of_candidates_does_not_matter(self, layout, rng, k):
        config = _config(layout)
        network = deploy(config)
        members = [n for n in network if n.id != network.gn]
        capacities = [(n.id, n.capacity) for n in members]
        intelligent, _ = classify_nodes(network[network.gn].capacity, capacities, config.mu)
        co, *cluster = [n.id for n in members]
        shuffled = list(cluster)
        rng.shuffle(shuffled)

        mns = select_mns(network, co, cluster, intelligent, k)

        assert mns == select_mns(network, co, shuffled, intelligent, k)

        if set(cluster) & intelligent - set(mns):
            assert (select_zos(network, co, cluster, intelligent, k, exclude=mns)
                    == select_zos(network, co, shuffled, intelligent, k, exclude=list(reversed(mns))))


class TestRuns:

    @staticmethod
    def _run(layout, seed, attacked):
        fields = {'sim': {'duration': 300.0}}

        if attacked:
            fields['attacker'] = {'targets': [2], 'rate': 0.2, 'start': 10.0}

        return run(_config(layout, seed, **fields))

    @settings(max_examples=100, deadline=None)
    @given(layouts, st.integers(min_value=1, max_value=1000), st.booleans())
    def test_energy_is_conserved(self, layout, seed, attacked):
        result = self._run(layout, seed, attacked)

        assert all(result.energy.conserved(n) for n in result.network.ids)
        assert all(result.energy.residual_energy(n) >= 0 for n in result.network.ids)

    @settings(max_examples=100, deadline=None)
    @given(layouts, st.integers(min_value=1, max_value=1000), st.booleans())
    def test_runs_are_deterministic(self, layout, seed, attacked):
        first = self._run(layout, seed, attacked)
        second = self._run(layout, seed, attacked)

        assert list(first.trace_lines()) == list(second.trace_lines())

    @settings(max_examples=100, deadline=None)
    @given(layouts, st.integers(min_value=1, max_value=1000))
    def test_dispositions_need_two_tickets(self, layout, seed):
        trace = self._run(layout, seed, True).trace

        for record in trace:
            if record.kind is not RecordKind.DISPOSITION:
                continue

            if record.reason == 'drop_fake':
                assert any(v.kind is RecordKind.VERDICT and v.verdict == 'DropFake' and v.peer == record.node
                           and v.time == record.time and len(v.data['issuers']) >= 2 for v in trace)

            elif record.reason == 'warning_threshold':
                tickets = [r for r in trace if r.kind is RecordKind.OBSERVE and r.verdict == 'ticket'
                           and r.peer == record.node and r.time <= record.time]

                assert len(tickets) >= 2

    @settings(max_examples=100, deadline=None)
    @given(layouts, st.integers(min_value=1, max_value=1000), st.booleans())
    def test_every_message_is_settled_once(self, layout, seed, attacked):
        trace = self._run(layout, seed, attacked).trace
        sent = Counter(r.msg_id for r in trace if r.kind is RecordKind.SEND)
        settled = Counter(r.msg_id for r in trace if r.kind in (RecordKind.DELIVER, RecordKind.DROP))

        assert set(sent.values()) <= {1}
        assert settled == sent

    @settings(max_examples=100, deadline=None)
    @given(layouts, st.integers(min_value=1, max_value=1000))
    def test_blocked_nodes_are_isolated(self, layout, seed):
        trace = self._run(layout, seed, True).trace
        latency = trace[0].data['hop_latency']
        blocked = {r.node: r.time for r in trace if r.kind is RecordKind.DISPOSITION and r.verdict == 'blocked'}

        for record in trace:
            if record.kind is RecordKind.SEND and record.node in blocked:
                assert record.time <= blocked[record.node]

            if record.kind is RecordKind.DELIVER and record.peer in blocked:
                assert record.time <= blocked[record.peer] + latency

    @settings(max_examples=100, deadline=None)
    @given(layouts, st.integers(min_value=1, max_value=1000), st.booleans())
    def test_energy_never_increases(self, layout, seed, attacked):
        trace = self._run(layout, seed, attacked).trace
        samples = [r.data['energy'] for r in trace
                   if r.kind in (RecordKind.WINDOW, RecordKind.END) and r.data and 'energy' in r.data]

        for earlier, later in zip(samples, samples[1:]):
            assert all(later[node] <= energy for node, energy in earlier.items())

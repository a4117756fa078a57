import itertools

import networkx as nx
import numpy as np
from django.test import SimpleTestCase, override_settings, tag
from scipy.optimize import linprog

from netcoding.capacity import (
    FlowSolution,
    cut_value,
    decompose_paths,
    feasible_flow_wireless,
    is_acyclic,
    max_flow,
    max_flow_wireless,
    max_flow_wireline,
    min_cut,
    min_cut_by_enumeration,
    multicast_flows,
    multicast_region,
    remove_cycles,
    solve_linear_program,
    splitting_weights,
)
from netcoding.capacity.simplex import INFEASIBLE, UNBOUNDED
from netcoding.exceptions import DomainError, GuardRefusal
from netcoding.netmodel import (
    AlohaChannel,
    Arc,
    Hyperarc,
    LossProcess,
    WirelessNetwork,
    WirelineNetwork,
    nonempty_subsets,
    tandem_network,
)


def diamond():
    arcs = [
        Arc('1', '2', z_override=0.8),
        Arc('1', '3', z_override=0.6),
        Arc('2', '3', z_override=0.5),
        Arc('2', '4', z_override=0.5),
        Arc('3', '4', z_override=0.9),
    ]
    return WirelineNetwork(['1', '2', '3', '4'], arcs, source='1', sinks=['4'])


def broadcast_pair():
    """s -> {a, t} with one hyperarc; a cannot forward."""
    z = {frozenset({'t'}): 0.2, frozenset({'a', 't'}): 0.4, frozenset({'a'}): 0.3}
    return WirelessNetwork(['s', 'a', 't'], [Hyperarc('s', {'a', 't'}, z_override=z)], source='s', sinks=['t'])


def aloha_relay():
    return WirelessNetwork(
        ['1', '2', '3'],
        [
            Hyperarc('1', {'2', '3'}, loss=LossProcess.aloha(0.5)),
            Hyperarc('2', {'3'}, loss=LossProcess.aloha(0.5)),
        ],
        source='1',
        sinks=['3'],
        aloha=AlohaChannel({'2': [], '3': ['1', '2']}),
    )


def random_wireline(rng):
    n = int(rng.integers(4, 13))
    nodes = [str(i) for i in range(n)]
    arcs = []
    for i, j in itertools.permutations(range(n), 2):
        if rng.random() < 0.3:
            arcs.append(Arc(nodes[i], nodes[j], z_override=round(float(rng.uniform(0.1, 2.0)), 2)))
    return WirelineNetwork(nodes, arcs, source=nodes[0], sinks=[nodes[-1]])


def random_hypergraph(rng):
    n = int(rng.integers(3, 7))
    nodes = [str(i) for i in range(n)]
    hyperarcs = []
    for i in range(n - 1):
        for _ in range(int(rng.integers(1, 3))):
            others = [v for v in nodes if v != nodes[i]]
            size = int(rng.integers(1, min(3, len(others)) + 1))
            heads = frozenset(rng.choice(others, size=size, replace=False).tolist())
            z = {k: round(float(rng.uniform(0.05, 1.0)), 3)
                 for k in nonempty_subsets(heads) if rng.random() < 0.6}
            if not z:
                z = {heads: 0.5}
            hyperarcs.append(Hyperarc(nodes[i], heads, z_override=z))
    return WirelessNetwork(nodes, hyperarcs, source=nodes[0], sinks=[nodes[-1]])


def networkx_max_flow(net, s, t):
    graph = nx.DiGraph()
    graph.add_nodes_from(net.nodes)
    for arc in net.arcs:
        graph.add_edge(arc.tail, arc.head, capacity=arc.z)
    return nx.maximum_flow_value(graph, s, t)


class CutTests(SimpleTestCase):
    def test_tandem_capacity_is_the_weakest_link(self):
        net = tandem_network([1.0, 0.5])
        cut = min_cut(net, '1', '3')
        self.assertAlmostEqual(cut.value, 0.5)
        self.assertEqual(cut.source_side, frozenset({'1', '2'}))

    def test_cut_value_of_a_given_set(self):
        self.assertAlmostEqual(cut_value(diamond(), {'1', '2'}, '1', '4'), 1.6)

    def test_cut_must_separate_terminals(self):
        with self.assertRaises(DomainError):
            cut_value(diamond(), {'2'}, '1', '4')

    def test_source_equal_to_sink_is_rejected(self):
        with self.assertRaises(DomainError):
            min_cut(diamond(), '1', '1')

    def test_enumeration_agrees_with_max_flow(self):
        cut = min_cut_by_enumeration(diamond(), '1', '4')
        self.assertAlmostEqual(cut.value, 1.4)
        self.assertAlmostEqual(max_flow_wireline(diamond(), '1', '4').value, 1.4)

    def test_unreachable_sink_has_zero_capacity(self):
        net = WirelineNetwork(['1', '2', '3'], [Arc('1', '2', z_override=1.0)])
        with self.assertLogs('netcoding.capacity.cuts', level='WARNING'):
            self.assertEqual(min_cut(net, '1', '3').value, 0.0)

    def test_aloha_relay_cut_matches_hand_expansion(self):
        net = aloha_relay()
        z0, z1 = net.z
        # Q = {1}: everything node 1 delivers; Q = {1, 2}: what reaches node 3
        by_hand = min(
            sum(z0.values()),
            z0[frozenset({'2', '3'})] + z1[frozenset({'3'})],
        )
        self.assertAlmostEqual(min_cut(net, '1', '3').value, by_hand)
        self.assertAlmostEqual(by_hand, 0.5)

    @override_settings(NETCODING={'MAX_ENUMERATION_NODES': 3})
    def test_enumeration_guard(self):
        with self.assertRaises(GuardRefusal):
            min_cut_by_enumeration(diamond(), '1', '4')

    def test_random_graphs_against_networkx(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            net = random_wireline(rng)
            s, t = net.nodes[0], net.nodes[-1]
            expected = networkx_max_flow(net, s, t)
            self.assertAlmostEqual(max_flow_wireline(net, s, t).value, expected, places=9)
            self.assertAlmostEqual(min_cut_by_enumeration(net, s, t).value, expected, places=9)

    @tag('acceptance')
    def test_fifty_random_graphs_enumeration_equals_max_flow(self):
        rng = np.random.default_rng(2025)
        for _ in range(50):
            net = random_wireline(rng)
            s, t = net.nodes[0], net.nodes[-1]
            self.assertAlmostEqual(
                min_cut_by_enumeration(net, s, t).value, max_flow_wireline(net, s, t).value, places=9
            )


class WirelineFlowTests(SimpleTestCase):
    def test_flow_conserves_at_every_node(self):
        flow = max_flow_wireline(diamond(), '1', '4')
        for residual in flow.conservation_residuals().values():
            self.assertAlmostEqual(residual, 0.0)
        for key, f in flow.flows.items():
            self.assertLessEqual(f, diamond().z[key] + 1e-12)

    def test_target_rate_caps_the_flow(self):
        self.assertAlmostEqual(max_flow_wireline(diamond(), '1', '4', target=1.0).value, 1.0)

    def test_dispatch_by_network_kind(self):
        self.assertAlmostEqual(max_flow(diamond(), '1', '4').value, 1.4)
        self.assertAlmostEqual(max_flow(broadcast_pair(), 's', 't').value, 0.6)


class CycleTests(SimpleTestCase):
    def setUp(self):
        arcs = [
            Arc('1', '2', z_override=2.0),
            Arc('2', '3', z_override=2.0),
            Arc('3', '2', z_override=2.0),
            Arc('3', '4', z_override=2.0),
        ]
        self.net = WirelineNetwork(['1', '2', '3', '4'], arcs)
        self.flow = FlowSolution(self.net, '1', '4', 1.0, {0: 1.0, 1: 1.5, 2: 0.5, 3: 1.0})

    def test_remove_cycles_cancels_the_circulation(self):
        self.assertFalse(is_acyclic(self.flow))
        cleaned = remove_cycles(self.flow)
        self.assertTrue(is_acyclic(cleaned))
        self.assertEqual(cleaned.flows, {0: 1.0, 1: 1.0, 2: 0.0, 3: 1.0})
        self.assertEqual(cleaned.value, 1.0)

    def test_decomposition_needs_an_acyclic_flow(self):
        with self.assertRaises(DomainError):
            decompose_paths(self.flow)

    def test_decomposition_rates_add_up(self):
        flow = max_flow_wireline(diamond(), '1', '4')
        paths = decompose_paths(flow)
        self.assertAlmostEqual(paths.value, flow.value)
        for path in paths:
            self.assertEqual(path.nodes[0], '1')
            self.assertEqual(path.nodes[-1], '4')
        loads = paths.link_loads()
        for key, load in loads.items():
            self.assertAlmostEqual(load, flow.flows[key])

    def test_decomposition_prefers_smallest_next_node(self):
        paths = decompose_paths(max_flow_wireline(diamond(), '1', '4'))
        self.assertEqual(paths.paths[0].nodes[:2], ('1', '2'))


class SimplexTests(SimpleTestCase):
    def test_matches_scipy_on_random_programs(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            n, m = int(rng.integers(2, 6)), int(rng.integers(2, 6))
            a = rng.uniform(0.1, 2.0, size=(m, n))
            b = rng.uniform(1.0, 5.0, size=m)
            c = -rng.uniform(0.1, 1.0, size=n)
            ours = solve_linear_program(c, a, b)
            theirs = linprog(c, A_ub=a, b_ub=b, method='highs')
            self.assertTrue(ours.is_optimal)
            self.assertAlmostEqual(ours.objective, theirs.fun, places=7)

    def test_equality_constraints_with_a_redundant_row(self):
        result = solve_linear_program(
            [1.0, 2.0],
            a_eq=[[1.0, 1.0], [2.0, 2.0]],
            b_eq=[1.0, 2.0],
        )
        self.assertTrue(result.is_optimal)
        np.testing.assert_allclose(result.x, [1.0, 0.0], atol=1e-9)

    def test_infeasible_program(self):
        result = solve_linear_program([1.0], a_ub=[[1.0]], b_ub=[1.0], a_eq=[[1.0]], b_eq=[2.0])
        self.assertEqual(result.status, INFEASIBLE)

    def test_unbounded_program(self):
        result = solve_linear_program([-1.0, 0.0], a_ub=[[0.0, 1.0]], b_ub=[1.0])
        self.assertEqual(result.status, UNBOUNDED)

    def test_negative_right_hand_side(self):
        result = solve_linear_program([1.0], a_ub=[[-1.0]], b_ub=[-2.0])
        self.assertTrue(result.is_optimal)
        self.assertAlmostEqual(result.x[0], 2.0)


class WirelessFlowTests(SimpleTestCase):
    def test_single_hyperarc_capacity(self):
        net = broadcast_pair()
        self.assertAlmostEqual(min_cut(net, 's', 't').value, 0.6)
        flow = feasible_flow_wireless(net, 's', 't', 0.6)
        self.assertIsNotNone(flow)
        self.assertAlmostEqual(flow.flows[(0, 't')], 0.6)
        self.assertIsNone(feasible_flow_wireless(net, 's', 't', 0.61))

    def test_splitting_weights_cover_the_flow(self):
        net = aloha_relay()
        flow = max_flow_wireless(net, '1', '3')
        self.assertAlmostEqual(flow.value, 0.5, places=7)
        weights = splitting_weights(net, flow.flows)
        for h, rates in enumerate(net.z):
            for l in rates:
                self.assertAlmostEqual(sum(weights[(h, l, j)] for j in l), 1.0)
        for (h, j), f in flow.flows.items():
            supplied = sum(weights[(h, l, j)] * z for l, z in net.z[h].items() if j in l)
            self.assertLessEqual(f, supplied + 1e-7)

    def test_negative_rate_is_rejected(self):
        with self.assertRaises(DomainError):
            feasible_flow_wireless(broadcast_pair(), 's', 't', -1.0)

    @override_settings(NETCODING={'MAX_LP_CONSTRAINTS': 2})
    def test_lp_guard(self):
        with self.assertRaises(GuardRefusal):
            feasible_flow_wireless(broadcast_pair(), 's', 't', 0.1)

    def bisect(self, net, s, t):
        lo, hi = 0.0, sum(sum(z.values()) for z in net.z) + 1.0
        for _ in range(60):
            mid = (lo + hi) / 2
            if feasible_flow_wireless(net, s, t, mid) is not None:
                lo = mid
            else:
                hi = mid
        return lo

    def test_bisection_agrees_with_min_cut(self):
        rng = np.random.default_rng(31)
        for _ in range(3):
            net = random_hypergraph(rng)
            s, t = net.nodes[0], net.nodes[-1]
            cut = min_cut(net, s, t).value
            self.assertLessEqual(abs(self.bisect(net, s, t) - cut), 1e-6 * max(1.0, cut))

    @tag('acceptance')
    def test_twenty_random_hypergraphs(self):
        rng = np.random.default_rng(4242)
        for _ in range(20):
            net = random_hypergraph(rng)
            s, t = net.nodes[0], net.nodes[-1]
            cut = min_cut(net, s, t).value
            self.assertLessEqual(abs(self.bisect(net, s, t) - cut), 1e-6 * max(1.0, cut))


class MulticastTests(SimpleTestCase):
    def test_region_has_one_cut_per_sink(self):
        region = multicast_region(diamond(), '1', ['3', '4'])
        self.assertAlmostEqual(region['3'].value, 1.1)
        self.assertAlmostEqual(region['4'].value, 1.4)

    def test_flows_per_sink(self):
        flows = multicast_flows(diamond(), '1', ['2', '4'])
        self.assertAlmostEqual(flows['2'].value, 0.8)
        self.assertAlmostEqual(flows['4'].value, 1.4)

    def test_empty_sink_set(self):
        with self.assertRaises(DomainError):
            multicast_region(diamond(), '1', [])

"""
Feasible flows on wireless hypergraphs.

A flow assigns f_iJj >= 0 to every hyperarc (i, J) and receiver j in J. It
is feasible for rate R when it conserves flow (R out of s, R into t) and,
for every hyperarc and every non-empty K of J,

    sum_{j in K} f_iJj <= sum_{L : L meets K} z_iJL.

The feasibility question is a small LP solved by the dense simplex. From a
feasible flow, splitting weights alpha^(j)_iJL >= 0 with
sum_{j in L} alpha^(j)_iJL = 1 and f_iJj <= sum_{L contains j} alpha^(j)_iJL z_iJL
are recovered by a bipartite max-flow that routes each receiver set's rate
z_iJL to the receivers in L.
"""
import logging

import numpy as np

from ..conf import get_setting
from ..exceptions import DomainError, GuardRefusal
from ..netmodel import nonempty_subsets
from .cuts import min_cut
from .cycles import remove_cycles
from .maxflow import FlowGraph, check_terminals
from .simplex import solve_linear_program
from .types import FlowSolution

logger = logging.getLogger(__name__)


def constraint_count(net):
    return sum((1 << len(h.heads)) - 1 for h in net.hyperarcs)


def feasible_flow_wireless(net, s, t, rate):
    """
    A flow of value ``rate`` from s to t with splitting weights, or ``None``.
    """
    s, t = str(s), str(t)
    check_terminals(net, s, t)
    if rate < 0:
        raise DomainError(f"target rate must be non-negative, got {rate}")
    limit = get_setting('MAX_LP_CONSTRAINTS')
    count = constraint_count(net)
    if count > limit:
        raise GuardRefusal(f"{count} receiver-set constraints exceed the LP limit of {limit}")

    links = net.links()
    column = {key: index for index, key in enumerate(links)}
    n = len(links)

    a_eq = []
    b_eq = []
    for node in net.nodes:
        if node == t:
            continue
        row = np.zeros(n)
        for (h, j), index in column.items():
            if net.hyperarcs[h].tail == node:
                row[index] += 1.0
            if j == node:
                row[index] -= 1.0
        target = rate if node == s else 0.0
        if row.any() or target:
            a_eq.append(row)
            b_eq.append(target)

    a_ub = []
    b_ub = []
    for h, hyperarc in enumerate(net.hyperarcs):
        z = net.z[h]
        for k in nonempty_subsets(hyperarc.heads):
            row = np.zeros(n)
            for j in k:
                row[column[(h, j)]] = 1.0
            a_ub.append(row)
            b_ub.append(sum(value for l, value in z.items() if l & k))

    result = solve_linear_program(np.ones(n), a_ub or None, b_ub or None, a_eq or None, b_eq or None)
    if not result.is_optimal:
        logger.info("no flow of rate %.9g from %s to %s (%s)", rate, s, t, result.status)
        return None
    flows = {key: float(result.x[index]) for key, index in column.items()}
    solution = remove_cycles(FlowSolution(net, s, t, float(rate), flows))
    return solution.with_flows(solution.flows, weights=splitting_weights(net, solution.flows))


def splitting_weights(net, flows):
    """
    alpha[(h, L, j)] for every hyperarc h, receiver set L with z_hL > 0, and j in L.
    """
    tolerance = get_setting('RATE_TOLERANCE')
    weights = {}
    for h, hyperarc in enumerate(net.hyperarcs):
        sets = sorted((l for l, z in net.z[h].items() if z > 0), key=lambda l: (len(l), sorted(l)))
        if not sets:
            continue
        receivers = sorted(hyperarc.heads)
        nodes = ['source', 'sink'] + [f'L{i}' for i in range(len(sets))] + [f'j:{j}' for j in receivers]
        edges = []
        for i, l in enumerate(sets):
            edges.append(('source', f'L{i}', net.z[h][l]))
        assignment = {}
        for i, l in enumerate(sets):
            for j in sorted(l):
                assignment[len(edges)] = (i, j)
                edges.append((f'L{i}', f'j:{j}', net.z[h][l]))
        for j in receivers:
            edges.append((f'j:{j}', 'sink', max(0.0, flows.get((h, j), 0.0))))
        value, routed = FlowGraph(nodes, edges).max_flow('source', 'sink')
        demand = sum(max(0.0, flows.get((h, j), 0.0)) for j in receivers)
        if value < demand - 10 * tolerance:
            logger.warning("hyperarc %s carries %.9g but only %.9g can be split", hyperarc.label, demand, value)
        for i, l in enumerate(sets):
            for j in l:
                weights[(h, l, j)] = 0.0
        for edge, (i, j) in assignment.items():
            weights[(h, sets[i], j)] = routed[edge] / net.z[h][sets[i]]
        for l in sets:
            spare = 1.0 - sum(weights[(h, l, j)] for j in l)
            weights[(h, l, min(l))] += max(0.0, spare)
    return weights


def max_flow_wireless(net, s, t):
    """
    Flow of the min-cut value C from s to t, with splitting weights.

    When the LP is infeasible at exactly C (rounding in the cut), it is
    retried once at C minus the RATE_TOLERANCE setting.

    Args:
        net: WirelessNetwork with hyperarc reception rates
        s: source node name
        t: sink node name

    Returns:
        FlowSolution with splitting weights, or None when neither LP is feasible
    """
    capacity = min_cut(net, s, t).value
    solution = feasible_flow_wireless(net, s, t, capacity)
    if solution is None:
        solution = feasible_flow_wireless(net, s, t, max(0.0, capacity - get_setting('RATE_TOLERANCE')))
    return solution

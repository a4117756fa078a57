"""
Capacity of lossy networks: cuts, max-flows, hypergraph flows and their
decomposition into paths.
"""
from .cuts import cut_value, min_cut, min_cut_by_enumeration
from .cycles import decompose_paths, is_acyclic, remove_cycles
from .maxflow import FlowGraph, max_flow_wireline
from .multicast import multicast_flows, multicast_region
from .simplex import LinearProgramResult, solve_linear_program
from .types import Cut, FlowSolution, Path, PathDecomposition, link_endpoints, link_label
from .wireless import feasible_flow_wireless, max_flow_wireless, splitting_weights

__all__ = [
    'Cut',
    'FlowGraph',
    'FlowSolution',
    'LinearProgramResult',
    'Path',
    'PathDecomposition',
    'cut_value',
    'decompose_paths',
    'feasible_flow_wireless',
    'is_acyclic',
    'link_endpoints',
    'link_label',
    'max_flow',
    'max_flow_wireless',
    'max_flow_wireline',
    'min_cut',
    'min_cut_by_enumeration',
    'multicast_flows',
    'multicast_region',
    'remove_cycles',
    'solve_linear_program',
    'splitting_weights',
]


def max_flow(net, s, t):
    """Maximum flow on either kind of network."""
    if net.kind == 'wireline':
        return max_flow_wireline(net, s, t)
    return max_flow_wireless(net, s, t)

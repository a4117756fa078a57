"""
Dense two-phase simplex with Bland's anti-cycling rule.

Solves   minimise c.x   subject to   A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.

The tableau keeps the constraint rows on top and the reduced-cost row at the
bottom; the last column is the right-hand side. Phase one minimises the sum
of artificial variables. Artificials still basic at zero afterwards are
pivoted out, and rows where that is impossible are redundant and dropped.
"""
import logging
from dataclasses import dataclass

import numpy as np

from ..conf import get_setting

logger = logging.getLogger(__name__)

PIVOT_TOLERANCE = 1e-10

OPTIMAL = 'optimal'
INFEASIBLE = 'infeasible'
UNBOUNDED = 'unbounded'
ITERATION_LIMIT = 'iteration_limit'


@dataclass(frozen=True)
class LinearProgramResult:
    status: str
    x: np.ndarray = None
    objective: float = None

    @property
    def is_optimal(self):
        return self.status == OPTIMAL


def _pivot(tableau, row, col):
    tableau[row] /= tableau[row, col]
    column = tableau[:, col].copy()
    column[row] = 0.0
    tableau -= np.outer(column, tableau[row])


def _entering(costs):
    candidates = np.flatnonzero(costs < -PIVOT_TOLERANCE)
    return int(candidates[0]) if candidates.size else -1


def _leaving(tableau, basis, col):
    rows = tableau.shape[0] - 1
    best = -1
    best_ratio = np.inf
    for i in range(rows):
        a = tableau[i, col]
        if a <= PIVOT_TOLERANCE:
            continue
        ratio = tableau[i, -1] / a
        if ratio < best_ratio - PIVOT_TOLERANCE or (
            abs(ratio - best_ratio) <= PIVOT_TOLERANCE and basis[i] < basis[best]
        ):
            best, best_ratio = i, ratio
    return best


def _iterate(tableau, basis, max_iterations):
    for _ in range(max_iterations):
        col = _entering(tableau[-1, :-1])
        if col < 0:
            return OPTIMAL
        row = _leaving(tableau, basis, col)
        if row < 0:
            return UNBOUNDED
        _pivot(tableau, row, col)
        basis[row] = col
    return ITERATION_LIMIT


def solve_linear_program(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None, feasibility_tolerance=None):
    """Minimise ``c.x`` over the polyhedron; see the module docstring."""
    c = np.asarray(c, dtype=float)
    n = c.shape[0]
    a_ub = np.zeros((0, n)) if a_ub is None else np.asarray(a_ub, dtype=float).reshape(-1, n)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float)
    a_eq = np.zeros((0, n)) if a_eq is None else np.asarray(a_eq, dtype=float).reshape(-1, n)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float)
    m_ub, m_eq = a_ub.shape[0], a_eq.shape[0]
    m = m_ub + m_eq
    max_iterations = get_setting('SIMPLEX_MAX_ITERATIONS')
    if feasibility_tolerance is None:
        scale = max(1.0, float(np.abs(np.concatenate([b_ub, b_eq])).max(initial=0.0)))
        feasibility_tolerance = get_setting('RATE_TOLERANCE') * scale

    # Rows: slack columns for every inequality, artificials where a row has
    # no usable slack (equalities, or inequalities with negative rhs).
    rows = np.zeros((m, n + m_ub))
    rows[:m_ub, :n] = a_ub
    rows[:m_ub, n:] = np.eye(m_ub)
    rows[m_ub:, :n] = a_eq
    rhs = np.concatenate([b_ub, b_eq])
    negative = rhs < 0
    rows[negative] *= -1
    rhs = np.abs(rhs)

    needs_artificial = [i for i in range(m) if i >= m_ub or negative[i]]
    n_art = len(needs_artificial)
    width = n + m_ub + n_art
    tableau = np.zeros((m + 1, width + 1))
    tableau[:m, :n + m_ub] = rows
    tableau[:m, -1] = rhs
    basis = [n + i for i in range(m)]
    for k, i in enumerate(needs_artificial):
        tableau[i, n + m_ub + k] = 1.0
        basis[i] = n + m_ub + k
    artificial_start = n + m_ub

    # Phase one: minimise the sum of artificials.
    for i in needs_artificial:
        tableau[-1] -= tableau[i]
    tableau[-1, artificial_start:width] = 0.0
    status = _iterate(tableau, basis, max_iterations)
    if status != OPTIMAL:
        return LinearProgramResult(status)
    if -tableau[-1, -1] > feasibility_tolerance:
        return LinearProgramResult(INFEASIBLE)

    keep = []
    for i in range(m):
        if basis[i] >= artificial_start:
            candidates = np.flatnonzero(np.abs(tableau[i, :artificial_start]) > PIVOT_TOLERANCE)
            if candidates.size == 0:
                continue
            _pivot(tableau, i, int(candidates[0]))
            basis[i] = int(candidates[0])
        keep.append(i)
    if len(keep) < m:
        logger.debug("dropped %d redundant constraint rows", m - len(keep))
    tableau = np.vstack([tableau[keep], tableau[-1:]])
    tableau = np.hstack([tableau[:, :artificial_start], tableau[:, -1:]])
    basis = [basis[i] for i in keep]

    # Phase two: reduced costs of the real objective.
    costs = np.zeros(artificial_start)
    costs[:n] = c
    tableau[-1, :-1] = costs
    tableau[-1, -1] = 0.0
    for i, var in enumerate(basis):
        if costs[var] != 0.0:
            tableau[-1] -= costs[var] * tableau[i]
    status = _iterate(tableau, basis, max_iterations)
    if status != OPTIMAL:
        return LinearProgramResult(status)

    solution = np.zeros(artificial_start)
    for i, var in enumerate(basis):
        solution[var] = tableau[i, -1]
    x = np.clip(solution[:n], 0.0, None)
    return LinearProgramResult(OPTIMAL, x, float(c @ x))

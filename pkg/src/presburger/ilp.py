"""
Integer feasibility over the nonnegative integers.

Depth-first branch and bound over linear programming relaxations solved with
``scipy.optimize.linprog`` (HiGHS). Candidate points are rounded and checked
with exact integer arithmetic before they are returned, so floating point
only ever steers the search.
"""

import math

import numpy as np
from scipy.optimize import linprog

from src.core.constants import ILP_BOUND_CAP, LP_TOLERANCE
from src.core.errors import SearchBudgetExceeded, SolverError
from src.debug.logger import log

# linprog status codes
LP_SOLVED = 0
LP_ITERATION_LIMIT = 1
LP_INFEASIBLE = 2


def small_solution_bound(rows, var_count):
    """n * (m * (a_max + 1)) ** (2m + 1), the classical bound on a minimal solution."""
    m = max(len(rows), 1)
    a_max = 1
    for row in rows:
        a_max = max([a_max, abs(row.rhs)] + [abs(coef) for _, coef in row.coefficients])
    n = max(var_count, 1)
    # The exact bound is astronomically large; compare in log space before materializing it.
    log_bound = math.log(n) + (2 * m + 1) * math.log(m * (a_max + 1))
    if log_bound > math.log(ILP_BOUND_CAP):
        return ILP_BOUND_CAP
    return n * (m * (a_max + 1)) ** (2 * m + 1)


def _matrices(rows, var_count):
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for row in rows:
        coefficients = np.zeros(var_count)
        for var, coef in row.coefficients:
            coefficients[var] = coef
        if row.sense == "<=":
            a_ub.append(coefficients)
            b_ub.append(row.rhs)
        elif row.sense == ">=":
            a_ub.append(-coefficients)
            b_ub.append(-row.rhs)
        else:
            a_eq.append(coefficients)
            b_eq.append(row.rhs)
    as_array = lambda rows_, rhs_: (np.array(rows_), np.array(rhs_, dtype=float)) if rows_ else (None, None)
    return as_array(a_ub, b_ub) + as_array(a_eq, b_eq)


def _relaxation(objective, matrices, lower, upper):
    a_ub, b_ub, a_eq, b_eq = matrices
    result = linprog(
        objective,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=list(zip(lower, upper)),
        method="highs",
    )
    if result.status == LP_SOLVED:
        return result.x
    if result.status == LP_INFEASIBLE:
        return None
    if result.status == LP_ITERATION_LIMIT:
        raise SearchBudgetExceeded(f"LP relaxation hit its iteration limit: {result.message}")
    raise SolverError(f"LP relaxation failed with status {result.status}: {result.message}")


def _trivially_infeasible(rows):
    for row in rows:
        if row.coefficients:
            continue
        if not row.holds({}):
            return True
    return False


def integer_feasible(rows, var_count, lower=None, upper=None, bound=None):
    """A nonnegative integer assignment satisfying every row, or None.

    ``lower``/``upper`` are optional per-variable bounds (``None`` entries
    fall back to 0 and the small-solution bound). The search minimizes the
    sum of variables, so the assignment found tends to be small.
    """
    rows = list(rows)
    if _trivially_infeasible(rows):
        return None
    rows = [row for row in rows if row.coefficients]
    if var_count == 0:
        return ()
    cap = bound if bound is not None else small_solution_bound(rows, var_count)
    lo = [0 if lower is None or lower[i] is None else lower[i] for i in range(var_count)]
    hi = [cap if upper is None or upper[i] is None else min(upper[i], cap) for i in range(var_count)]
    if any(l > h for l, h in zip(lo, hi)):
        return None
    if not rows:
        return tuple(lo)

    matrices = _matrices(rows, var_count)
    objective = np.ones(var_count)
    stack = [(lo, hi)]
    nodes = 0
    while stack:
        lo_node, hi_node = stack.pop()
        nodes += 1
        x = _relaxation(objective, matrices, lo_node, hi_node)
        if x is None:
            continue
        rounded = [int(round(value)) for value in x]
        fractional = [(abs(value - round(value)), i) for i, value in enumerate(x) if abs(value - round(value)) > LP_TOLERANCE]
        if not fractional:
            values = dict(enumerate(rounded))
            if all(row.holds(values) for row in rows):
                log("[ilp] feasible after %d nodes", nodes, name="presburger.ilp")
                return tuple(rounded)
            # Rounding drifted past a constraint; fall back to branching on the largest component.
            fractional = [(0.0, max(range(var_count), key=lambda i: (hi_node[i] - lo_node[i], -i)))]
        # Most infeasible component first
        _, var = max(fractional, key=lambda item: (item[0], -item[1]))
        if lo_node[var] >= hi_node[var]:
            continue
        floor_value = min(max(math.floor(x[var]), lo_node[var]), hi_node[var] - 1)
        down_hi = list(hi_node)
        down_hi[var] = floor_value
        up_lo = list(lo_node)
        up_lo[var] = floor_value + 1
        # Push the upper branch first so the smaller values are explored first.
        if up_lo[var] <= hi_node[var]:
            stack.append((up_lo, list(hi_node)))
        if lo_node[var] <= down_hi[var]:
            stack.append((list(lo_node), down_hi))
    log("[ilp] infeasible after %d nodes", nodes, name="presburger.ilp")
    return None

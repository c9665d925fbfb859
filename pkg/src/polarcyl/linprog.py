"""Exact rational linear programming (two-phase simplex, Bland's rule).

Solves   min c.x  subject to  A x = b,  x >= 0   over Fraction arithmetic.

Bland's anti-cycling rule makes every run terminating and bit-for-bit
deterministic.  Results carry exact certificates:

* optimal   -- primal x plus dual y with  y.A_j <= c_j  and  y.b = c.x;
* infeasible -- Farkas y with  y.A_j <= 0  for every column and y.b > 0.

Certificates refer to the caller's row order and signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass
class LPResult:
    status: str                      # "optimal" | "infeasible" | "unbounded"
    x: list[Fraction] | None = None
    objective: Fraction | None = None
    dual: list[Fraction] | None = None
    farkas: list[Fraction] | None = None


def _pivot(tableau, obj, basis, row, col):
    pivot_row = tableau[row]
    inv = _ONE / pivot_row[col]
    if inv != 1:
        tableau[row] = pivot_row = [inv * v for v in pivot_row]
    for i, other in enumerate(tableau):
        if i == row:
            continue
        factor = other[col]
        if factor:
            tableau[i] = [v - factor * p for v, p in zip(other, pivot_row)]
    factor = obj[col]
    if factor:
        obj[:] = [v - factor * p for v, p in zip(obj, pivot_row)]
    basis[row] = col


def _bland_step(tableau, obj, basis, eligible):
    """One simplex step; returns 'pivoted', 'optimal' or 'unbounded'."""
    entering = None
    for j in eligible:
        if obj[j] < 0:
            entering = j
            break
    if entering is None:
        return "optimal"
    leaving, best = None, None
    for i, row in enumerate(tableau):
        coeff = row[entering]
        if coeff > 0:
            ratio = row[-1] / coeff
            if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                best, leaving = ratio, i
    if leaving is None:
        return "unbounded"
    _pivot(tableau, obj, basis, leaving, entering)
    return "pivoted"


def solve_lp(rows, rhs, costs) -> LPResult:
    """Minimize costs.x subject to rows.x = rhs, x >= 0, exactly."""
    n = len(costs)
    flips = [(-1 if b < 0 else 1) for b in rhs]
    mat = [[flip * Fraction(v) for v in row] for flip, row in zip(flips, rows)]
    b = [flip * Fraction(v) for flip, v in zip(flips, rhs)]
    m = len(mat)

    # Tableau columns: n structural, m artificial, then the RHS.
    tableau = [mat[i] + [_ONE if j == i else _ZERO for j in range(m)] + [b[i]]
               for i in range(m)]
    basis = [n + i for i in range(m)]

    # Phase 1: minimize the sum of artificials (initial duals are all 1).
    obj = [-sum(tableau[i][j] for i in range(m)) for j in range(n)] \
        + [_ZERO] * m + [-sum(b)]
    structural = list(range(n))
    while True:
        step = _bland_step(tableau, obj, basis, structural)
        if step == "optimal":
            break
        assert step != "unbounded"  # phase-1 objective is bounded below by 0

    if -obj[-1] > 0:
        y = [flips[i] * (_ONE - obj[n + i]) for i in range(m)]
        return LPResult(status="infeasible", farkas=y)

    # Drive leftover artificials out of the basis; drop redundant rows.
    keep = []
    for i in range(m):
        if basis[i] < n:
            keep.append(i)
            continue
        col = next((j for j in range(n) if tableau[i][j] != 0), None)
        if col is None:
            continue  # identically zero on structural variables: redundant
        _pivot(tableau, obj, basis, i, col)
        keep.append(i)
    tableau = [tableau[i] for i in keep]
    basis = [basis[i] for i in keep]

    # Phase 2: true costs; artificial columns stay for dual extraction only.
    costs = [Fraction(c) for c in costs]
    width = n + m + 1
    obj = [_ZERO] * width
    for j in range(n):
        obj[j] = costs[j]
    for i, bi in enumerate(basis):
        factor = costs[bi]
        if factor:
            obj = [v - factor * p for v, p in zip(obj, tableau[i])]
    while True:
        step = _bland_step(tableau, obj, basis, structural)
        if step == "optimal":
            break
        if step == "unbounded":
            return LPResult(status="unbounded")

    x = [_ZERO] * n
    for i, bi in enumerate(basis):
        x[bi] = tableau[i][-1]
    y = [flips[i] * (-obj[n + i]) for i in range(len(flips))]
    return LPResult(status="optimal", x=x, objective=-obj[-1], dual=y)


def solve_feasibility(rows, rhs) -> LPResult:
    """Find x >= 0 with rows.x = rhs, or a Farkas certificate."""
    n = len(rows[0]) if rows else 0
    return solve_lp(rows, rhs, [_ZERO] * n)

"""Exact-rational phase-1 simplex for equality-form feasibility.

Solves A x = b, x >= 0 over Fractions.  Bland's rule throughout, so the
method terminates without cycling.  When the system is infeasible the dual
of the phase-1 optimum is returned as a Farkas witness y with
y . A <= 0 (componentwise over columns) and y . b > 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def solve_feasibility(
    rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
) -> tuple[Optional[list[Fraction]], Optional[list[Fraction]]]:
    """Return (x, None) with A x = b, x >= 0, or (None, y) with the Farkas
    certificate y.A <= 0, y.b > 0 when no such x exists."""
    m = len(rows)
    if m == 0:
        return [], None
    n = len(rows[0])
    signs = [ONE] * m
    tableau: list[list[Fraction]] = []
    for i in range(m):
        row = list(rows[i])
        if len(row) != n:
            raise ValueError("ragged constraint matrix")
        b = rhs[i]
        if b < 0:
            row = [-v for v in row]
            b = -b
            signs[i] = -ONE
        art = [ONE if k == i else ZERO for k in range(m)]
        tableau.append(row + art + [b])
    basis = list(range(n, n + m))
    # reduced costs for min(sum of artificials) with the artificial basis:
    # r_j = c_j - y.A_j where y = (1, ..., 1)
    width = n + m
    reduced = [ZERO] * (width + 1)
    for j in range(n):
        reduced[j] = -sum(tableau[i][j] for i in range(m))
    reduced[width] = -sum(tableau[i][width] for i in range(m))

    while True:
        enter = next((j for j in range(width) if reduced[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            coeff = tableau[i][enter]
            if coeff > 0:
                ratio = tableau[i][width] / coeff
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise RuntimeError("phase-1 objective unbounded; inconsistent state")
        _pivot(tableau, reduced, basis, leave, enter, width)

    objective = sum(tableau[i][width] for i in range(m) if basis[i] >= n)
    if objective > 0:
        # dual from the artificial columns: r_{art i} = 1 - y_i
        y = [(ONE - reduced[n + i]) * signs[i] for i in range(m)]
        return None, y
    x = [ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tableau[i][width]
    return x, None


def _pivot(tableau: list[list[Fraction]], reduced: list[Fraction],
           basis: list[int], leave: int, enter: int, width: int) -> None:
    pivot = tableau[leave][enter]
    prow = [v / pivot for v in tableau[leave]]
    tableau[leave] = prow
    for i in range(len(tableau)):
        if i == leave:
            continue
        f = tableau[i][enter]
        if f:
            tableau[i] = [a - f * b for a, b in zip(tableau[i], prow)]
    f = reduced[enter]
    if f:
        for j in range(width + 1):
            reduced[j] -= f * prow[j]
    basis[leave] = enter

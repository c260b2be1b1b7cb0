"""Exact phase-one simplex (Bland's rule) for non-negative feasibility.

Only feasibility is needed: find ``x >= 0`` with ``A x = b``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def nonnegative_solution(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Return a basic ``x >= 0`` solving ``a x = b`` exactly, or None if infeasible.

    ``a`` is given row-wise (one row per equation).  Phase one minimizes the
    sum of artificial variables; Bland's smallest-index rule guarantees
    termination.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if len(b) != m:
        raise ValueError("right-hand side length does not match row count")
    if m == 0:
        return ()
    # tableau rows: n original columns + m artificials + rhs; flip rows so rhs >= 0
    tab: list[list[Fraction]] = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [Fraction(sign * x) for x in a[i]]
        row += [Fraction(1 if k == i else 0) for k in range(m)]
        row.append(Fraction(sign * b[i]))
        tab.append(row)
    basis = [n + i for i in range(m)]
    width = n + m

    # reduced costs for min sum(artificials): c_j - c_B B^-1 A_j
    cost = [Fraction(0)] * (width + 1)
    for j in range(n):
        cost[j] = -sum(tab[i][j] for i in range(m))
    cost[width] = -sum(tab[i][width] for i in range(m))

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][width] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded; cannot happen for phase one
            break
        _pivot(tab, cost, leave, enter)
        basis[leave] = enter

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tab[i][width]
    return tuple(x)


def _pivot(tab: list[list[Fraction]], cost: list[Fraction], r: int, c: int) -> None:
    p = tab[r][c]
    tab[r] = [x / p for x in tab[r]]
    for i, row in enumerate(tab):
        if i != r and row[c]:
            f = row[c]
            tab[i] = [x - f * y for x, y in zip(row, tab[r])]
    if cost[c]:
        f = cost[c]
        cost[:] = [x - f * y for x, y in zip(cost, tab[r])]

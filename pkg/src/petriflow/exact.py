"""Exact integer/rational vector kernel.

Everything here works on ``int`` and ``fractions.Fraction``; no floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionError

IntegerVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


def gcd_normalize(v: Sequence[int]) -> tuple[IntegerVector, int]:
    """Divide ``v`` by the gcd of its nonzero entries.

    Returns ``(v // g, g)``; the zero vector comes back unchanged with ``g = 0``.
    """
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v), 0
    return tuple(x // g for x in v), g


def as_rational(v: Iterable) -> RationalVector:
    return tuple(Fraction(x) for x in v)


def _check_dims(vs: Sequence[Sequence]) -> int | None:
    dims = {len(v) for v in vs}
    if len(dims) > 1:
        raise DimensionError(f"vectors of mixed dimension {sorted(dims)}")
    return dims.pop() if dims else None


class _Echelon:
    """Incremental row-echelon form used to test membership in a span."""

    def __init__(self) -> None:
        self.rows: list[tuple[int, list[Fraction]]] = []  # (pivot column, row)

    def reduce(self, v: Sequence) -> list[Fraction]:
        w = [Fraction(x) for x in v]
        for col, row in self.rows:
            if w[col]:
                f = w[col] / row[col]
                for k in range(col, len(w)):
                    if row[k]:
                        w[k] -= f * row[k]
        return w

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; return True iff it increased the rank."""
        w = self.reduce(v)
        for col, x in enumerate(w):
            if x:
                self.rows.append((col, w))
                return True
        return False


def rational_rank(vs: Sequence[Sequence]) -> int:
    _check_dims(vs)
    ech = _Echelon()
    return sum(1 for v in vs if ech.add(v))


def extract_independent_subset(vs: Sequence[Sequence]) -> list:
    """Greedy left-to-right basis of ``span(vs)``; ties broken by input order."""
    _check_dims(vs)
    ech = _Echelon()
    return [v for v in vs if ech.add(v)]


def solve_rational(columns: Sequence[Sequence], target: Sequence) -> RationalVector | None:
    """Find ``a`` with ``sum(a[i] * columns[i]) == target`` over Q.

    Free variables are set to zero.  Returns None when ``target`` lies
    outside the span of ``columns``.
    """
    n = len(columns)
    d = len(target)
    if any(len(c) != d for c in columns):
        raise DimensionError("columns and target differ in dimension")
    # augmented system: d equations, n unknowns
    rows = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(d)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, d) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(d):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == d:
            break
    if any(rows[i][n] for i in range(r, d)):
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = rows[i][n]
    return tuple(sol)


def leq(u: Sequence[int], v: Sequence[int]) -> bool:
    """Componentwise ``u <= v``."""
    return all(a <= b for a, b in zip(u, v))


def support(v: Sequence) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(v) if x)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))

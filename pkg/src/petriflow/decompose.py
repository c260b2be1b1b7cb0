"""Decomposing a semiflow over a generating set."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ResourceCapError
from .exact import rational_rank, solve_rational
from .lp import nonnegative_solution
from .semiflows import GeneratingSet, Semiflow, Semiring, _as_weights

SEARCH_NODE_CAP = 1_000_000


@dataclass(frozen=True)
class Decomposition:
    target: Semiflow
    generators: GeneratingSet
    coefficients: tuple[int | Fraction, ...]  # plain ints over N
    semiring: Semiring
    method: str

    def __post_init__(self) -> None:
        rebuilt = [Fraction(0)] * len(self.target.weights)
        for a, g in zip(self.coefficients, self.generators):
            for i, w in enumerate(g.weights):
                rebuilt[i] += a * w
        if tuple(rebuilt) != tuple(Fraction(x) for x in self.target.weights):
            raise AssertionError("decomposition does not reconstruct its target")


@dataclass(frozen=True)
class Infeasible:
    target: Semiflow
    semiring: Semiring
    reason: str
    certificate: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False


def decompose(f, gens: GeneratingSet, semiring: Semiring | str) -> Decomposition | Infeasible:
    """Write ``f`` as a combination of ``gens`` with coefficients in ``semiring``.

    Over N the greedy construction is used first: walk the generators in
    the given order and subtract each as many times as the remainder stays
    non-negative.  The result depends on the order.  If greedy leaves a
    remainder, a bounded exhaustive search decides the question.
    """
    semiring = Semiring(semiring)
    target = Semiflow(_as_weights(f))
    if len(gens) == 0:
        raise ValueError("generating set is empty")
    if any(len(g) != len(target) for g in gens):
        raise ValueError("generators and target differ in dimension")
    if semiring is Semiring.N:
        return _decompose_n(target, gens)
    if semiring is Semiring.QPLUS:
        return _decompose_qplus(target, gens)
    return _decompose_q(target, gens)


def greedy_coefficients(f: Sequence[int], gens: Sequence[Sequence[int]]) -> tuple[list[int], tuple[int, ...]]:
    r = list(f)
    ks = []
    for g in gens:
        k = min((r[i] // w for i, w in enumerate(g) if w), default=0)
        if k:
            r = [a - k * b for a, b in zip(r, g)]
        ks.append(k)
    return ks, tuple(r)


def _decompose_n(target: Semiflow, gens: GeneratingSet) -> Decomposition | Infeasible:
    vecs = gens.vectors()
    ks, rest = greedy_coefficients(target.weights, vecs)
    if not any(rest):
        return Decomposition(target, gens, tuple(ks), Semiring.N, "greedy")

    found = _search_n(target.weights, vecs)
    if found is None:
        return Infeasible(
            target,
            Semiring.N,
            "no non-negative integer combination exists",
            {"kind": "exhaustion", "greedy_remainder": list(rest)},
        )
    return Decomposition(target, gens, tuple(found), Semiring.N, "search")


def _search_n(f: tuple[int, ...], vecs: list[tuple[int, ...]]) -> list[int] | None:
    n = len(vecs)
    coeffs = [0] * n
    nodes = 0

    def rec(i: int, r: tuple[int, ...]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > SEARCH_NODE_CAP:
            raise ResourceCapError("decomposition search exceeded node cap")
        if not any(r):
            for k in range(i, n):
                coeffs[k] = 0
            return True
        if i == n:
            return False
        g = vecs[i]
        top = min((r[p] // w for p, w in enumerate(g) if w), default=0)
        for k in range(top, -1, -1):
            coeffs[i] = k
            if rec(i + 1, tuple(a - k * b for a, b in zip(r, g))):
                return True
        return False

    return list(coeffs) if rec(0, f) else None


def _decompose_qplus(target: Semiflow, gens: GeneratingSet) -> Decomposition | Infeasible:
    vecs = gens.vectors()
    d = len(target)
    rows = [[v[i] for v in vecs] for i in range(d)]
    sol = nonnegative_solution(rows, target.weights)
    if sol is None:
        return Infeasible(
            target,
            Semiring.QPLUS,
            "no non-negative rational combination exists",
            {"kind": "exhaustion", "method": "phase-one simplex optimum is positive"},
        )
    return Decomposition(target, gens, sol, Semiring.QPLUS, "simplex")


def _decompose_q(target: Semiflow, gens: GeneratingSet) -> Decomposition | Infeasible:
    vecs = gens.vectors()
    sol = solve_rational(vecs, target.weights)
    if sol is None:
        r_gens = rational_rank(vecs)
        return Infeasible(
            target,
            Semiring.Q,
            "target is outside the span of the generators",
            {"kind": "rank", "rank_generators": r_gens, "rank_with_target": r_gens + 1},
        )
    return Decomposition(target, gens, sol, Semiring.Q, "elimination")

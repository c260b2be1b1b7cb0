"""Semiflows of a net and their generating sets over N, Q+ and Q.

A semiflow is a weight vector ``f`` over places with ``f^T C = 0`` where
``C`` is the incidence matrix.  Three generating sets are computed:

* the fundamental set (one canonical semiflow per minimal support),
  obtained by Farkas elimination; it generates every non-negative
  semiflow over Q+ and is the minimal such set;
* the Hilbert basis (all componentwise-minimal semiflows), the unique
  minimal generating set over N, obtained by Contejean-Devie completion;
* a basis over Q extracted greedily from the fundamental set.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, NotASemiflowError, ResourceCapError
from .exact import dot, extract_independent_subset, gcd_normalize, leq, rational_rank, support
from .net import Marking, Net, incidence

DEFAULT_COEFFICIENT_CAP = 10_000
DEFAULT_FRONTIER_CAP = 500_000


class Semiring(str, enum.Enum):
    N = "N"
    QPLUS = "Qplus"
    Q = "Q"


class Kind(str, enum.Enum):
    FUNDAMENTAL = "fundamental"
    HILBERT_BASIS = "hilbert_basis"
    Q_BASIS = "q_basis"
    USER_SUPPLIED = "user_supplied"


@dataclass(frozen=True)
class Semiflow:
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not any(self.weights) or min(self.weights) < 0:
            raise ValueError(f"a semiflow must be non-negative and nonzero: {self.weights}")

    @property
    def support(self) -> frozenset[int]:
        return support(self.weights)

    @property
    def canonical(self) -> bool:
        return is_canonical(self)

    def __iter__(self):
        return iter(self.weights)

    def __len__(self) -> int:
        return len(self.weights)

    def scaled(self, k: int) -> "Semiflow":
        return Semiflow(tuple(k * w for w in self.weights))


def _as_weights(v) -> tuple[int, ...]:
    return v.weights if isinstance(v, Semiflow) else tuple(v)


@dataclass(frozen=True)
class GeneratingSet:
    """A tagged family of non-negative semiflows."""

    semiring: Semiring
    members: tuple[Semiflow, ...]
    kind: Kind = Kind.USER_SUPPLIED
    places: tuple[str, ...] | None = None
    names: tuple[str, ...] | None = field(default=None)

    def __post_init__(self) -> None:
        members = tuple(m if isinstance(m, Semiflow) else Semiflow(m) for m in self.members)
        object.__setattr__(self, "semiring", Semiring(self.semiring))
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "members", members)
        if len(set(members)) != len(members):
            raise ValueError("generating set members must be pairwise distinct")
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"e{i + 1}" for i in range(len(members))))
        elif len(self.names) != len(members):
            raise ValueError("one name per member required")
        if self.kind is Kind.FUNDAMENTAL:
            if not all(m.canonical for m in members):
                raise ValueError("fundamental set members must be canonical")
            sups = [m.support for m in members]
            if any(a < b for a in sups for b in sups):
                raise ValueError("fundamental set supports must be pairwise incomparable")
        if self.kind is Kind.Q_BASIS and rational_rank([m.weights for m in members]) != len(members):
            raise ValueError("q_basis members must be linearly independent")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def vectors(self) -> list[tuple[int, ...]]:
        return [m.weights for m in self.members]

    def reordered(self, order: Sequence[int]) -> "GeneratingSet":
        return GeneratingSet(
            self.semiring,
            tuple(self.members[i] for i in order),
            self.kind,
            self.places,
            tuple(self.names[i] for i in order),
        )


@dataclass(frozen=True)
class BoundReport:
    """Token bounds derived from a generating set.

    ``mu`` maps each place to ``min e^T q0 / e(p)`` over generators ``e``
    covering it, or ``math.inf`` when no generator covers it.
    """

    mu: dict[str, Fraction | float]
    rho: frozenset[str]
    structurally_bounded_places: frozenset[str]


# --- predicates --------------------------------------------------------------


def is_semiflow(net: Net, v: Sequence[int]) -> bool:
    """True iff ``v^T C = 0``; sign is not checked."""
    v = _as_weights(v)
    if len(v) != len(net.places):
        raise DimensionError(f"vector has {len(v)} entries, net has {len(net.places)} places")
    c = incidence(net)
    return all(sum(v[i] * c[i][j] for i in range(len(v))) == 0 for j in range(len(net.transitions)))


def is_canonical(v) -> bool:
    """gcd of the nonzero coordinates is one; the zero vector is not canonical."""
    _, g = gcd_normalize(_as_weights(v))
    return g == 1


def _require_nonneg_semiflow(net: Net, v: tuple[int, ...]) -> None:
    if not is_semiflow(net, v):
        raise NotASemiflowError(f"{v} is not a semiflow of {net.name}")
    if min(v, default=0) < 0 or not any(v):
        raise NotASemiflowError(f"{v} must be non-negative and nonzero")


def is_minimal(net: Net, v, hilbert: GeneratingSet | None = None) -> bool:
    """True iff no other nonzero non-negative semiflow lies componentwise below ``v``."""
    v = _as_weights(v)
    _require_nonneg_semiflow(net, v)
    hb = hilbert if hilbert is not None else compute_minimal_semiflows(net)
    return Semiflow(v) in hb.members


# --- Farkas elimination --------------------------------------------------------


def farkas_minimal_support(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Minimal-support non-negative integer solutions of ``y^T A = 0``.

    ``rows`` holds ``A`` one row per unknown.  Columns are eliminated in
    order; after each step rows are gcd-normalized and any row whose
    support strictly contains another row's support is dropped.  The
    result is one canonical vector per minimal support.
    """
    n = len(rows)
    if n == 0:
        return []
    m = len(rows[0])
    table = {
        tuple(rows[i]) + tuple(1 if k == i else 0 for k in range(n))
        for i in range(n)
    }
    for j in range(m):
        zero, pos, neg = [], [], []
        for r in table:
            (zero if r[j] == 0 else pos if r[j] > 0 else neg).append(r)
        new = set(zero)
        for p in pos:
            for q in neg:
                a, b = p[j], -q[j]
                combined = tuple(b * x + a * y for x, y in zip(p, q))
                new.add(gcd_normalize(combined)[0])
        table = _prune(new, m)
    out = sorted((r[m:] for r in table), key=_order_key)
    return out


def _prune(rows: Iterable[tuple[int, ...]], offset: int) -> set[tuple[int, ...]]:
    rows = list(rows)
    sups = [frozenset(i for i, x in enumerate(r[offset:]) if x) for r in rows]
    keep = set()
    for i, r in enumerate(rows):
        if not any(sups[k] < sups[i] for k in range(len(rows))):
            keep.add(r)
    return keep


def _order_key(w: Sequence[int]):
    return (tuple(i for i, x in enumerate(w) if x), tuple(w))


# --- generating sets ---------------------------------------------------------


def compute_fundamental_set(net: Net) -> GeneratingSet:
    c = incidence(net)
    vecs = farkas_minimal_support(c)
    return GeneratingSet(Semiring.QPLUS, tuple(Semiflow(v) for v in vecs), Kind.FUNDAMENTAL, net.places)


def compute_minimal_semiflows(
    net: Net,
    coefficient_cap: int = DEFAULT_COEFFICIENT_CAP,
    frontier_cap: int = DEFAULT_FRONTIER_CAP,
) -> GeneratingSet:
    """The Hilbert basis of the non-negative semiflows.

    Contejean-Devie completion: grow candidate vectors one unit at a time,
    only in directions that move ``x^T C`` towards zero, and discard
    anything already above a known solution.  The known solutions are
    seeded with the fundamental set, whose members are all minimal.

    Raises ResourceCapError rather than return a partial basis.
    """
    c = incidence(net)
    d = len(net.places)
    m = len(net.transitions)
    found: list[tuple[int, ...]] = [mem.weights for mem in compute_fundamental_set(net)]
    zero_image = (0,) * m

    frontier: dict[tuple[int, ...], tuple[int, ...]] = {}
    for i in range(d):
        e = tuple(1 if k == i else 0 for k in range(d))
        frontier[e] = c[i]
    while frontier:
        for x, img in frontier.items():
            if img == zero_image and not any(leq(s, x) for s in found):
                found.append(x)
        nxt: dict[tuple[int, ...], tuple[int, ...]] = {}
        for x, img in frontier.items():
            if img == zero_image:
                continue
            for i in range(d):
                if dot(img, c[i]) >= 0:
                    continue
                y = x[:i] + (x[i] + 1,) + x[i + 1:]
                if y in nxt or any(leq(s, y) for s in found):
                    continue
                if y[i] > coefficient_cap:
                    raise ResourceCapError(
                        f"Hilbert basis completion exceeded coefficient cap {coefficient_cap}"
                    )
                nxt[y] = tuple(a + b for a, b in zip(img, c[i]))
                if len(nxt) > frontier_cap:
                    raise ResourceCapError(
                        f"Hilbert basis completion exceeded frontier cap {frontier_cap}"
                    )
        frontier = nxt
    found.sort(key=_order_key)
    return GeneratingSet(Semiring.N, tuple(Semiflow(v) for v in found), Kind.HILBERT_BASIS, net.places)


def compute_q_basis(source: Net | GeneratingSet | Sequence[Sequence[int]]) -> GeneratingSet:
    """Linearly independent subset spanning the same Q-space.

    Given a net, the basis is extracted from its fundamental set; a
    generating set or raw vectors are scanned in the given order.
    """
    places = None
    if isinstance(source, Net):
        gs = compute_fundamental_set(source)
        vecs, names, places = gs.vectors(), gs.names, source.places
    elif isinstance(source, GeneratingSet):
        vecs, names, places = source.vectors(), source.names, source.places
    else:
        vecs = [tuple(v) for v in source]
        names = tuple(f"e{i + 1}" for i in range(len(vecs)))
    keep = extract_independent_subset(vecs)
    # map back to names; vectors are distinct so index lookup is safe
    kept_names = tuple(names[vecs.index(v)] for v in keep)
    return GeneratingSet(Semiring.Q, tuple(Semiflow(v) for v in keep), Kind.Q_BASIS, places, kept_names)


def minimal_supports(net: Net, fundamental: GeneratingSet | None = None) -> list[tuple[str, ...]]:
    fs = fundamental if fundamental is not None else compute_fundamental_set(net)
    return [tuple(net.places[i] for i in sorted(m.support)) for m in fs]


def sperner_bound(d: int) -> int:
    if d < 0:
        raise ValueError("d must be non-negative")
    return math.comb(d, d // 2)


# --- bounds -----------------------------------------------------------------


def place_bounds(net: Net, q0: Marking, gens: GeneratingSet | None = None) -> BoundReport:
    """Upper bounds on every place over all markings reachable from ``q0``.

    Any generating set over Q+ or N yields the same bounds; the fundamental
    set is used when none is given.
    """
    gs = gens if gens is not None else compute_fundamental_set(net)
    if gs.semiring is Semiring.Q and gs.kind is not Kind.FUNDAMENTAL:
        raise ValueError("bounds need a generating set over N or Q+")
    mu: dict[str, Fraction | float] = {}
    rho = set()
    for i, p in enumerate(net.places):
        best: Fraction | float = math.inf
        for e in gs:
            if e.weights[i]:
                rho.add(p)
                best = min(best, Fraction(dot(e.weights, q0), e.weights[i]))
        mu[p] = best
    sb_places, _ = structurally_bounded_support(net)
    return BoundReport(mu, frozenset(rho), frozenset(sb_places))


def structurally_bounded_support(net: Net) -> tuple[tuple[str, ...], tuple[int, ...]]:
    """Largest place set certified structurally bounded, with its witness.

    Solves ``v >= 0, v^T C <= 0`` by adding one slack unknown per
    transition and running Farkas elimination on ``[C; I]``; the sum of
    all extreme solutions has maximal support.
    """
    c = incidence(net)
    d, m = len(net.places), len(net.transitions)
    rows = [list(r) for r in c] + [[1 if k == j else 0 for k in range(m)] for j in range(m)]
    rays = farkas_minimal_support(rows)
    total = [0] * d
    for r in rays:
        for i in range(d):
            total[i] += r[i]
    witness, _ = gcd_normalize(total)
    places = tuple(p for p, w in zip(net.places, witness) if w)
    return places, witness


def enabling_threshold(f, net: Net, t: str) -> int:
    """``f^T Pre(., t)``: the weighted token count ``t`` needs to fire."""
    w = _as_weights(f)
    if not is_semiflow(net, w):
        raise NotASemiflowError(f"{w} is not a semiflow of {net.name}")
    return dot(w, net.pre_column(t))


def threshold_reachable(f, net: Net, q0: Marking, t: str) -> bool:
    """Necessary condition for ``t`` to ever fire from ``q0``."""
    return dot(_as_weights(f), q0) >= enabling_threshold(f, net, t)


def support_union(f, g) -> frozenset[int]:
    fw, gw = _as_weights(f), _as_weights(g)
    if min(fw, default=0) < 0 or min(gw, default=0) < 0:
        raise ValueError("support_union needs non-negative vectors")
    s = support(tuple(a + b for a, b in zip(fw, gw)))
    assert s == support(fw) | support(gw)
    return s

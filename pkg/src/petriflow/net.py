"""Place/transition nets, the token game, and the state equation.

Vectors are plain tuples of Python ints (arbitrary precision) indexed in
declaration order: markings and semiflows by place, Parikh vectors by
transition.  Matrices are tuples of rows, one row per place.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, NotEnabledError, UnknownIdentifierError

Marking = tuple[int, ...]
ParikhVector = tuple[int, ...]
IncidenceMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Net:
    """A place/transition net given by its Pre and Post weight matrices.

    ``pre[p][t]`` is the number of tokens transition ``t`` consumes from
    place ``p``; ``post[p][t]`` the number it produces there.
    """

    places: tuple[str, ...]
    transitions: tuple[str, ...]
    pre: tuple[tuple[int, ...], ...]
    post: tuple[tuple[int, ...], ...]
    name: str = "net"
    _pidx: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)
    _tidx: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        places = tuple(self.places)
        transitions = tuple(self.transitions)
        if len(set(places)) != len(places):
            raise ValueError("duplicate place identifier")
        if len(set(transitions)) != len(transitions):
            raise ValueError("duplicate transition identifier")
        if set(places) & set(transitions):
            raise ValueError("place and transition identifiers must be disjoint")
        pre = _freeze_matrix(self.pre, len(places), len(transitions), "pre")
        post = _freeze_matrix(self.post, len(places), len(transitions), "post")
        object.__setattr__(self, "places", places)
        object.__setattr__(self, "transitions", transitions)
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "post", post)
        object.__setattr__(self, "_pidx", {p: i for i, p in enumerate(places)})
        object.__setattr__(self, "_tidx", {t: j for j, t in enumerate(transitions)})

    @classmethod
    def from_arcs(
        cls,
        places: Sequence[str],
        arcs: Mapping[str, tuple[Mapping[str, int], Mapping[str, int]]],
        name: str = "net",
    ) -> "Net":
        """Build a net from ``{transition: (inputs, outputs)}`` weight maps."""
        transitions = list(arcs)
        pidx = {p: i for i, p in enumerate(places)}
        pre = [[0] * len(transitions) for _ in places]
        post = [[0] * len(transitions) for _ in places]
        for j, t in enumerate(transitions):
            ins, outs = arcs[t]
            for matrix, weights in ((pre, ins), (post, outs)):
                for p, w in weights.items():
                    if p not in pidx:
                        raise UnknownIdentifierError("place", p)
                    matrix[pidx[p]][j] += w
        return cls(tuple(places), tuple(transitions), pre, post, name=name)

    def place_index(self, p: str) -> int:
        try:
            return self._pidx[p]
        except KeyError:
            raise UnknownIdentifierError("place", p) from None

    def transition_index(self, t: str) -> int:
        try:
            return self._tidx[t]
        except KeyError:
            raise UnknownIdentifierError("transition", t) from None

    def pre_column(self, t: str) -> tuple[int, ...]:
        j = self.transition_index(t)
        return tuple(row[j] for row in self.pre)

    def post_column(self, t: str) -> tuple[int, ...]:
        j = self.transition_index(t)
        return tuple(row[j] for row in self.post)

    def marking(self, values: Mapping[str, int] | Iterable[int] | None = None, **kw: int) -> Marking:
        """Return a validated marking from a place map or a positional sequence.

        Places missing from a map default to zero.
        """
        if values is None:
            values = {}
        if isinstance(values, Mapping):
            merged = {**values, **kw}
            q = [0] * len(self.places)
            for p, v in merged.items():
                q[self.place_index(p)] = v
        else:
            q = list(values)
        return check_marking(self, q)

    def reversed(self) -> "Net":
        """The net with Pre and Post swapped (every transition runs backwards)."""
        return Net(self.places, self.transitions, self.post, self.pre, name=self.name + "-rev")

    def as_dict(self, q: Sequence[int]) -> dict[str, int]:
        return dict(zip(self.places, q))


def _freeze_matrix(rows, n_places: int, n_trans: int, label: str) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(w) for w in row) for row in rows)
    if len(rows) != n_places or any(len(r) != n_trans for r in rows):
        raise DimensionError(f"{label} must be {n_places} x {n_trans}")
    for r in rows:
        for w in r:
            if w < 0:
                raise ValueError(f"{label} weights must be non-negative, got {w}")
    return rows


def check_marking(net: Net, q: Sequence[int]) -> Marking:
    q = tuple(q)
    if len(q) != len(net.places):
        raise DimensionError(f"marking has {len(q)} entries, net has {len(net.places)} places")
    for v in q:
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"marking entries must be natural numbers, got {v!r}")
    return q


def _conform(net: Net, q: Sequence[int]) -> None:
    if len(q) != len(net.places):
        raise DimensionError(f"marking has {len(q)} entries, net has {len(net.places)} places")
    if q and min(q) < 0:
        raise ValueError(f"marking entries must be natural numbers, got {tuple(q)}")


def enabled(net: Net, q: Marking, t: str) -> bool:
    j = net.transition_index(t)
    _conform(net, q)
    return all(q[i] >= net.pre[i][j] for i in range(len(q)))


def enabled_transitions(net: Net, q: Marking) -> list[str]:
    return [t for t in net.transitions if enabled(net, q, t)]


def fire(net: Net, q: Marking, t: str) -> Marking:
    """Fire ``t`` from ``q`` and return the successor marking."""
    j = net.transition_index(t)
    _conform(net, q)
    out = []
    for i, v in enumerate(q):
        need = net.pre[i][j]
        if v < need:
            raise NotEnabledError(t, net.places[i], v, need)
        out.append(v - need + net.post[i][j])
    return tuple(out)


def incidence(net: Net) -> IncidenceMatrix:
    return tuple(
        tuple(b - a for a, b in zip(pre_row, post_row))
        for pre_row, post_row in zip(net.pre, net.post)
    )


def unit(net: Net, t: str) -> ParikhVector:
    j = net.transition_index(t)
    return tuple(1 if k == j else 0 for k in range(len(net.transitions)))


def state_equation_residual(net: Net, q0: Sequence[int], r: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Return ``q - (C r + q0)``.

    A zero residual is necessary for ``q`` to be reached from ``q0`` by a
    sequence whose Parikh vector is ``r``; a nonzero one rules it out.
    """
    d, m = len(net.places), len(net.transitions)
    if len(q0) != d or len(q) != d or len(r) != m:
        raise DimensionError("state equation operands do not conform to the net")
    c = incidence(net)
    return tuple(q[i] - q0[i] - sum(c[i][j] * r[j] for j in range(m)) for i in range(d))

"""Explicit reachability graphs and behavioral properties decided on them.

Queries that need the full state space return a :class:`Verdict` whose
``holds`` is ``None`` when the graph was truncated and the explored part
does not settle the question.
"""

from __future__ import annotations

import operator
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .errors import PetriError
from .exact import dot
from .net import Marking, Net, check_marking, enabled, fire

DEFAULT_MAX_STATES = 1_000_000

Edge = tuple[int, str, int]


class UnknownStateError(PetriError, ValueError):
    pass


@dataclass(frozen=True)
class ReachGraph:
    net: Net
    states: tuple[Marking, ...]
    edges: tuple[Edge, ...]
    truncated: bool
    expanded: int
    component: tuple[int, ...] = field(init=False)
    components: tuple[tuple[int, ...], ...] = field(init=False)
    component_succ: tuple[frozenset[int], ...] = field(init=False)
    _index: dict[Marking, int] = field(init=False, repr=False, compare=False)
    _succ: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.states)
        succ: list[list[int]] = [[] for _ in range(n)]
        for s, _, t in self.edges:
            succ[s].append(t)
        comps = tarjan_scc(succ)
        comp_of = [0] * n
        for c, members in enumerate(comps):
            for v in members:
                comp_of[v] = c
        dag = [set() for _ in comps]
        for s, _, t in self.edges:
            if comp_of[s] != comp_of[t]:
                dag[comp_of[s]].add(comp_of[t])
        object.__setattr__(self, "_index", {q: i for i, q in enumerate(self.states)})
        object.__setattr__(self, "_succ", tuple(tuple(x) for x in succ))
        object.__setattr__(self, "component", tuple(comp_of))
        object.__setattr__(self, "components", tuple(tuple(sorted(c)) for c in comps))
        object.__setattr__(self, "component_succ", tuple(frozenset(d) for d in dag))

    def __len__(self) -> int:
        return len(self.states)

    def index(self, q: Sequence[int]) -> int | None:
        return self._index.get(tuple(q))

    def successors(self, i: int) -> tuple[int, ...]:
        return self._succ[i]

    @property
    def strongly_connected(self) -> bool:
        return len(self.components) == 1

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(t for _, t, _ in self.edges)


@dataclass(frozen=True)
class Verdict:
    holds: bool | None
    witness: int | None = None
    exhaustive: bool = True
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds is True


_OPS: dict[str, Callable[[int, int], bool]] = {
    "==": operator.eq,
    "=": operator.eq,
    "!=": operator.ne,
    "<=": operator.le,
    ">=": operator.ge,
    "<": operator.lt,
    ">": operator.gt,
}


@dataclass(frozen=True)
class HomeSpaceQuery:
    """A marking set given explicitly or as a conjunction of linear constraints."""

    markings: frozenset[Marking] | None = None
    constraints: tuple[tuple[tuple[int, ...], str, int], ...] = ()

    @classmethod
    def of_markings(cls, markings: Iterable[Sequence[int]]) -> "HomeSpaceQuery":
        return cls(markings=frozenset(tuple(q) for q in markings))

    @classmethod
    def linear(cls, net: Net, constraints: Iterable[tuple[Mapping[str, int] | Sequence[int], str, int]]) -> "HomeSpaceQuery":
        out = []
        for vec, op, const in constraints:
            if op not in _OPS:
                raise ValueError(f"unknown comparator {op!r}")
            if isinstance(vec, Mapping):
                w = [0] * len(net.places)
                for p, v in vec.items():
                    w[net.place_index(p)] = v
                vec = w
            out.append((tuple(vec), op, const))
        return cls(constraints=tuple(out))

    def __contains__(self, q: Sequence[int]) -> bool:
        q = tuple(q)
        if self.markings is not None and q not in self.markings:
            return False
        return all(_OPS[op](dot(w, q), c) for w, op, c in self.constraints)


@dataclass(frozen=True)
class LivenessReport:
    verdicts: dict[str, Verdict]

    @property
    def live(self) -> frozenset[str]:
        return frozenset(t for t, v in self.verdicts.items() if v.holds)

    @property
    def is_live(self) -> bool | None:
        values = [v.holds for v in self.verdicts.values()]
        if all(v is True for v in values):
            return True
        if any(v is False for v in values):
            return False
        return None


@dataclass(frozen=True)
class PropertyReport:
    safe: bool | None
    max_tokens: dict[str, int]
    deadlocks: tuple[int, ...]
    live_transitions: frozenset[str]
    is_live_net: bool | None
    home_state_q0: bool | None
    violated_invariants: tuple[tuple[tuple[int, ...], int], ...] = ()
    exhaustive: bool = True


@dataclass(frozen=True)
class Certificate:
    generator: tuple[int, ...]
    name: str
    value_at_marking: int
    value_at_initial: int


# --- construction ----------------------------------------------------------


def build_rg(net: Net, q0: Sequence[int], max_states: int = DEFAULT_MAX_STATES) -> ReachGraph:
    """Breadth-first reachability graph with exact marking deduplication.

    Transitions are tried in declaration order so state numbering is
    deterministic.  Exploration stops once ``max_states`` states exist and
    a new one would be needed; the result is then flagged as truncated.
    """
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    q0 = check_marking(net, q0)
    index = {q0: 0}
    states = [q0]
    edges: list[Edge] = []
    queue = deque([0])
    truncated = False
    expanded = 0
    while queue:
        i = queue.popleft()
        q = states[i]
        for t in net.transitions:
            if not enabled(net, q, t):
                continue
            q2 = fire(net, q, t)
            j = index.get(q2)
            if j is None:
                if len(states) >= max_states:
                    truncated = True
                    break
                j = len(states)
                index[q2] = j
                states.append(q2)
                queue.append(j)
            edges.append((i, t, j))
        if truncated:
            break
        expanded += 1
    return ReachGraph(net, tuple(states), tuple(edges), truncated, expanded)


def tarjan_scc(succ: Sequence[Sequence[int]]) -> list[list[int]]:
    """Strongly connected components, iteratively.

    Components come out in reverse topological order: every component
    appears after all components reachable from it.
    """
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            if pos < len(succ[v]):
                work[-1] = (v, pos + 1)
                w = succ[v][pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def can_reach(rg: ReachGraph, targets: Iterable[int]) -> list[bool]:
    """For each state, whether some state in ``targets`` is reachable from it.

    Runs one pass over the SCC condensation, sinks first.
    """
    targets = set(targets)
    good = [False] * len(rg.components)
    for c, members in enumerate(rg.components):
        if any(v in targets for v in members) or any(good[d] for d in rg.component_succ[c]):
            good[c] = True
    return [good[rg.component[i]] for i in range(len(rg.states))]


def _first_failure(flags: list[bool]) -> int | None:
    return next((i for i, ok in enumerate(flags) if not ok), None)


# --- queries ---------------------------------------------------------------


def check_linear_invariant(rg: ReachGraph, f: Sequence[int], q0: Sequence[int] | None = None) -> Verdict:
    """Check ``f^T q == f^T q0`` on every explored state."""
    q0 = rg.states[0] if q0 is None else tuple(q0)
    target = dot(f, q0)
    for i, q in enumerate(rg.states):
        if dot(f, q) != target:
            return Verdict(False, witness=i, exhaustive=not rg.truncated)
    if rg.truncated:
        return Verdict(None, exhaustive=False, note="no violation found among explored states")
    return Verdict(True)


def is_home_space(rg: ReachGraph, hs: HomeSpaceQuery) -> Verdict:
    """Every reachable marking can reach some marking of ``hs``."""
    if rg.truncated:
        return Verdict(None, exhaustive=False, note="graph truncated")
    members = [i for i, q in enumerate(rg.states) if q in hs]
    if not members:
        return Verdict(False, witness=0, note="home space does not meet the reachability set")
    ok = can_reach(rg, members)
    bad = _first_failure(ok)
    return Verdict(bad is None, witness=bad)


def is_home_state(rg: ReachGraph, q: Sequence[int]) -> Verdict:
    i = rg.index(q)
    if i is None:
        raise UnknownStateError(f"{tuple(q)} is not a reachable marking")
    if rg.truncated:
        return Verdict(None, exhaustive=False, note="graph truncated")
    ok = can_reach(rg, [i])
    bad = _first_failure(ok)
    return Verdict(bad is None, witness=bad)


def live_transitions(rg: ReachGraph) -> LivenessReport:
    """Per-transition liveness: from every state, ``t`` can eventually fire."""
    net = rg.net
    verdicts: dict[str, Verdict] = {}
    for t in net.transitions:
        en = [i for i, q in enumerate(rg.states) if enabled(net, q, t)]
        if rg.truncated:
            # a state that cannot reach an enabling marking inside the explored
            # part proves nothing, since unexplored states may enable t
            verdicts[t] = Verdict(None, exhaustive=False, note="graph truncated")
            continue
        bad = _first_failure(can_reach(rg, en))
        verdicts[t] = Verdict(bad is None, witness=bad)
    report = LivenessReport(verdicts)
    if not rg.truncated and rg.strongly_connected:
        # with q0 a home state, live transitions are exactly the edge labels
        assert report.live == rg.labels, (report.live, rg.labels)
    return report


def max_tokens(rg: ReachGraph) -> dict[str, int]:
    net = rg.net
    return {p: max(q[i] for q in rg.states) for i, p in enumerate(net.places)}


def deadlocks(rg: ReachGraph) -> tuple[int, ...]:
    """Fully expanded states with no outgoing edge."""
    return tuple(i for i in range(rg.expanded) if not rg.successors(i))


def safeness_and_deadlocks(rg: ReachGraph) -> tuple[bool | None, dict[str, int], tuple[int, ...]]:
    mt = max_tokens(rg)
    if any(v > 1 for v in mt.values()):
        safe: bool | None = False
    else:
        safe = None if rg.truncated else True
    return safe, mt, deadlocks(rg)


def analyze(rg: ReachGraph, invariants: Iterable[Sequence[int]] = ()) -> PropertyReport:
    safe, mt, dead = safeness_and_deadlocks(rg)
    lv = live_transitions(rg)
    home = is_home_state(rg, rg.states[0]).holds
    violated = []
    for f in invariants:
        v = check_linear_invariant(rg, f)
        if v.holds is False:
            violated.append((tuple(f), v.witness))
    return PropertyReport(
        safe=safe,
        max_tokens=mt,
        deadlocks=dead,
        live_transitions=lv.live,
        is_live_net=lv.is_live,
        home_state_q0=home,
        violated_invariants=tuple(violated),
        exhaustive=not rg.truncated,
    )


def unreachability_certificate(net: Net, q0: Sequence[int], q: Sequence[int], gens) -> Certificate | None:
    """First generator whose invariant separates ``q`` from ``q0``, if any.

    A returned certificate proves ``q`` unreachable; None means unknown.
    """
    q0 = check_marking(net, q0)
    q = check_marking(net, q)
    names = getattr(gens, "names", None)
    for k, e in enumerate(gens):
        w = tuple(e)
        a, b = dot(w, q), dot(w, q0)
        if a != b:
            name = names[k] if names else f"e{k + 1}"
            return Certificate(w, name, a, b)
    return None


def starvation_cycle(rg: ReachGraph, hold_place: str, blocked: str) -> list[int] | None:
    """A cycle of states keeping ``hold_place`` marked while ``blocked`` stays disabled.

    This is the finite-graph surrogate for one program starving another:
    an infinite run that never gives ``blocked`` a chance to fire.  Returns
    the states of one such strongly connected region, or None.
    """
    net = rg.net
    p = net.place_index(hold_place)
    inside = [q[p] > 0 and not enabled(net, q, blocked) for q in rg.states]
    succ = [[w for w in rg.successors(v) if inside[v] and inside[w]] for v in range(len(rg.states))]
    for comp in tarjan_scc(succ):
        if not inside[comp[0]]:
            continue
        if len(comp) > 1 or comp[0] in succ[comp[0]]:
            return sorted(comp)
    return None

"""Concrete-instance sweeps over the parameterized fixture nets.

Each grid point is instantiated, its reachability graph built, and the
observed verdict compared with the closed-form condition known for the
template.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import fixtures
from .errors import ParseError
from .net import Net
from .reachability import DEFAULT_MAX_STATES, build_rg, live_transitions
from .semiflows import is_semiflow

TEMPLATES = {
    "mutex_param": ("k", "l", "x", "y", "z"),
    "tinyk": ("k", "a0", "b0"),
}


@dataclass(frozen=True)
class SweepRow:
    params: dict[str, int]
    states: int
    truncated: bool
    live: bool | None
    mutex: bool | None
    observed: bool | None
    expected: bool
    extra_semiflow_ok: bool | None = None

    @property
    def agrees(self) -> bool:
        return self.observed is self.expected


def mutual_exclusion(net: Net, states) -> bool:
    """No reachable marking has tokens in both B and E."""
    b, e = net.place_index("B"), net.place_index("E")
    return all(q[b] * q[e] == 0 for q in states)


def expected_mutex_param(k: int, l: int, x: int, y: int, z: int) -> bool:  # noqa: E741
    return k > 0 and l > 0 and max(x, y) <= z <= x + y - 1


def expected_tinyk(k: int, a0: int, b0: int) -> bool:
    g = a0 + k * b0
    return g > k and g % k != 0


def parse_grid(spec: str) -> dict[str, list[int]]:
    """Parse ``"k=0..2,x=1..3,z=0,2,4"``-style grids.

    Items are ``name=lo..hi`` ranges or ``name=v1|v2|...`` lists.
    """
    grid: dict[str, list[int]] = {}
    for item in filter(None, (s.strip() for s in spec.replace(";", ",").split(","))):
        name, sep, rng = item.partition("=")
        if not sep:
            raise ParseError(f"grid entry {item!r} must look like name=lo..hi")
        try:
            if ".." in rng:
                lo, hi = rng.split("..")
                values = list(range(int(lo), int(hi) + 1))
            else:
                values = [int(v) for v in rng.split("|")]
        except ValueError:
            raise ParseError(f"bad range in grid entry {item!r}") from None
        grid[name.strip()] = values
    return grid


def grid_points(template: str, grid: Mapping[str, Iterable[int]]) -> list[dict[str, int]]:
    names = TEMPLATES[template]
    missing = [n for n in names if n not in grid]
    unknown = [n for n in grid if n not in names]
    if missing or unknown:
        raise ParseError(
            f"template {template} needs parameters {', '.join(names)}"
            + (f"; missing {', '.join(missing)}" if missing else "")
            + (f"; unknown {', '.join(unknown)}" if unknown else "")
        )
    axes = [list(grid[n]) for n in names]
    return [dict(zip(names, combo)) for combo in itertools.product(*axes)]


def run_point(template: str, params: Mapping[str, int], max_states: int = DEFAULT_MAX_STATES) -> SweepRow:
    if template not in TEMPLATES:
        raise KeyError(f"unknown template {template!r}; have {', '.join(TEMPLATES)}")
    net, q0 = fixtures.load(template, **params)
    rg = build_rg(net, q0, max_states=max_states)
    live = live_transitions(rg).is_live
    if template == "mutex_param":
        me = mutual_exclusion(net, rg.states)
        if me is False:
            observed_me: bool | None = False
        else:
            observed_me = None if rg.truncated else True
        if live is None or observed_me is None:
            observed = False if (live is False or observed_me is False) else None
        else:
            observed = live and observed_me
        sem2 = fixtures.semiflow_vector("mutex_param", "sem2", net, **params)
        return SweepRow(
            dict(params), len(rg), rg.truncated, live, observed_me, observed,
            expected_mutex_param(**params), is_semiflow(net, sem2),
        )
    return SweepRow(dict(params), len(rg), rg.truncated, live, None, live, expected_tinyk(**params))


def parameter_sweep(
    template: str,
    grid: Mapping[str, Iterable[int]] | str,
    max_states: int = DEFAULT_MAX_STATES,
) -> list[SweepRow]:
    if isinstance(grid, str):
        grid = parse_grid(grid)
    return [run_point(template, p, max_states) for p in grid_points(template, grid)]

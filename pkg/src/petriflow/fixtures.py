"""Bundled example nets and vector-level semiflow families.

Every loader checks the net against the semiflows known for it and
raises FixtureError if any of them fails the conservation equations;
that guards the arc reconstructions.
"""

from __future__ import annotations

from importlib import resources
from typing import Callable, Mapping

from .errors import FixtureError
from .net import Marking, Net
from .netio import parse_net
from .semiflows import is_semiflow

NAMES = ("tiny", "tinyk", "mutex", "mutex_param", "mutex3", "telecom")

# Semiflow families given without an underlying net.
STC3 = {
    "f1": (3, 3, 2, 0, 1),
    "f2": (4, 4, 1, 0, 2),
    "g1": (2, 2, 3, 0, 0),
    "g2": (1, 1, 0, 1, 0),
    "g3": (5, 5, 0, 0, 3),
    "h": (9, 9, 6, 0, 3),
}
STC2 = {
    "f": (1, 1, 1, 1),
    "g1": (0, 1, 1, 0),
    "g2": (0, 1, 0, 1),
    "g3": (1, 0, 1, 0),
    "g4": (1, 0, 0, 1),
}


def source(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"no bundled net named {name!r}; have {', '.join(NAMES)}")
    return resources.files(__package__).joinpath("fixtures", f"{name}.net").read_text(encoding="utf-8")


def _weights(net: Net, m: Mapping[str, int]) -> tuple[int, ...]:
    return tuple(m.get(p, 0) for p in net.places)


def expected_semiflows(name: str, params: Mapping[str, int] | None = None) -> dict[str, dict[str, int]]:
    """Semiflows known for a bundled net, as place-weight maps."""
    p = dict(_DEFAULTS.get(name, {}))
    p.update(params or {})
    if name == "tiny":
        return {"f": {"A": 1, "B": 2}}
    if name == "tinyk":
        return {"g": {"A": 1, "B": p["k"]}}
    if name == "mutex":
        return {"f1": {"A": 1, "B": 1}, "f2": {"D": 1, "E": 1}, "sem": {"B": 1, "E": 1, "S": 1}}
    if name in ("mutex_param", "mutex3"):
        out = {
            "f1": {"A": 1, "B": 1},
            "f2": {"D": 1, "E": 1},
            "sem2": {"B": p["x"], "E": p["y"], "S": 1},
        }
        if name == "mutex3":
            out["turn"] = {"B": 1, "E": 1, "T1": 1, "T2": 1}
        return out
    if name == "telecom":
        return {
            "f1": dict.fromkeys(("LA", "CLA", "W", "PU", "S"), 1),
            "f2": dict.fromkeys(("LA", "PU", "F", "CA"), 1),
            "f3": dict.fromkeys(("CLA", "S", "R", "A"), 1),
        }
    raise KeyError(name)


_DEFAULTS = {
    "tinyk": {"k": 2, "a0": 3, "b0": 0},
    "mutex_param": {"k": 2, "l": 2, "x": 1, "y": 1, "z": 1},
    "mutex3": {"k": 2, "l": 2, "x": 1, "y": 2, "z": 2},
}


def validate(name: str, net: Net, params: Mapping[str, int] | None = None) -> None:
    for label, m in expected_semiflows(name, params).items():
        if not is_semiflow(net, _weights(net, m)):
            raise FixtureError(f"fixture {name}: reference semiflow {label} fails on the net")


def load(name: str, **params: int) -> tuple[Net, Marking]:
    """Parse and validate a bundled net; keyword arguments bind its parameters."""
    net, q0 = parse_net(source(name), params)
    validate(name, net, params)
    return net, q0


def semiflow_vector(name: str, label: str, net: Net, **params: int) -> tuple[int, ...]:
    return _weights(net, expected_semiflows(name, params)[label])


def tiny() -> tuple[Net, Marking]:
    return load("tiny")


def tinyk(k: int, a0: int = 3, b0: int = 0) -> tuple[Net, Marking]:
    return load("tinyk", k=k, a0=a0, b0=b0)


def mutex() -> tuple[Net, Marking]:
    return load("mutex")


def mutex_param(k: int, l: int, x: int, y: int, z: int) -> tuple[Net, Marking]:  # noqa: E741
    return load("mutex_param", k=k, l=l, x=x, y=y, z=z)


def mutex3(**params: int) -> tuple[Net, Marking]:
    return load("mutex3", **params)


def telecom() -> tuple[Net, Marking]:
    return load("telecom")


LOADERS: dict[str, Callable[..., tuple[Net, Marking]]] = {
    "tiny": tiny,
    "tinyk": tinyk,
    "mutex": mutex,
    "mutex_param": mutex_param,
    "mutex3": mutex3,
    "telecom": telecom,
}

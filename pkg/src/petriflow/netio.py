"""Line-oriented ``.net`` text format.

::

    net tiny
    param k 2                 # optional; overridable at parse time
    place A init 3
    place B
    trans t1
      in A:k
      out B:1
    trans t2
      in A:1 B:1
      out A:k+1

Weights and initial markings are natural numbers or integer expressions
(``+``, ``-``, ``*``, parentheses) over declared parameters.  Unmentioned
arcs and markings are zero.
"""

from __future__ import annotations

import ast
from typing import Mapping

from .errors import ParseError
from .net import Marking, Net

_KEYWORDS = {"net", "param", "place", "trans", "in", "out", "init"}


def _eval_expr(text: str, params: Mapping[str, int], line: int) -> int:
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError:
        raise ParseError(f"malformed expression {text!r}", line) from None

    def ev(node) -> int:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in params:
                raise ParseError(f"unknown parameter {node.id!r}", line)
            return params[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub, ast.Mult)):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            return a * b
        raise ParseError(f"unsupported expression {text!r}", line)

    return ev(tree)


def _natural(text: str, params: Mapping[str, int], line: int, what: str) -> int:
    v = _eval_expr(text, params, line)
    if v < 0:
        raise ParseError(f"{what} must be non-negative, got {v}", line)
    return v


def _check_ident(ident: str, line: int) -> str:
    if not ident.isidentifier() or ident in _KEYWORDS:
        raise ParseError(f"invalid identifier {ident!r}", line)
    return ident


def parse_net(text: str, params: Mapping[str, int] | None = None) -> tuple[Net, Marking]:
    """Parse ``.net`` source into a net and its initial marking.

    ``params`` overrides parameter defaults declared in the file.
    """
    overrides = dict(params or {})
    values: dict[str, int] = {}
    name = "net"
    places: list[str] = []
    init: dict[str, int] = {}
    arcs: dict[str, tuple[dict[str, int], dict[str, int]]] = {}
    current: str | None = None
    seen_header = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "net":
            if seen_header or len(rest) != 1:
                raise ParseError("expected a single 'net <name>' header", lineno)
            name = rest[0]
            seen_header = True
        elif head == "param":
            if len(rest) != 2:
                raise ParseError("expected 'param <name> <value>'", lineno)
            pname = _check_ident(rest[0], lineno)
            if pname in values:
                raise ParseError(f"duplicate parameter {pname!r}", lineno)
            if pname in overrides:
                if not isinstance(overrides[pname], int) or overrides[pname] < 0:
                    raise ParseError(f"parameter {pname} must be a natural number, got {overrides[pname]!r}", lineno)
                values[pname] = overrides[pname]
            else:
                values[pname] = _natural(rest[1], values, lineno, "parameter")
        elif head == "place":
            if len(rest) not in (1, 3) or (len(rest) == 3 and rest[1] != "init"):
                raise ParseError("expected 'place <id> [init <nat>]'", lineno)
            pid = _check_ident(rest[0], lineno)
            if pid in init or pid in arcs:
                raise ParseError(f"duplicate identifier {pid!r}", lineno)
            places.append(pid)
            init[pid] = _natural(rest[2], values, lineno, "initial marking") if len(rest) == 3 else 0
            current = None
        elif head == "trans":
            if len(rest) != 1:
                raise ParseError("expected 'trans <id>'", lineno)
            tid = _check_ident(rest[0], lineno)
            if tid in init or tid in arcs:
                raise ParseError(f"duplicate identifier {tid!r}", lineno)
            arcs[tid] = ({}, {})
            current = tid
        elif head in ("in", "out"):
            if current is None:
                raise ParseError(f"'{head}' outside a transition block", lineno)
            side = arcs[current][0 if head == "in" else 1]
            for item in rest:
                pid, sep, wtext = item.partition(":")
                if pid not in init:
                    raise ParseError(f"unknown place {pid!r} in arc list", lineno)
                w = _natural(wtext, values, lineno, "arc weight") if sep else 1
                side[pid] = side.get(pid, 0) + w
        else:
            raise ParseError(f"unexpected keyword {head!r}", lineno)

    unused = set(overrides) - set(values)
    if unused:
        raise ParseError(f"unknown parameter(s) {', '.join(sorted(unused))}")
    net = Net.from_arcs(places, arcs, name=name)
    return net, tuple(init[p] for p in places)


def emit_net(net: Net, q0: Marking | None = None) -> str:
    """Render a net (and optional initial marking) back to ``.net`` text."""
    lines = [f"net {net.name}"]
    for i, p in enumerate(net.places):
        if q0 is not None and q0[i]:
            lines.append(f"place {p} init {q0[i]}")
        else:
            lines.append(f"place {p}")
    for j, t in enumerate(net.transitions):
        lines.append(f"trans {t}")
        ins = [f"{p}:{net.pre[i][j]}" for i, p in enumerate(net.places) if net.pre[i][j]]
        outs = [f"{p}:{net.post[i][j]}" for i, p in enumerate(net.places) if net.post[i][j]]
        if ins:
            lines.append("  in " + " ".join(ins))
        if outs:
            lines.append("  out " + " ".join(outs))
    return "\n".join(lines) + "\n"


def parse_vector(text: str, names: tuple[str, ...], what: str = "vector") -> tuple[int, ...]:
    """Parse ``"A=1,B=2"`` (missing names are 0) or a positional ``"1,2"``."""
    text = text.strip()
    if not text:
        return (0,) * len(names)
    items = [s.strip() for s in text.replace(";", ",").split(",") if s.strip()]
    if all("=" in s for s in items):
        out = [0] * len(names)
        for s in items:
            k, _, v = s.partition("=")
            k = k.strip()
            if k not in names:
                raise ParseError(f"unknown identifier {k!r} in {what}")
            out[names.index(k)] = _int(v, what)
        return tuple(out)
    if any("=" in s for s in items):
        raise ParseError(f"{what} mixes named and positional entries")
    if len(items) != len(names):
        raise ParseError(f"{what} needs {len(names)} entries, got {len(items)}")
    return tuple(_int(v, what) for v in items)


def _int(s: str, what: str) -> int:
    try:
        return int(s.strip())
    except ValueError:
        raise ParseError(f"non-integer entry {s.strip()!r} in {what}") from None

"""Command-line front end.

Exit codes: 0 analysis complete and every requested property holds,
1 a requested property is violated, 2 parse or usage error, 3 a resource
cap was hit (truncated graph or capped computation).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import fixtures
from .decompose import Infeasible, decompose
from .errors import ParseError, PetriError, ResourceCapError
from .net import Net
from .netio import parse_net, parse_vector
from .reachability import (
    DEFAULT_MAX_STATES,
    build_rg,
    is_home_state,
    live_transitions,
    safeness_and_deadlocks,
    unreachability_certificate,
)
from .report import (
    bounds_section,
    certificate_record,
    decomposition_section,
    emit_report,
    net_section,
    new_report,
    reachability_section,
    semiflow_records,
    sweep_section,
)
from .semiflows import (
    GeneratingSet,
    Kind,
    Semiflow,
    Semiring,
    compute_fundamental_set,
    compute_minimal_semiflows,
    compute_q_basis,
    is_semiflow,
    minimal_supports,
    place_bounds,
    structurally_bounded_support,
)
from .sweep import TEMPLATES, parameter_sweep

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parse_params(items: Sequence[str] | None) -> dict[str, int]:
    out: dict[str, int] = {}
    for item in items or ():
        for part in filter(None, item.split(",")):
            k, sep, v = part.partition("=")
            if not sep:
                raise UsageError(f"--param expects name=value, got {part!r}")
            try:
                out[k.strip()] = int(v)
            except ValueError:
                raise UsageError(f"--param {k.strip()} needs an integer, got {v!r}") from None
            if out[k.strip()] < 0:
                raise UsageError(f"--param {k.strip()} must be non-negative")
    return out


def load_net(args) -> tuple[Net, tuple[int, ...]]:
    """Read the positional net; ``@name`` picks a bundled fixture."""
    params = _parse_params(args.param)
    if args.net.startswith("@"):
        name = args.net[1:]
        if name not in fixtures.NAMES:
            raise UsageError(f"no bundled net {name!r}; have {', '.join(fixtures.NAMES)}")
        net, q0 = fixtures.load(name, **params)
    else:
        path = Path(args.net)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        net, q0 = parse_net(text, params)
    if getattr(args, "init", None):
        override = _parse_named(args.init, net.places, "--init")
        q0 = tuple(override.get(p, v) for p, v in zip(net.places, q0))
    return net, q0


def _parse_named(text: str, names: Sequence[str], what: str) -> dict[str, int]:
    out = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        k, sep, v = part.partition("=")
        if not sep or k.strip() not in names:
            raise UsageError(f"{what}: expected place=value with a known place, got {part!r}")
        try:
            val = int(v)
        except ValueError:
            raise UsageError(f"{what}: non-integer value in {part!r}") from None
        if val < 0:
            raise UsageError(f"{what}: negative marking in {part!r}")
        out[k.strip()] = val
    return out


def _generating_set(net: Net, semiring: Semiring) -> tuple[GeneratingSet, GeneratingSet | None]:
    """Generators for ``semiring`` plus the Hilbert basis when computed."""
    if semiring is Semiring.N:
        hb = compute_minimal_semiflows(net)
        return hb, hb
    if semiring is Semiring.QPLUS:
        return compute_fundamental_set(net), None
    return compute_q_basis(net), None


def _load_generators(path: str, semiring: Semiring, places: Sequence[str] | None) -> GeneratingSet:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read generator file {path}: {exc}") from None
    if isinstance(raw, dict) and "generators" in raw:
        places = raw.get("places", places)
        raw = raw["generators"]
    if not isinstance(raw, dict):
        raise UsageError("generator file must map names to weight vectors")
    names, members = [], []
    for name, w in raw.items():
        if isinstance(w, dict):
            if places is None:
                raise UsageError("named weights need a place list")
            unknown = set(w) - set(places)
            if unknown:
                raise UsageError(f"generator {name}: unknown places {sorted(unknown)}")
            w = [w.get(p, 0) for p in places]
        names.append(name)
        members.append(Semiflow(tuple(w)))
    try:
        return GeneratingSet(semiring, tuple(members), Kind.USER_SUPPLIED,
                             tuple(places) if places else None, tuple(names))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _apply_order(gens: GeneratingSet, order: str | None) -> GeneratingSet:
    if not order:
        return gens
    wanted = [s.strip() for s in order.split(",") if s.strip()]
    unknown = [n for n in wanted if n not in gens.names]
    if unknown:
        raise UsageError(f"--order names unknown generators {unknown}; have {list(gens.names)}")
    return gens.reordered([gens.names.index(n) for n in wanted])


# --- subcommands -------------------------------------------------------------


def cmd_semiflows(args) -> tuple[dict, int]:
    net, q0 = load_net(args)
    semiring = Semiring(args.semiring)
    gens, hb = _generating_set(net, semiring)
    if hb is None:
        hb = compute_minimal_semiflows(net)
    fs = compute_fundamental_set(net)
    doc = new_report()
    doc["net"] = net_section(net, q0)
    doc["semiflows"] = semiflow_records(gens, hb.vectors())
    doc["minimal_supports"] = [list(s) for s in minimal_supports(net, fs)]
    doc["counts"] = {
        "q_basis": len(compute_q_basis(net)),
        "fundamental": len(fs),
        "hilbert_basis": len(hb),
    }
    return doc, EXIT_OK


def cmd_bounds(args) -> tuple[dict, int]:
    net, q0 = load_net(args)
    fs = compute_fundamental_set(net)
    rep = place_bounds(net, q0, fs)
    _, witness = structurally_bounded_support(net)
    doc = new_report()
    doc["net"] = net_section(net, q0)
    doc["semiflows"] = semiflow_records(fs)
    doc["minimal_supports"] = [list(s) for s in minimal_supports(net, fs)]
    doc["bounds"] = bounds_section(net, rep, witness)
    return doc, EXIT_OK


def cmd_rg(args) -> tuple[dict, int]:
    net, q0 = load_net(args)
    rg = build_rg(net, q0, args.max_states)
    doc = new_report()
    doc["net"] = net_section(net, q0)
    doc["reachability"] = reachability_section(rg)
    return doc, EXIT_CAP if rg.truncated else EXIT_OK


def cmd_check(args) -> tuple[dict, int]:
    net, q0 = load_net(args)
    requested = [k for k in ("safe", "live", "home_state", "deadlocks") if getattr(args, k)]
    if not requested:
        requested = ["safe", "live", "home_state", "deadlocks"]
    rg = build_rg(net, q0, args.max_states)
    safe, mt, dead = safeness_and_deadlocks(rg)
    liveness = live_transitions(rg) if "live" in requested else None
    home = is_home_state(rg, q0).holds if "home_state" in requested else None
    verdicts: dict[str, bool | None] = {}
    if "safe" in requested:
        verdicts["safe"] = safe
    if "live" in requested:
        verdicts["live"] = liveness.is_live
    if "home_state" in requested:
        verdicts["home_state"] = home
    if "deadlocks" in requested:
        # deadlock-freedom; a found deadlock is definitive even when truncated
        verdicts["deadlock_free"] = False if dead else (None if rg.truncated else True)
    doc = new_report()
    doc["net"] = net_section(net, q0)
    doc["reachability"] = reachability_section(
        rg, safe=safe, max_tokens=mt, deadlocks=dead, liveness=liveness, home_state_q0=home
    )
    doc["verdicts"] = verdicts
    return doc, _verdict_code(verdicts.values())


def _verdict_code(values) -> int:
    values = list(values)
    if any(v is False for v in values):
        return EXIT_VIOLATED
    if any(v is None for v in values):
        return EXIT_CAP
    return EXIT_OK


def cmd_decompose(args) -> tuple[dict, int]:
    semiring = Semiring(args.semiring)
    doc = new_report()
    net = None
    if args.net is not None:
        net, q0 = load_net(args)
        doc["net"] = net_section(net, q0)
        places = net.places
    else:
        places = None
    if args.generators:
        gens = _load_generators(args.generators, semiring, places)
        places = gens.places
    elif net is not None:
        gens, _ = _generating_set(net, semiring)
    else:
        raise UsageError("decompose needs a net or --generators")
    gens = _apply_order(gens, args.order)
    if places is not None:
        target = parse_vector(args.target, tuple(places), "--target")
    else:
        target = tuple(int(x) for x in args.target.split(","))
    if min(target, default=0) < 0 or not any(target):
        raise UsageError("--target must be non-negative and nonzero")
    if net is not None and not is_semiflow(net, target):
        raise UsageError(f"--target {target} is not a semiflow of {net.name}")
    if len(gens) == 0:
        raise UsageError("generating set is empty")
    if any(len(g) != len(target) for g in gens):
        raise UsageError("--target and generators differ in dimension")
    result = decompose(target, gens, semiring)
    doc["decomposition"] = decomposition_section(result, places)
    doc["semiflows"] = semiflow_records(gens)
    return doc, EXIT_VIOLATED if isinstance(result, Infeasible) else EXIT_OK


def cmd_unreachable(args) -> tuple[dict, int]:
    net, q0 = load_net(args)
    q = parse_vector(args.marking, net.places, "--marking")
    if min(q, default=0) < 0:
        raise UsageError("--marking must be non-negative")
    if args.generators:
        gens = _load_generators(args.generators, Semiring.QPLUS, net.places)
    else:
        gens = compute_fundamental_set(net)
    cert = unreachability_certificate(net, q0, q, gens)
    doc = new_report()
    doc["net"] = net_section(net, q0)
    doc["semiflows"] = semiflow_records(gens)
    doc["certificates"] = [certificate_record(net, q, cert)]
    return doc, EXIT_OK if cert is not None else EXIT_VIOLATED


def cmd_sweep(args) -> tuple[dict, int]:
    rows = parameter_sweep(args.template, args.grid, args.max_states)
    doc = new_report()
    doc["sweep"] = sweep_section(args.template, rows)
    if any(r.truncated for r in rows):
        return doc, EXIT_CAP
    return doc, EXIT_OK if all(r.agrees for r in rows) else EXIT_VIOLATED


# --- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="petriflow",
        description="Exact semiflow, bound and reachability analysis of Petri nets.",
        epilog="Exit codes: 0 ok, 1 property violated, 2 usage/parse error, 3 resource cap hit.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def net_args(p: argparse.ArgumentParser, optional: bool = False) -> None:
        help_ = "path to a .net file, or @name for a bundled net (" + ", ".join(fixtures.NAMES) + ")"
        if optional:
            p.add_argument("net", nargs="?", default=None, help=help_ + "; optional with --generators")
        else:
            p.add_argument("net", help=help_)
        p.add_argument("--init", metavar="MARKING",
                       help='override initial marking, e.g. "A=3,B=0"; unmentioned places keep the file value')
        p.add_argument("--param", action="append", metavar="NAME=VALUE",
                       help="bind a net parameter (repeatable or comma-separated)")

    def max_states(p: argparse.ArgumentParser) -> None:
        p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES, metavar="N",
                       help=f"reachability graph state cap (default {DEFAULT_MAX_STATES})")

    semiring_help = "N: Hilbert basis, Qplus: fundamental set, Q: basis over the rationals"

    p = sub.add_parser("semiflows", help="compute a generating set of semiflows",
                       description="Compute a generating set of non-negative semiflows.")
    net_args(p)
    p.add_argument("--semiring", choices=[s.value for s in Semiring], default="Qplus", help=semiring_help)
    p.set_defaults(func=cmd_semiflows)

    p = sub.add_parser("bounds", help="place bounds and structural boundedness",
                       description="Token bounds from the fundamental set and a structural-boundedness witness.")
    net_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("rg", help="build the reachability graph",
                       description="Build the labeled reachability graph.")
    net_args(p)
    max_states(p)
    p.set_defaults(func=cmd_rg)

    p = sub.add_parser("check", help="verify behavioral properties on the reachability graph",
                       description="Verify properties; with no property flag, all are checked.")
    net_args(p)
    max_states(p)
    p.add_argument("--safe", action="store_true", help="every place holds at most one token")
    p.add_argument("--live", action="store_true", help="every transition is live")
    p.add_argument("--home-state", action="store_true", help="the initial marking is a home state")
    p.add_argument("--deadlocks", action="store_true", help="no reachable marking is a deadlock")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", help="decompose a semiflow over a generating set",
                       description="Decompose a semiflow over computed or supplied generators.")
    net_args(p, optional=True)
    p.add_argument("--target", required=True, metavar="VECTOR",
                   help='semiflow to decompose, "A=1,B=2" or positional "1,2"')
    p.add_argument("--semiring", choices=[s.value for s in Semiring], default="N",
                   help="coefficient domain; also selects the computed generators (" + semiring_help + ")")
    p.add_argument("--order", metavar="NAMES",
                   help="comma-separated generator names giving the greedy order over N")
    p.add_argument("--generators", metavar="FILE",
                   help='JSON file {"places": [...], "generators": {name: weights}}')
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("unreachable", help="prove a marking unreachable with a semiflow",
                       description="Look for a semiflow invariant separating a marking from the initial one.")
    net_args(p)
    p.add_argument("--marking", required=True, metavar="VECTOR", help='candidate marking, e.g. "B=1,E=1"')
    p.add_argument("--generators", metavar="FILE", help="JSON generator file (default: fundamental set)")
    p.set_defaults(func=cmd_unreachable)

    p = sub.add_parser("sweep", help="sweep a parameterized net over a grid",
                       description="Instantiate a template per grid point and compare with its closed form.")
    p.add_argument("--template", required=True, choices=sorted(TEMPLATES), help="parameterized net")
    p.add_argument("--grid", required=True, metavar="SPEC",
                   help='ranges such as "k=0..2,l=0..2,x=1..3,y=1..3,z=0..6" or lists "z=1|3"')
    max_states(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc, code = args.func(args)
    except ResourceCapError as exc:
        print(f"petriflow: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, ParseError, PetriError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"petriflow: {msg}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(emit_report(doc))
    return code


def main() -> None:
    sys.exit(run())

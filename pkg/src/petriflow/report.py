"""JSON analysis reports.

Numbers are exact: integers stay integers, other rationals become
``{"num": n, "den": d}`` and an unbounded place is ``"inf"``.  Output keys
are sorted so identical analyses give byte-identical documents.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .decompose import Decomposition, Infeasible
from .net import Marking, Net
from .reachability import Certificate, LivenessReport, ReachGraph
from .semiflows import BoundReport, GeneratingSet, sperner_bound
from .sweep import SweepRow

SECTIONS = ("net", "semiflows", "minimal_supports", "bounds", "reachability", "certificates")


def rational(x) -> Any:
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return {"num": x.numerator, "den": x.denominator}


def weight_map(places: Sequence[str] | None, w: Sequence[int]) -> dict[str, int]:
    names = places if places is not None else [f"p{i + 1}" for i in range(len(w))]
    return {p: v for p, v in zip(names, w) if v}


def net_section(net: Net, q0: Marking | None) -> dict:
    out: dict[str, Any] = {
        "name": net.name,
        "places": list(net.places),
        "transitions": list(net.transitions),
    }
    if q0 is not None:
        out["initial_marking"] = dict(zip(net.places, q0))
    return out


def semiflow_records(gs: GeneratingSet, minimal: Iterable[tuple[int, ...]] | None = None) -> list[dict]:
    """One record per member; ``minimal`` is the Hilbert basis, if known."""
    hb = set(minimal) if minimal is not None else None
    places = gs.places
    recs = []
    for name, m in zip(gs.names, gs.members):
        recs.append({
            "name": name,
            "weights": weight_map(places, m.weights),
            "canonical": m.canonical,
            "minimal": (m.weights in hb) if hb is not None else None,
            "support": [places[i] if places else f"p{i + 1}" for i in sorted(m.support)],
            "kind": gs.kind.value,
        })
    return recs


def bounds_section(net: Net, report: BoundReport, witness: Sequence[int] | None = None) -> dict:
    out = {
        "mu": {p: rational(report.mu[p]) for p in net.places},
        "rho": [p for p in net.places if p in report.rho],
        "sperner_bound": sperner_bound(len(net.places)),
        "structurally_bounded": [p for p in net.places if p in report.structurally_bounded_places],
    }
    if witness is not None:
        out["structural_witness"] = weight_map(net.places, witness)
    return out


def reachability_section(
    rg: ReachGraph,
    safe: bool | None = None,
    max_tokens: dict[str, int] | None = None,
    deadlocks: Sequence[int] | None = None,
    liveness: LivenessReport | None = None,
    home_state_q0: bool | None = None,
) -> dict:
    net = rg.net
    out: dict[str, Any] = {
        "states": [dict(zip(net.places, q)) for q in rg.states],
        "edges": [[s, t, d] for s, t, d in rg.edges],
        "truncated": rg.truncated,
        "scc_count": len(rg.components),
        "safe": safe,
        "deadlocks": list(deadlocks) if deadlocks is not None else None,
        "live_transitions": None,
        "home_state_q0": home_state_q0,
    }
    if max_tokens is not None:
        out["max_tokens"] = max_tokens
    if liveness is not None:
        out["live_transitions"] = [t for t in net.transitions if t in liveness.live]
        out["is_live"] = liveness.is_live
        out["non_live_witnesses"] = {
            t: v.witness for t, v in liveness.verdicts.items() if v.holds is False
        }
    return out


def certificate_record(net: Net | None, q: Sequence[int], cert: Certificate | None) -> dict:
    places = net.places if net is not None else None
    rec: dict[str, Any] = {"marking": weight_map(places, q), "unreachable": cert is not None}
    if cert is not None:
        rec.update({
            "generator": cert.name,
            "weights": weight_map(places, cert.generator),
            "value_at_marking": cert.value_at_marking,
            "value_at_initial": cert.value_at_initial,
        })
    return rec


def decomposition_section(result: Decomposition | Infeasible, places: Sequence[str] | None) -> dict:
    if isinstance(result, Infeasible):
        return {
            "feasible": False,
            "semiring": result.semiring.value,
            "target": weight_map(places, result.target.weights),
            "reason": result.reason,
            "certificate": result.certificate,
        }
    gens = result.generators
    return {
        "feasible": True,
        "semiring": result.semiring.value,
        "method": result.method,
        "target": weight_map(places, result.target.weights),
        "order": list(gens.names),
        "coefficients": {n: rational(a) for n, a in zip(gens.names, result.coefficients)},
    }


def sweep_section(template: str, rows: Sequence[SweepRow]) -> dict:
    return {
        "template": template,
        "points": len(rows),
        "agreeing": sum(r.agrees for r in rows),
        "truncated": sum(r.truncated for r in rows),
        "rows": [
            {
                "params": r.params,
                "states": r.states,
                "truncated": r.truncated,
                "live": r.live,
                "mutual_exclusion": r.mutex,
                "observed": r.observed,
                "expected": r.expected,
                "agrees": r.agrees,
                **({"sem2_is_semiflow": r.extra_semiflow_ok} if r.extra_semiflow_ok is not None else {}),
            }
            for r in rows
        ],
    }


def new_report() -> dict[str, Any]:
    return dict.fromkeys(SECTIONS)


def emit_report(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"

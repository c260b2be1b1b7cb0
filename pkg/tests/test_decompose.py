from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import small_nets
from petriflow import (
    Decomposition,
    GeneratingSet,
    Infeasible,
    Kind,
    Semiring,
    compute_minimal_semiflows,
    decompose,
)
from petriflow.fixtures import STC2, STC3


def gens(family, order, semiring=Semiring.N):
    return GeneratingSet(semiring, tuple(family[k] for k in order), Kind.USER_SUPPLIED, names=tuple(order))


def test_stc3_h_order_f_first():
    d = decompose(STC3["h"], gens(STC3, ["f1", "f2", "g1", "g2", "g3"]), Semiring.N)
    assert isinstance(d, Decomposition)
    assert d.coefficients == (3, 0, 0, 0, 0)


def test_stc3_h_order_g_first():
    d = decompose(STC3["h"], gens(STC3, ["g1", "g2", "g3", "f1", "f2"]), Semiring.N)
    assert d.coefficients == (2, 0, 1, 0, 0)


def test_stc3_h_third_decomposition():
    found = oracles.nat_decompositions(STC3["h"], [STC3[k] for k in ("f1", "f2", "g1", "g2", "g3")])
    assert sorted(found) == [(0, 0, 2, 0, 1), (1, 1, 1, 0, 0), (3, 0, 0, 0, 0)]
    d = decompose(STC3["h"], gens(STC3, ["f2", "g1", "f1", "g3", "g2"]), Semiring.N)
    assert dict(zip(d.generators.names, d.coefficients)) == {"f2": 1, "g1": 1, "f1": 1, "g3": 0, "g2": 0}


def test_stc2_both_decompositions():
    f = STC2["f"]
    d = decompose(f, gens(STC2, ["g1", "g2", "g3", "g4"]), Semiring.N)
    assert d.coefficients == (1, 0, 0, 1)
    d = decompose(f, gens(STC2, ["g2", "g3", "g1", "g4"]), Semiring.N)
    assert d.coefficients == (1, 1, 0, 0)


def test_f1_over_g_infeasible_in_n_feasible_in_qplus():
    g = gens(STC3, ["g1", "g2", "g3"])
    r = decompose(STC3["f1"], g, Semiring.N)
    assert isinstance(r, Infeasible) and not r
    assert r.certificate["kind"] == "exhaustion"
    d = decompose(STC3["f1"], g, Semiring.QPLUS)
    assert d.coefficients == (Fraction(2, 3), 0, Fraction(1, 3))


def test_q_decomposition_and_rank_certificate():
    g = gens(STC3, ["g1", "g3"])
    d = decompose(STC3["f1"], g, Semiring.Q)
    assert d.coefficients == (Fraction(2, 3), Fraction(1, 3))
    r = decompose(STC3["g2"], g, Semiring.Q)
    assert isinstance(r, Infeasible)
    assert r.certificate["kind"] == "rank"


def test_q_allows_negative_coefficients():
    g = gens(STC2, ["f", "g1"])
    d = decompose((1, 0, 0, 1), g, Semiring.Q)
    assert d.coefficients == (1, -1)
    assert isinstance(decompose((1, 0, 0, 1), g, Semiring.QPLUS), Infeasible)


def test_qplus_infeasible_certificate():
    r = decompose((1, 0, 0, 0), gens(STC2, ["g1", "g2"]), Semiring.QPLUS)
    assert isinstance(r, Infeasible) and r.certificate["kind"] == "exhaustion"


def test_greedy_dead_end_is_rescued_by_search():
    # greedy takes b three times and is left with (1, 0); backtracking
    # finds 2b + a
    family = {"a": (2, 1), "b": (1, 1)}
    d = decompose((4, 3), gens(family, ["b", "a"]), Semiring.N)
    assert isinstance(d, Decomposition)
    assert d.coefficients == (2, 1)
    assert d.method == "search"


def test_dimension_and_domain_errors():
    with pytest.raises(ValueError):
        decompose((1, 1), gens(STC2, ["g1"]), Semiring.N)
    with pytest.raises(ValueError):
        decompose((0, 0, 0, 0), gens(STC2, ["g1"]), Semiring.N)


def test_decomposition_rejects_inexact_reconstruction():
    g = gens(STC2, ["g1"])
    with pytest.raises(AssertionError):
        Decomposition(g.members[0], g, (2,), Semiring.N, "greedy")


@given(small_nets(), st.data())
@settings(max_examples=80, deadline=None)
def test_round_trip_over_hilbert_basis(net, data):
    hb = compute_minimal_semiflows(net)
    if not len(hb):
        return
    ks = data.draw(st.lists(st.integers(0, 3), min_size=len(hb), max_size=len(hb)))
    if not any(ks):
        ks[0] = 1
    f = tuple(sum(k * v[i] for k, v in zip(ks, hb.vectors())) for i in range(len(net.places)))
    order = data.draw(st.permutations(range(len(hb))))
    d = decompose(f, hb.reordered(order), Semiring.N)
    assert isinstance(d, Decomposition)
    recon = [sum(c * v[i] for c, v in zip(d.coefficients, d.generators.vectors())) for i in range(len(f))]
    assert tuple(recon) == f
    assert all(isinstance(c, int) and c >= 0 for c in d.coefficients)


def test_fixture_decompositions_over_hilbert_basis(fixture_net):
    net, _ = fixture_net
    hb = compute_minimal_semiflows(net)
    total = tuple(sum(col) for col in zip(*hb.vectors()))
    d = decompose(total, hb, Semiring.N)
    assert d and all(c == 1 for c in d.coefficients)

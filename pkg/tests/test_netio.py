import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import marked_nets
from petriflow import Net, ParseError, compute_fundamental_set, emit_net, fixtures, incidence, parse_net, place_bounds
from petriflow.netio import parse_vector
from petriflow.report import bounds_section, emit_report, new_report, rational, semiflow_records


def test_parse_tiny():
    net, q0 = parse_net(fixtures.source("tiny"))
    assert net.places == ("A", "B") and net.transitions == ("t1", "t2")
    assert q0 == (3, 0)
    c = incidence(net)
    assert [r[0] for r in c] == [-2, 1] and [r[1] for r in c] == [2, -1]


def test_empty_transition_block():
    net, q0 = parse_net("place a init 1\ntrans idle\n")
    assert net.pre == ((0,),) and net.post == ((0,),)


def test_crlf_and_comments():
    net, q0 = parse_net("net x\r\nplace a init 2  # two\r\n# whole line\r\ntrans t\r\n  in a:2\r\n")
    assert net.name == "x" and q0 == (2,) and net.pre == ((2,),)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("place A init -1\n", 1, "non-negative"),
        ("place A\nplace A\n", 2, "duplicate"),
        ("place A\ntrans A\n", 2, "duplicate"),
        ("place A\ntrans t\n  in B:1\n", 3, "unknown place"),
        ("place A\ntrans t\n  in A:2-3\n", 3, "non-negative"),
        ("place A\n  in A:1\n", 2, "outside"),
        ("place A\nfoo bar\n", 2, "unexpected keyword"),
        ("place A init 1 2\n", 1, "expected"),
        ("place A init x\n", 1, "unknown parameter"),
        ("place A init 2**3\n", 1, "unsupported"),
        ("place A init (\n", 1, "malformed"),
        ("net a\nnet b\n", 2, "header"),
        ("place in\n", 1, "invalid identifier"),
    ],
)
def test_parse_errors_carry_line(text, line, fragment):
    with pytest.raises(ParseError) as exc:
        parse_net(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)
    assert str(exc.value).startswith(f"line {line}:")


def test_parameters_and_overrides():
    net, q0 = parse_net(fixtures.source("tinyk"), {"k": 3, "a0": 5})
    assert net.pre[0][0] == 3 and net.post[0][1] == 4 and q0 == (5, 0)
    with pytest.raises(ParseError):
        parse_net(fixtures.source("tinyk"), {"nope": 1})
    with pytest.raises(ParseError):
        parse_net(fixtures.source("tinyk"), {"k": -1})


def test_tinyk_two_is_arc_identical_to_tiny():
    tiny, q_tiny = fixtures.tiny()
    tk, q_tk = fixtures.tinyk(2)
    assert (tiny.places, tiny.transitions, tiny.pre, tiny.post) == (tk.places, tk.transitions, tk.pre, tk.post)
    assert q_tiny == q_tk


def test_parse_vector():
    names = ("A", "B", "C")
    assert parse_vector("A=1,C=2", names) == (1, 0, 2)
    assert parse_vector("1,2,3", names) == (1, 2, 3)
    assert parse_vector("", names) == (0, 0, 0)
    for bad in ("A=1,2,3", "D=1", "1,2", "A=x"):
        with pytest.raises(ParseError):
            parse_vector(bad, names)


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_fixture_round_trip(name):
    net, q0 = fixtures.load(name)
    net2, q2 = parse_net(emit_net(net, q0))
    assert net2 == net and q2 == q0


@given(marked_nets())
@settings(max_examples=100, deadline=None)
def test_random_round_trip(case):
    net, q0 = case
    assert parse_net(emit_net(net, q0)) == (net, q0)


def test_report_rationals_never_float():
    assert rational(3) == 3
    assert rational(Fraction(5, 2)) == {"num": 5, "den": 2}
    assert rational(float("inf")) == "inf"
    net, _ = fixtures.tiny()
    doc = new_report()
    doc["bounds"] = bounds_section(net, place_bounds(net, (5, 0)))
    text = emit_report(doc)
    assert json.loads(text)["bounds"]["mu"]["B"] == {"num": 5, "den": 2}
    assert "." not in text.replace('"', "")


def test_report_sections_and_determinism():
    net, q0 = fixtures.mutex()
    doc = new_report()
    doc["semiflows"] = semiflow_records(compute_fundamental_set(net))
    text = emit_report(doc)
    data = json.loads(text)
    assert set(data) == {"net", "semiflows", "minimal_supports", "bounds", "reachability", "certificates"}
    got = sorted(sorted(r["weights"].items()) for r in data["semiflows"])
    assert got == sorted([[("A", 1), ("B", 1)], [("D", 1), ("E", 1)], [("B", 1), ("E", 1), ("S", 1)]])
    for r in data["semiflows"]:
        assert set(r) >= {"weights", "canonical", "minimal", "support", "kind"}
    assert list(json.loads(text, object_pairs_hook=lambda kv: [k for k, _ in kv])) == sorted(data)
    assert emit_report(doc) == text


def test_report_empty_generating_set():
    net = Net.from_arcs(["p"], {"t": ({"p": 1}, {"p": 2})})
    doc = new_report()
    doc["semiflows"] = semiflow_records(compute_fundamental_set(net))
    assert '"semiflows": []' in emit_report(doc)

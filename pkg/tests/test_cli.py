import json
import subprocess
import sys
from importlib import resources

import pytest

from petriflow.cli import build_parser, run

FIXDIR = resources.files("petriflow") / "fixtures"


def path(name):
    return str(FIXDIR / f"{name}.net")


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip().startswith("{") else out), err


def test_check_live_tiny_three(capsys):
    code, doc, _ = invoke(capsys, "check", "--live", path("tiny"), "--init", "A=3,B=0")
    assert code == 0
    assert doc["verdicts"] == {"live": True}
    assert doc["reachability"]["live_transitions"] == ["t1", "t2"]


def test_check_live_tiny_two_reports_sink(capsys):
    code, doc, _ = invoke(capsys, "check", "--live", path("tiny"), "--init", "A=2,B=0")
    assert code == 1
    rg = doc["reachability"]
    sinks = [rg["states"][i] for i in rg["deadlocks"]]
    assert sinks == [{"A": 0, "B": 1}]
    assert set(rg["non_live_witnesses"]) == {"t1", "t2"}


def test_semiflows_telecom(capsys):
    code, doc, _ = invoke(capsys, "semiflows", "--semiring", "Qplus", path("telecom"))
    assert code == 0
    assert len(doc["semiflows"]) == 3
    assert all(r["kind"] == "fundamental" and r["canonical"] and r["minimal"] for r in doc["semiflows"])


@pytest.mark.parametrize("semiring, kind", [("N", "hilbert_basis"), ("Qplus", "fundamental"), ("Q", "q_basis")])
def test_semiflows_semiring_selects_kind(capsys, semiring, kind):
    code, doc, _ = invoke(capsys, "semiflows", "--semiring", semiring, "@mutex")
    assert code == 0 and {r["kind"] for r in doc["semiflows"]} == {kind}


def test_bounds(capsys):
    code, doc, _ = invoke(capsys, "bounds", "@tiny", "--init", "A=5")
    assert code == 0
    assert doc["bounds"]["mu"] == {"A": 5, "B": {"num": 5, "den": 2}}
    assert doc["bounds"]["sperner_bound"] == 2


def test_rg_and_truncation(capsys, tmp_path):
    code, doc, _ = invoke(capsys, "rg", "@mutex")
    assert code == 0 and len(doc["reachability"]["states"]) == 3
    src = tmp_path / "grow.net"
    src.write_text("place p\ntrans t\n  out p:1\n")
    code, doc, _ = invoke(capsys, "rg", str(src), "--max-states", "10")
    assert code == 3 and doc["reachability"]["truncated"]
    code, doc, _ = invoke(capsys, "check", "--live", str(src), "--max-states", "10")
    assert code == 3 and doc["verdicts"]["live"] is None
    code, doc, _ = invoke(capsys, "check", "--safe", str(src), "--max-states", "10")
    assert code == 1


def test_check_all_properties_telecom(capsys):
    code, doc, _ = invoke(capsys, "check", "@telecom")
    assert code == 0
    assert doc["verdicts"] == {"safe": True, "live": True, "home_state": True, "deadlock_free": True}


def test_decompose_order(capsys, tmp_path):
    gen = tmp_path / "stc3.json"
    gen.write_text(json.dumps({"generators": {
        "f1": [3, 3, 2, 0, 1], "f2": [4, 4, 1, 0, 2], "g1": [2, 2, 3, 0, 0], "g2": [1, 1, 0, 1, 0], "g3": [5, 5, 0, 0, 3],
    }}))
    code, doc, _ = invoke(capsys, "decompose", "--generators", str(gen), "--target", "9,9,6,0,3")
    assert code == 0 and doc["decomposition"]["coefficients"] == {"f1": 3, "f2": 0, "g1": 0, "g2": 0, "g3": 0}
    code, doc, _ = invoke(capsys, "decompose", "--generators", str(gen), "--target", "9,9,6,0,3",
                          "--order", "g1,g2,g3,f1,f2")
    assert doc["decomposition"]["coefficients"] == {"g1": 2, "g2": 0, "g3": 1, "f1": 0, "f2": 0}
    code, doc, _ = invoke(capsys, "decompose", "--generators", str(gen), "--target", "3,3,2,0,1",
                          "--order", "g1,g2,g3")
    assert code == 1 and doc["decomposition"]["feasible"] is False
    code, doc, _ = invoke(capsys, "decompose", "--generators", str(gen), "--target", "3,3,2,0,1",
                          "--order", "g1,g2,g3", "--semiring", "Qplus")
    assert code == 0
    assert doc["decomposition"]["coefficients"] == {"g1": {"num": 2, "den": 3}, "g2": 0, "g3": {"num": 1, "den": 3}}


def test_decompose_on_net(capsys):
    code, doc, _ = invoke(capsys, "decompose", "@mutex", "--target", "A=1,B=2,D=1,E=2,S=1")
    assert code == 0 and doc["decomposition"]["feasible"]
    code, _, err = invoke(capsys, "decompose", "@mutex", "--target", "A=1")
    assert code == 2 and "not a semiflow" in err


def test_unreachable(capsys):
    code, doc, _ = invoke(capsys, "unreachable", "@mutex", "--marking", "B=1,E=1")
    assert code == 0
    cert = doc["certificates"][0]
    assert cert["weights"] == {"B": 1, "E": 1, "S": 1}
    assert (cert["value_at_marking"], cert["value_at_initial"]) == (2, 1)
    code, doc, _ = invoke(capsys, "unreachable", "@mutex", "--marking", "A=1,D=1,S=1")
    assert code == 1 and doc["certificates"][0]["unreachable"] is False


def test_sweep(capsys):
    code, doc, _ = invoke(capsys, "sweep", "--template", "tinyk", "--grid", "k=3,a0=0..6,b0=0..2")
    assert code == 0 and doc["sweep"]["points"] == 21 == doc["sweep"]["agreeing"]
    code, _, err = invoke(capsys, "sweep", "--template", "tinyk", "--grid", "k=3")
    assert code == 2 and "missing" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "missing-file.net"],
        ["check", "@nope"],
        ["check", "@tiny", "--init", "Z=1"],
        ["check", "@tiny", "--init", "A=-1"],
        ["check", "@tinyk", "--param", "k"],
        ["check", "@tinyk", "--param", "q=1"],
        ["unreachable", "@tiny", "--marking", "A=x"],
        ["semiflows", "@tiny", "--semiring", "Z"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    assert run(argv) == 2
    out, err = capsys.readouterr()
    assert out == ""
    assert err


def test_parse_error_reports_line(capsys, tmp_path):
    src = tmp_path / "bad.net"
    src.write_text("place A\nplace A init -1\n")
    assert run(["semiflows", str(src)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_help_on_every_subcommand(capsys):
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    for name, sp in sub.choices.items():
        assert run([name, "--help"]) == 0
        text = capsys.readouterr().out
        for action in sp._actions:
            for opt in action.option_strings:
                assert opt in text
    assert run(["--help"]) == 0


def test_output_is_bit_identical(capsys):
    outs = []
    for _ in range(2):
        run(["check", "@telecom"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "petriflow", "check", "--live", path("tiny"), "--init", "A=2,B=0"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["verdicts"]["live"] is False

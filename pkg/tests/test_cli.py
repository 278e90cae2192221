import json

import pytest

from diagrams import HOPF_POSITIVE_PD
from interiorpoly import cli
from interiorpoly.poly import IntPoly, parse_laurent, parse_univariate
from interiorpoly.suites import FIXTURE_5_2, FIXTURE_HOPF, SuiteResult

C4 = "E: a b\nV: p q\nedge: a p\nedge: a q\nedge: b p\nedge: b q\n"
FIVE_TWO = "E: a b\nV: p q\nedge: a p\nedge: a p\nedge: a q\nedge: b p\nedge: b q\nrot: a 0 1 2\nrot: b 3 4\nrot: p 1 0 3\nrot: q 2 4\n"


@pytest.fixture
def run(tmp_path, capsys):
    def go(*argv, files=None):
        paths = {}
        for name, text in (files or {}).items():
            (tmp_path / name).write_text(text)
            paths[name] = str(tmp_path / name)
        code = cli.main([paths.get(a, a) for a in argv])
        out, err = capsys.readouterr()
        return code, out.splitlines(), err

    return go


def records(lines):
    return [json.loads(x) for x in lines if x.startswith("{")]


def test_interior_recursion(run):
    code, out, err = run("interior", "c4", files={"c4": C4})
    assert code == 0 and out[0] == "1 + x" and err == ""
    rec = records(out)[0]
    assert parse_univariate(rec["polynomial"]) == IntPoly([1, 1])
    assert rec["coefficients"] == [1, 1] and len(rec["input_digest"]) == 16


def test_interior_signed(run):
    code, out, _ = run("interior", "k2", "--signed", files={"k2": "E: a\nV: p\nedge: a p -\n"})
    assert code == 0 and out[0] == "x"
    code, out, _ = run("interior", "k2", files={"k2": "E: a\nV: p\nedge: a p -\n"})
    assert out[0] == "1"


@pytest.mark.parametrize("signed", [False, True])
def test_interior_both_agree(run, signed):
    flags = ("--signed",) if signed else ()
    code, out, _ = run("interior", "c4", "--pipeline", "both", *flags, files={"c4": C4})
    assert code == 0 and out[0] == "1 + x"


def test_interior_output_is_deterministic(run):
    a = run("interior", "c4", files={"c4": C4})[1]
    b = run("interior", "c4", files={"c4": C4})[1]
    strip = lambda lines: [{k: v for k, v in r.items() if k != "seconds"} for r in records(lines)]
    assert strip(a) == strip(b)


def test_parse_error_exit(run):
    code, out, err = run("interior", "bad", files={"bad": "E: a\nedge: a q\n"})
    assert code == 2 and out == [] and err.startswith("error:")
    code, out, _ = run("interior", "missing-file")
    assert code == 2 and out == []
    code, out, _ = run("homfly", "--pd", "bad", files={"bad": "X[1,2]\n"})
    assert code == 2 and out == []


def test_disagreement_exit(run, monkeypatch):
    monkeypatch.setattr(cli, "interior_polynomial_via_ehrhart", lambda g: IntPoly([1, 2]))
    code, out, err = run("interior", "c4", "--pipeline", "both", files={"c4": C4})
    assert code == 3 and out == [] and "disagree" in err


def test_size_caps(run):
    many = "E: a\nV: p\n" + "edge: a p -\n" * 21
    code, out, _ = run("interior", "g", "--signed", files={"g": many})
    assert code == 4 and out == []
    path = "E: " + " ".join(f"e{i}" for i in range(9)) + "\nV: " + " ".join(f"v{i}" for i in range(9)) + "\n"
    path += "".join(f"edge: e{i} v{i}\n" for i in range(9))
    code, out, _ = run("interior", "g", "--pipeline", "ehrhart", files={"g": path})
    assert code == 4 and out == []
    code, out, _ = run("verify", "mirror", "--max-edges", "9")
    assert code == 4 and out == []
    thirteen = "E: a\nV: p\n" + "edge: a p\n" * 13
    code, out, _ = run("homfly", "--graph", "g", files={"g": thirteen})
    assert code == 4 and out == []


def test_homfly_hopf(run):
    code, out, _ = run("homfly", "--pd", "hopf", files={"hopf": HOPF_POSITIVE_PD})
    assert code == 0
    assert out[0] == "v*z + (v - v^3)*z^-1"
    assert "crossings: 2" in out[1] and "seifert circles: 2" in out[1] and "writhe: 2" in out[1]
    rec = records(out)[0]
    assert parse_laurent(rec["homfly"]) == FIXTURE_HOPF


def test_homfly_unknot_and_graph(run):
    code, out, _ = run("homfly", "--pd", "u", files={"u": ""})
    assert code == 0 and out[0] == "1"
    code, out, _ = run("homfly", "--graph", "g", files={"g": FIVE_TWO})
    assert code == 0 and parse_laurent(records(out)[0]["homfly"]) == FIXTURE_5_2
    assert "seifert circles: 4" in out[1]


def test_verify_mirror(run):
    code, out, _ = run("verify", "mirror", "--max-edges", "6")
    assert code == 0 and out[0].startswith("mirror: pass")
    header, check = records(out)
    assert header["record"] == "run" and header["params"]["max_edges"] == 6
    assert check["record"] == "check" and check["status"] == "pass"


def test_verify_hull(run):
    code, out, _ = run("verify", "hull")
    assert code == 0 and out[0].startswith("hull: pass")


def test_verify_failure_carries_witness(run, monkeypatch):
    bad = SuiteResult("mirror", 3, [("mirror", "E: a\nV: p\nedge: a p -\n")], 0.0)
    monkeypatch.setattr(cli, "run_suite", lambda name, max_edges, seed: bad)
    code, out, _ = run("verify", "mirror")
    assert code == 1 and "FAIL" in out[0]
    check = records(out)[1]
    assert check["status"] == "fail" and check["failures"][0]["witness"]

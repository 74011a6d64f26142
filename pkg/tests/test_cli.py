import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import numpy as np
import pytest

from cxradix import Base, DigitSet, GaussianRational, parse_gaussian
from cxradix.cli import main
from cxradix.radix import evaluate, parse_expansion
from cxradix.render import RenderConfig, histogram, read_pgm

DOCS = Path(__file__).parent.parent / "docs"


def schema(name):
    return json.loads((DOCS / name).read_text())


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_expand():
    assert run("expand", "--n", "3", "--value", "-1") == (0, "1,6,9;\ncheck: evaluates to -1\n")
    assert run("expand", "--n", "3", "--value", "0")[1].splitlines()[0] == "0;"
    code, text = run("expand", "--n", "2", "--value", "i")
    e = parse_expansion(text.splitlines()[0], Base(2))
    assert code == 0 and evaluate(e) == parse_gaussian("i")


def test_expand_json():
    code, text = run("expand", "--n", "4", "--value", "7-3i", "--format", "json")
    doc = json.loads(text)
    jsonschema.validate(doc, schema("expansions.schema.json"))
    assert evaluate(parse_expansion(doc["expansions"][0], Base(4))) == GaussianRational.of(7, -3)


@pytest.mark.parametrize("argv", [["--value", "1/2"], ["--value", "x"], ["--value", "1", "--n", "1"]])
def test_expand_errors(argv, capsys):
    base = ["expand"] + (["--n", "3"] if "--n" not in argv else [])
    code, _ = run(*(base + argv))
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_equivalents():
    code, text = run("equivalents", "--n", "3", "--value", "(-23-10i)/17")
    lines = text.splitlines()
    assert code == 0
    assert [ln.split()[0] for ln in lines[:3]] == ["0;[4,0,9]", "1;[9,4,0]", "1,5,5;[0,9,4]"]
    assert all(ln.endswith("ok") for ln in lines[:3])
    assert all(ln.endswith("by -1") or ln.endswith("by +1") for ln in lines[3:])
    code, text = run("equivalents", "--n", "3", "--value", "0")
    assert text.splitlines() == ["0;  = 0  ok"]


def test_equivalents_json():
    code, text = run("equivalents", "--n", "3", "--value", "(-108+24i)/17", "--format", "json")
    doc = json.loads(text)
    jsonschema.validate(doc, schema("expansions.schema.json"))
    assert doc["expansions"] == ["2,1;[4,0,9]", "2,2;[9,4,0]", "1,7,6;[0,9,4]"]
    assert len(doc["divergences"]) == 3


def test_state_graph(tmp_path, capsys):
    code, text = run("state-graph", "--n", "3", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    jsonschema.validate(doc, schema("state_graph.schema.json"))
    assert doc["pq_class_count"] == 13 and doc["orbit_count"] == 9
    err = capsys.readouterr().err
    assert "nodes: 31" in err and "orbits: 9" in err and "drawn_classes: 13" in err

    out = tmp_path / "g5.dot"
    code, text = run("state-graph", "--n", "5", "--format", "dot", "--out", str(out))
    assert code == 0 and "drawn_classes: 13" in text
    assert out.read_text().startswith('digraph "states_n5" {')

    code, text = run("state-graph", "--n", "2", "--format", "json")
    assert json.loads(text)["pq_class_count"] == 26
    assert run("state-graph", "--n", "1")[0] == 2


def test_dimension():
    code, text = run("dimension", "--n", "3", "--digits", "0,5")
    doc = json.loads(text)
    jsonschema.validate(doc, schema("dimension_report.schema.json"))
    assert round(doc["exact"]["value"], 6) == 0.60206
    assert json.loads(run("dimension", "--n", "3", "--digits", "0")[1])["exact"]["value"] == 0
    code, text = run("dimension", "--n", "3", "--digits", "0,5", "--forbid", "5|5", "--max-depth", "60")
    doc = json.loads(text)
    jsonschema.validate(doc, schema("dimension_report.schema.json"))
    assert doc["kind"] == "subshift" and abs(doc["fekete_dimension_bound"] - 0.41798) < 5e-3
    assert doc["rows"][59]["count"] == "4052739537881"
    assert run("dimension", "--n", "3", "--digits", "0,10")[0] == 2
    assert run("dimension", "--n", "3", "--digits", "0,5", "--forbid", "5|x")[0] == 2


def test_render(tmp_path):
    out = tmp_path / "c.pgm"
    code, _ = run("render", "--n", "3", "--digits", "0,5", "--depth", "10", "--out", str(out))
    assert code == 0
    img = read_pgm(out.read_bytes())
    hist = histogram(DigitSet(Base(3), [0, 5]), RenderConfig(depth=10))
    assert np.array_equal(img > 0, hist > 0)

    small = tmp_path / "s.pgm"
    argv = ["render", "--n", "3", "--digits", "0,5", "--depth", "4", "--out", str(small),
            "--width", "16", "--height", "16", "--window=-3/2,-2,5/2,2"]
    assert run(*argv)[0] == 0
    first = small.read_bytes()
    assert run(*argv)[0] == 0 and small.read_bytes() == first
    assert run("render", "--n", "3", "--digits", "0,5", "--out", str(tmp_path / "no" / "x.pgm"))[0] == 3
    assert run("render", "--n", "3", "--digits", "0,5", "--out", str(out), "--width", "8")[0] == 2
    assert run("render", "--n", "3", "--digits", "0,5", "--out", str(out), "--window", "1,2")[0] == 2


def test_usage_errors():
    assert run()[0] == 2
    assert run("bogus")[0] == 2
    assert run("expand", "--value", "1")[0] == 2


def test_invariant_exit_code(monkeypatch):
    from cxradix import cli
    from cxradix.errors import InvariantViolation

    def broken(*a, **k):
        raise InvariantViolation("too many expansions")

    monkeypatch.setattr(cli, "enumerate_expansions", broken)
    assert run("equivalents", "--n", "3", "--value", "0")[0] == 4


def test_console_script_deterministic(tmp_path):
    cmd = [sys.executable, "-m", "cxradix.cli", "equivalents", "--n", "3", "--value", "(-23-10i)/17"]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout and a.stdout.startswith(b"0;[4,0,9]")

import json
import subprocess
import sys

import pytest

from carterlab.cli import main, parse_group_spec, run
from carterlab.errors import ParseError, UnknownCommand


def call(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_parse_named_and_perm():
    G, _ = parse_group_spec("Sym(5)").build()
    assert G.order() == 120
    G, _ = parse_group_spec("perm deg=4 gens=(0 1),(0 1 2 3)").build()
    assert G.order() == 24
    G, labels = parse_group_spec("PSL(2,27):phi^1").build()
    assert G.order() == 29484 and "phi" in labels


def test_parse_matrix_block():
    text = "matrix q=3 n=2\n1 1\n0 1\n\n0 2\n1 0\n"
    G, _ = parse_group_spec(text).build()
    assert G.order() == 24
    G, _ = parse_group_spec("matrix q=3 n=2 projective\n1 1\n0 1\n;\n0 2\n1 0").build()
    assert G.order() == 12


@pytest.mark.parametrize("text,line,col", [
    ("Foo(3)", 1, 1),
    ("perm deg=4 gens=(0 1),(0 x)", 1, 23),
    ("perm deg=4 gens=(0 1),(0 1", 1, 27),
    ("matrix q=3 n=2\n1 1\n0 5\n", 3, 1),
    ("matrix q=3 n=2\n1 1 1\n", 2, 1),
    ("  \n", 1, 1),
])
def test_parse_errors_carry_location(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_group_spec(text)
    assert (exc.value.line, exc.value.column) == (line, col)


def test_named_constructors_case_sensitive():
    with pytest.raises(ParseError):
        parse_group_spec("sym(5)")


def test_run_examples():
    out, code = run("carter", "Alt(5)", {"method": "auto"})
    assert code == 0 and out["exists"] is False and out["path"] == "criterion"
    out, _ = run("esyl2", "PSL(2,7)")
    assert out == {"esyl2": True}
    out, _ = run("weyl", None, {"type": "E6", "e6_order3_check": True})
    assert out["pass"] is True
    with pytest.raises(UnknownCommand):
        run("frobnicate", "Sym(3)")


def test_main_outputs_and_exit_codes(capsys):
    code, doc = call(["carter", "Sym(5)"], capsys)
    assert code == 0 and doc["orders"] == [8] and doc["command"] == "carter"
    assert doc["input"] == "Sym(5)" and len(doc["input_digest"]) == 16
    code, doc = call(["order", "Foo(2)"], capsys)
    assert code == 1 and doc["error"]["code"] == "parse_error" and doc["error"]["line"] == 1
    code, doc = call(["bogus"], capsys)
    assert code == 1 and doc["error"]["code"] == "unknown_command"
    code, doc = call(["catalog", "--crosscheck", "A1(7)"], capsys)
    assert code == 0 and doc["verdict"] == "agree"
    code, doc = call(["sylow", "-p", "3", "SL(2,3)"], capsys)
    assert doc["sylow"]["order"] == 3


def test_crosscheck_disagreement_exit_code(tmp_path, monkeypatch, capsys):
    # a catalog that wrongly claims Alt(5) has a Carter subgroup
    bad = {"version": 0, "rows": [{"id": "wrong", "table": "t", "socle": {"family": "Alt"},
                                    "condition": "none", "exists": True, "structure": "K",
                                    "order_rule": None}]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    monkeypatch.setenv("CARTER_CATALOG", str(p))
    code, doc = call(["catalog", "--crosscheck", "Alt(5)"], capsys)
    assert code == 2 and doc["verdict"] == "disagree"


def test_spec_file(tmp_path, capsys):
    f = tmp_path / "g.txt"
    f.write_text("perm deg=5 gens=(0 1 2 3 4),(0 1)", encoding="utf-8")
    code, doc = call(["order", "--spec-file", str(f)], capsys)
    assert code == 0 and doc["order"] == 120


def test_determinism():
    cmd = [sys.executable, "-m", "carterlab.cli", "carter", "PSL(2,7)"]
    docs = []
    for _ in range(2):
        out = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
        d = json.loads(out)
        d.pop("timing_s")
        docs.append(json.dumps(d, sort_keys=True))
    assert docs[0] == docs[1]


def test_progress_goes_to_stderr():
    cmd = [sys.executable, "-m", "carterlab.cli", "--progress", "carter", "Alt(5)"]
    res = subprocess.run(cmd, capture_output=True, text=True, check=True)
    assert res.stderr.strip()
    json.loads(res.stdout)


def test_other_commands(capsys):
    assert call(["chief-series", "Sym(4)"], capsys)[1]["term_orders"] == [24, 12, 4, 1]
    assert call(["nilpotent", "Dihedral(4)"], capsys)[1]["nilpotent"] is True
    assert call(["conj-power", "-x", "(0 1 2 3 4)", "Alt(5)"], capsys)[1]["power_witness"] == 4
    assert call(["weyl", "--type", "G2"], capsys)[1]["order"] == 12
    assert call(["weyl", "--type", "A2", "--w0"], capsys)[1]["minus_one"] is False
    assert call(["subsystems", "--type", "B2", "--oracle"], capsys)[1]["full_rank_in_bds"] is True
    assert call(["chevalley", "--type", "A2", "-q", "3"], capsys)[1]["commutator_failures"] == 0
    hs = call(["chevalley", "--type", "A1", "-q", "5", "--hartley-shute", "1", "2"], capsys)[1]
    assert hs["achieved"] == 4 and hs["exact"] is False
    assert call(["catalog", "--query", "Alt(7)"], capsys)[1]["exists"] is True
    assert call(["criterion-e", "Sym(5)"], capsys)[1]["satisfies_E"] is True

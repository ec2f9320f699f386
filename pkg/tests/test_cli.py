import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from cofcat import cli

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
SUSP = str(FIXTURES / "suspension.json")
CIRCLE = str(FIXTURES / "circle.json")
ISO = str(FIXTURES / "isopair.json")


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_homology_of_circle():
    assert run("homology", "-i", CIRCLE, "S1") == (0, "deg 0: 1, deg 1: 1\n")
    assert run("homology", "-i", CIRCLE, "S1cell") == (0, "deg 0: 1, deg 1: 1\n")


def test_is_direct_on_iso_pair():
    assert run("-i", ISO, "is-direct") == (0, "not direct (cycle: 0→1→0)\n")
    code, text = run("is-direct", "-i", SUSP, "span")
    assert code == 0 and text == "direct (degrees: 0 1 1)\n"


def test_hocolim_oracle_check_on_suspension():
    code, text = run("hocolim", "-i", SUSP, "suspension", "--oracle-check")
    assert code == 0
    assert "betti: deg 0: 1, deg 1: 0, deg 2: 1" in text
    assert "oracle-agreement: true" in text
    code, text = run("hocolim", "-i", SUSP, "suspension", "--functor", "to_point", "--oracle-check", "--json")
    data = json.loads(text)
    assert code == 0 and data["oracle_agreement"] is True
    assert data["objects"][0]["betti"] == [[0, 1], [2, 1]]


def test_hocolim_reports_oracle_disagreement(monkeypatch, capsys):
    from cofcat.chq import BettiProfile
    monkeypatch.setattr(cli, "bar_hocolim_betti", lambda x: BettiProfile.from_mapping({0: 1}))
    code, text = run("hocolim", "-i", SUSP, "suspension", "--oracle-check")
    assert code == cli.EXIT_ORACLE
    assert "hocolim: deg 0: 1, deg 1: 0, deg 2: 1" in text
    assert "oracle:  deg 0: 1" in text


def test_oracle_hocolim_mirrors_hocolim():
    code, text = run("oracle-hocolim", "-i", SUSP, "suspension")
    assert code == 0 and text == "betti: deg 0: 1, deg 1: 0, deg 2: 1\n"


def test_reedy_commands():
    code, text = run("reedy-check", "-i", SUSP, "suspension")
    assert code == 0 and text.startswith("not Reedy cofibrant (witness: object l")
    code, text = run("reedy-replace", "-i", SUSP, "suspension")
    assert code == 0 and "object l: dims 0:2 1:2 2:1" in text and "pointwise quasi-iso: true" in text
    code, text = run("latching", "-i", SUSP, "suspension", "l")
    assert code == 0 and "latching map monic: false" in text


def test_reedy_replace_output_round_trips(tmp_path):
    out = tmp_path / "replaced.json"
    code, _ = run("reedy-replace", "-i", SUSP, "suspension", "-o", str(out), "--name", "R")
    assert code == 0
    code, text = run("colim", "-i", str(out), "R")
    assert code == 0 and "homology: deg 0: 1, deg 1: 0, deg 2: 1" in text
    code, text = run("reedy-check", "-i", str(out), "R")
    assert text == "Reedy cofibrant\n"


def test_colim_precondition_exit_code():
    code, _ = run("colim", "-i", SUSP, "suspension")
    assert code == cli.EXIT_PRECONDITION


def test_factorize_report():
    code, text = run("factorize", "-i", SUSP, "collapse")
    assert code == 0
    assert "f' monic: true" in text and "r quasi-iso: true" in text and "r∘f' = f: true" in text


def test_homotopic_and_frac_eq():
    assert run("homotopic", "-i", CIRCLE, "plus", "minus") == (0, "not homotopic\n")
    assert run("homotopic", "-i", CIRCLE, "plus", "id") == (0, "homotopic\n")
    assert run("frac-eq", "-i", CIRCLE, "half", "id_over_double") == (0, "equal\n")
    assert run("frac-eq", "-i", CIRCLE, "half", "one") == (0, "not equal\n")


def test_cofinal_table_and_cap(monkeypatch):
    code, text = run("cofinal", "-i", SUSP, "to_point")
    assert code == 0 and text.splitlines() == ["object 0: ok (connected)", "right cofinal: true"]
    monkeypatch.setenv("HOCOLIM_MAX_DIM", "2")
    code, text = run("cofinal", "-i", SUSP, "to_point", "--acyclic-up-to", "5", "--json")
    data = json.loads(text)
    assert data["verdict"] is True and data["objects"][0]["betti"] == "betti 1 0"


def test_base_change():
    code, text = run("base-change", "-i", SUSP, "to_point", "0")
    assert code == 0 and "verdict: true" in text


def test_validate_and_exit_codes(tmp_path):
    code, text = run("validate", "-i", SUSP, "-i", CIRCLE)
    assert code == 0 and text.startswith("ok:")
    assert run("validate", "-i", str(tmp_path / "missing.json"))[0] == cli.EXIT_PARSE
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"complexes": {"c": {
        "lo": 0, "hi": 2, "dims": {"0": 1, "1": 1, "2": 1}, "d": {"1": [["1"]], "2": [["1"]]}}}}))
    assert run("validate", "-i", str(bad))[0] == cli.EXIT_VALIDATION
    assert run("homology", "-i", CIRCLE, "nope")[0] == cli.EXIT_PARSE
    assert run("no-such-command")[0] == cli.EXIT_PARSE


def test_selftest_is_deterministic():
    first = run("selftest", "--seed", "7", "--count", "4", "--json")
    second = run("selftest", "--seed", "7", "--count", "4", "--json")
    assert first == second and first[0] == 0
    assert json.loads(first[1])["oracle_agreement"] == 4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cofcat.cli", "homology", "-i", CIRCLE, "S1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "deg 0: 1, deg 1: 1\n"

import io
import json
import sys
from fractions import Fraction

import pytest

import ConcordiaApp as app
from lib import file_manager as fm


def output(capsys):
    return capsys.readouterr().out.splitlines()


def test_eval_degenerate_image(capsys):
    assert app.run(["eval", "--example", "Cprime", "--element", "P"]) == 0
    assert output(capsys) == ["0"]


def test_eval_ord_and_leading(capsys):
    assert app.run(["eval", "--example", "B", "--r", "1/2", "--element", "L", "--ring", "BN", "--ord", "--leading"]) == 0
    lines = output(capsys)
    assert "ord = 1/2" in lines
    assert any(line.startswith("leading sigma(P) = ") for line in lines)


def test_membership(capsys):
    assert app.run(["membership", "--ring", "BN", "--ideal", "L, P", "--element", "1"]) == 0
    assert output(capsys) == ["false"]
    assert app.run(["membership", "--ring", "BN", "--ideal", "L, P", "--element", "L*T1 + P"]) == 0
    assert output(capsys) == ["true"]


def test_invariants_of_trefoil(capsys):
    assert app.run(["invariants", "--knot", "trefoil", "--example", "B", "--r", "1/2"]) == 0
    lines = output(capsys)
    assert "f_r = 1/2" in lines
    assert "knot = trefoil" in lines


def test_invariants_json(capsys):
    assert app.run(["invariants", "--knot", "exampleE", "--example", "B", "--r", "1/4", "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["f"] == "3/4"
    assert body["audit_passed"] is True


def test_usage_errors_exit_two(capsys):
    assert app.run([]) == 2
    assert app.run(["eval", "--example", "A"]) == 2
    assert app.run(["eval", "--example", "Z", "--element", "P"]) == 2


def test_malformed_pairs_exit_two(capsys):
    assert app.run(["eval", "--subst", "T1", "--element", "P"]) == 2
    assert "UsageError" in capsys.readouterr().err
    assert app.run(["eval", "--subst", "T1=1+y", "--weight", "y", "--element", "P"]) == 2
    assert "--weight" in capsys.readouterr().err


def test_bad_degree_cap_does_not_crash(capsys, monkeypatch):
    monkeypatch.setenv("CONCORDIA_GB_MAXDEG", "abc")
    assert app.run(["membership", "--ring", "BN", "--ideal", "L, P", "--element", "P"]) == 0
    captured = capsys.readouterr()
    assert captured.out.splitlines() == ["true"]
    assert "CONCORDIA_GB_MAXDEG" in captured.err


def test_domain_errors_exit_one(capsys):
    assert app.run(["eval", "--example", "B", "--element", "P"]) == 1
    assert "MissingParameter" in capsys.readouterr().err
    assert app.run(["invariants", "--knot", "figure8", "--example", "A"]) == 1
    assert "UnknownKnot" in capsys.readouterr().err
    assert app.run(["eval", "--example", "A", "--element", "T7"]) == 1
    assert "ParseError" in capsys.readouterr().err


def test_catalog_list_and_show(capsys):
    assert app.run(["catalog", "list"]) == 0
    lines = output(capsys)
    assert any(line.startswith("trefoil:") for line in lines)
    assert any(line.startswith("k34_conjectural:") and line.endswith("(conjecture)") for line in lines)
    assert app.run(["catalog", "show", "trefoil"]) == 0
    assert "C^1 rank 2" in output(capsys)
    assert app.run(["catalog", "show"]) == 1


def test_catalog_json_feeds_stdin(capsys, monkeypatch):
    assert app.run(["catalog", "show", "trefoil_left", "--json"]) == 0
    text = capsys.readouterr().out
    monkeypatch.setattr(sys, "stdin", io.StringIO(text))
    assert app.run(["invariants", "--stdin", "--example", "B", "--r", "1/2"]) == 0
    assert "f_r = -1/2" in output(capsys)


def test_knot_file(tmp_path, capsys):
    assert app.run(["catalog", "show", "trefoil", "--json"]) == 0
    path = tmp_path / "trefoil.json"
    path.write_text(capsys.readouterr().out, encoding="utf-8")
    assert app.run(["unknotting-bound", "--file", str(path), "--example", "B", "--r", "1"]) == 0
    lines = output(capsys)
    assert "lambda = 1" in lines
    assert any(line.startswith("unknotting number >= ") for line in lines)


def test_sum(capsys):
    assert app.run(["sum", "--knots", "trefoil,trefoil", "--example", "B", "--r", "1/2"]) == 0
    assert "f_r = 1" in output(capsys)
    assert app.run(["sum", "--knots", "trefoil, trefoil_left", "--example", "B", "--r", "1/2"]) == 0
    assert "f_r = 0" in output(capsys)


def test_g_region_grid(capsys):
    assert app.run(["g-region", "--ring", "BN", "--ideal", "L, P"]) == 0
    lines = output(capsys)
    assert lines[-2] == "d=0 . # #"
    assert lines[-1] == "smoothing closed: true"


def test_unknotting_bound(capsys):
    assert app.run(["unknotting-bound", "--knot", "trefoil_left", "--example", "B", "--r", "1/2", "--max-power", "1"]) == 0
    lines = output(capsys)
    assert "unknotting number >= 1 (reduced-model bound)" in lines
    assert "J^1 annihilates torsion: true" in lines


def test_profile_with_csv(tmp_path, capsys):
    csv_path = tmp_path / "profile.csv"
    assert app.run(["profile", "--knot", "exampleE", "--samples", "1/6,1/4,1/2,3/4,1", "--csv", str(csv_path)]) == 0
    assert "breakpoint r = 1/3" in output(capsys)
    rows = fm.FileManager().read_profile_csv(str(csv_path))
    assert len(rows) == 5
    assert rows[0] == (Fraction(1, 6), Fraction(1, 2))


def test_verify_passes(tmp_path, capsys):
    out = tmp_path / "verify.json"
    assert app.run(["verify", "--out", str(out)]) == 0
    lines = output(capsys)
    assert not any(line.startswith("FAIL") and "[conjecture]" not in line for line in lines)
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["failed"] == 0
    assert document["passed"] == len(document["rows"])


def test_log_dir(tmp_path, capsys):
    log_dir = tmp_path / "logs"
    assert app.run(["--log-dir", str(log_dir), "membership", "--ring", "BN", "--ideal", "L, P", "--element", "P"]) == 0
    index = json.loads((log_dir / "run-log.json").read_text(encoding="utf-8"))
    assert len(index["updated-list"]) == 1
    log_file = json.loads((log_dir / index["updated-list"][0]).read_text(encoding="utf-8"))
    assert log_file["data"][0]["result"]["member"] is True


@pytest.mark.parametrize("text, expected", [
    ("1/8,1/4,1", ["1/8", "1/4", "1"]),
    ("1/4..1", ["1/4", "1/2", "3/4", "1"]),
    ("1/2..1:1/4", ["1/2", "3/4", "1"]),
])
def test_parse_samples(text, expected):
    assert [str(r) for r in app.parse_samples(text)] == expected


def test_stdin_report_matches_catalog_report(capsys, monkeypatch):
    flags = ["--example", "B", "--r", "1/3", "--json"]
    assert app.run(["invariants", "--knot", "trefoil"] + flags) == 0
    direct = capsys.readouterr().out
    assert app.run(["catalog", "show", "trefoil", "--json"]) == 0
    monkeypatch.setattr(sys, "stdin", io.StringIO(capsys.readouterr().out))
    assert app.run(["invariants", "--stdin"] + flags) == 0
    assert capsys.readouterr().out == direct


def test_invariants_compare_power(capsys):
    assert app.run(["invariants", "--knot", "trefoil", "--example", "B", "--r", "1", "--compare-power", "1", "--gmax", "1"]) == 0
    assert "presented znat = J^1: true" in output(capsys)


def test_unknotting_bound_rejects_xi_on_bn(capsys):
    assert app.run(["unknotting-bound", "--knot", "trefoil_left", "--example", "B", "--r", "1/2", "--xi", "P"]) == 1
    assert "RingMismatch" in capsys.readouterr().err


def test_catalog_list_with_knot_folder(tmp_path, capsys):
    assert app.run(["catalog", "show", "trefoil_left", "--json"]) == 0
    (tmp_path / "left.json").write_text(capsys.readouterr().out, encoding="utf-8")
    (tmp_path / "notes.txt").write_text("not a knot", encoding="utf-8")
    assert app.run(["catalog", "list", "--dir", str(tmp_path)]) == 0
    lines = output(capsys)
    assert lines[-1] == "left.json: trefoil_left (file)"
    assert not any(line.startswith("notes.txt") for line in lines)
    assert app.run(["catalog", "list", "--dir", str(tmp_path / "missing")]) == 2

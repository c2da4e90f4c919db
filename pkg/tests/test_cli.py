import json
from pathlib import Path

import pytest

from qbialg.bialgebra import DuplicateEntry, UnknownGenerator
from qbialg.cli import (
    JobSpec, ParseError, UnknownBuiltin, main, parse_bialgebra_file, render_report, run,
)
from qbialg.scalars import ONE

GOLDEN = Path(__file__).parent / "golden"

SU2_DOC = {
    "generators": ["J3", "J+", "J-"],
    "brackets": {"J3,J+": {"J+": "1"}, "J3,J-": {"J-": "-1"}, "J+,J-": {"J3": "1"}},
    "cocommutator": {"J+": {"J+,J3": "1/2"}, "J-": {"J-,J3": "1/2"}},
}


def write(tmp_path, doc, name="g.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8")
    return p


def test_parse_su2_document(tmp_path):
    g = parse_bialgebra_file(write(tmp_path, SU2_DOC))
    assert g.n == 3
    assert g.brackets.coeff(0, 1, 2) == ONE
    assert g.delta("J+") == {("J3", "J+"): -ONE / 2}


def test_parse_errors(tmp_path):
    with pytest.raises(ParseError):
        parse_bialgebra_file(write(tmp_path, {"generators": []}))
    with pytest.raises(UnknownGenerator):
        parse_bialgebra_file(write(tmp_path, {"generators": ["a"], "brackets": {"a,Jx": {"a": "1"}}}))
    with pytest.raises(DuplicateEntry):
        parse_bialgebra_file(write(tmp_path, {"generators": ["a", "b"],
                                              "brackets": {"a,b": {"a": "1"}, "b,a": {"a": "1"}}}))
    with pytest.raises(DuplicateEntry):
        parse_bialgebra_file(write(tmp_path, '{"generators": ["a"], "generators": ["b"]}'))
    with pytest.raises(ParseError) as info:
        parse_bialgebra_file(write(tmp_path, '{"generators": [\n  "a",\n}'))
    assert info.value.line == 3
    with pytest.raises(ParseError) as info:
        parse_bialgebra_file(write(tmp_path, {"generators": ["a", "b"],
                                              "brackets": {"a,b": {"a": "one"}}}))
    assert info.value.path == "brackets.a,b.a"


def test_quantize_report_contains_second_order():
    rep = run(JobSpec("quantize", "su2", K=4, format="json"))
    doc = json.loads(render_report(rep))
    assert doc["schema_version"] == 1
    assert doc["result"]["coproducts"]["J+"]["2"] == "(1/8) z^2 J+ (x) J3^2 + (1/8) z^2 J3^2 (x) J+"
    assert doc["job"]["source"] == {"builtin": "su2"}
    assert doc["engine"]["name"] == "qbialg"


def test_validate_su2_t1_self_dual():
    rep = run(JobSpec("validate", "su2+t1"))
    assert rep.exit_code == 0
    assert rep.body["self_dual"] is True


def test_quantize_order_zero_is_classical():
    rep = run(JobSpec("quantize", "su2", K=0))
    co = rep.body["coproducts"]
    assert co["J+"] == {"0": "1 (x) J+ + J+ (x) 1"}
    assert rep.body["commutators"]["[J+,J-]"] == {"0": "J3"}


def test_unknown_builtin():
    with pytest.raises(UnknownBuiltin):
        run(JobSpec("validate", "sl:3"))


def test_jobspec_invariants():
    with pytest.raises(ValueError):
        JobSpec("quantize", "su2", K=-1)
    with pytest.raises(ValueError):
        JobSpec("quantize", "su2", K=4, D=4)
    with pytest.raises(ValueError):
        JobSpec("frobnicate", "su2")


@pytest.mark.parametrize("fmt", ["text", "json"])
def test_determinism(fmt):
    spec = JobSpec("quantize", "su2", K=3, format=fmt)
    assert render_report(run(spec)) == render_report(run(spec))


def test_golden_text_report():
    rep = run(JobSpec("quantize", "su2", K=2))
    assert render_report(rep) == (GOLDEN / "quantize_su2_K2.txt").read_bytes()


def test_report_schema_keys():
    doc = json.loads(render_report(run(JobSpec("double", "gl:2")), "json"))
    assert set(doc) == {"schema_version", "engine", "job", "status", "exit_code", "result"}
    res = doc["result"]
    for key in ("generators", "brackets", "cocommutator", "pairing", "checks", "self_dual"):
        assert key in res
    with_time = json.loads(render_report(run(JobSpec("double", "gl:2")), "json", include_timing=True))
    assert "timing_seconds" in with_time


# -- end to end: exit codes per command --------------------------------------

@pytest.mark.parametrize("argv", [
    ["validate", "--builtin", "su2"],
    ["validate", "--builtin", "gl:3"],
    ["double", "--builtin", "su2+t1"],
    ["double", "--builtin", "su2"],
    ["quantize", "--builtin", "su2", "--order", "3", "--format", "json"],
    ["primitivize", "--builtin", "su2", "--seed", "4"],
    ["recognize", "--builtin", "su2", "--order", "4"],
])
def test_commands_succeed(argv, capsys):
    assert main(argv) == 0
    assert capsys.readouterr().out


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["quantize", "--builtin", "su2", "--order", "2", "--format", "json",
                 "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["status"] == "ok"


def test_input_file_command(tmp_path, capsys):
    p = write(tmp_path, SU2_DOC)
    assert main(["quantize", "--input", str(p), "--order", "2"]) == 0
    assert "exp((-1/2) z J3) (x) J+" in capsys.readouterr().out


def test_validation_failure_exits_one(tmp_path, capsys):
    bad = dict(SU2_DOC, cocommutator={"J3": {"J+,J-": "1"}})
    p = write(tmp_path, bad)
    assert main(["validate", "--input", str(p)]) == 1
    assert main(["quantize", "--input", str(p)]) == 1
    assert main(["double", "--input", str(p)]) == 1
    out = capsys.readouterr().out
    assert "InvalidInput" in out


@pytest.mark.parametrize("argv", [
    ["validate", "--builtin", "nope"],
    ["validate", "--input", "/nonexistent/file.json"],
    ["quantize", "--builtin", "su2", "--order", "2", "--degree", "2"],
])
def test_input_errors_exit_two(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_bad_flags_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["quantize"])
    assert info.value.code == 2


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "qbialg", "validate", "--builtin", "su2"],
                          capture_output=True)
    assert proc.returncode == 0
    assert b"status: ok" in proc.stdout

import csv
import io
import json

import pytest

from slicecalc.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, main
from slicecalc.reps import GroupPQ, parse
from slicecalc.ring import parse_ring


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_slice_tower_text(capsys):
    code, out, _ = run(capsys, "slice-tower", "-p", "3", "-q", "5", "6", "--format", "text")
    assert code == EXIT_OK
    rows = [line.split("-slice")[0].strip() for line in out.splitlines() if "-slice:" in line]
    assert rows == ["15", "9", "6"]
    assert "Σ^3 HK_q<Z/5>" in out and "S^(6+2xi-xi_p-xi_q)" in out


def test_cohomology_json(capsys, schema):
    code, out, _ = run(capsys, "cohomology", "-p", "3", "-q", "5", "xi", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    schema("cohomology").validate(doc)
    assert doc["functor_name"] == "KpZmodP⊕KqZmodQ" and doc["row"] == 4


def test_ring_mul(capsys):
    code, out, _ = run(capsys, "ring-mul", "-p", "3", "-q", "5", "u_xi * a_xip")
    assert (code, out.strip()) == (EXIT_OK, "3·u_xip·a_xi")


def test_ring_mul_json_and_round_trip(capsys, schema):
    g = GroupPQ()
    code, out, _ = run(capsys, "ring-mul", "(u_xi + a_xiq)^3", "--format", "json")
    doc = json.loads(out)
    schema("ring_mul").validate(doc)
    assert parse_ring(doc["result"], g) == parse_ring("(u_xi + a_xiq)^3", g)


def test_ring_basis(capsys, schema):
    code, out, _ = run(capsys, "ring-basis", "1,1,1,1", "--format", "json")
    doc = json.loads(out)
    schema("ring_basis").validate(doc)
    assert doc["group"] == [15]
    assert sorted(b["order"] for b in doc["basis"]) == [3, 5]


def test_tower_json_round_trip(capsys, schema):
    g = GroupPQ()
    code, out, _ = run(capsys, "slice-tower", "11xi^5", "--format", "json")
    doc = json.loads(out)
    schema("tower").validate(doc)
    sphere = next(c for c in doc["cells"] if c["kind"] == "sphere")
    assert parse(sphere["data"]["beta_str"], g) == tuple(sphere["data"]["beta"])
    assert parse(doc["input_str"], g) == tuple(doc["input"])


def test_negative_payload_after_double_dash(capsys):
    code, out, _ = run(capsys, "slice-tower", "--", "-1")
    assert code == EXIT_OK
    assert "rho" in out


@pytest.mark.parametrize("fmt", ["text", "latex"])
def test_latex_and_text_formats(capsys, fmt):
    for cmd, payload in (("cohomology", "xi_p-xi"), ("ring-basis", "2,1,0,1"),
                         ("ring-mul", "a_xi*u_xiq"), ("slice-tower", "8")):
        code, out, _ = run(capsys, cmd, payload, "--format", fmt)
        assert code == EXIT_OK and out.strip()
        if fmt == "latex" and cmd != "ring-mul":
            assert "\\begin{array}" in out


def test_stdin_payload(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("u_xi*a_xiq\n"))
    code, out, _ = run(capsys, "ring-mul", "-")
    assert out.strip() == "5·u_xiq·a_xi"


@pytest.mark.parametrize("argv", [
    ["cohomology", "xi^0"],
    ["ring-mul", "u_xi **"],
    ["ring-basis", "1,2"],
    ["cohomology", "-p", "4", "xi"],
    ["cohomology", "-p", "5", "-q", "3", "xi"],
    ["verify", "--box", "1,1,1,-1"],
])
def test_input_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT and "error" in err


def test_usage_errors_exit_one(capsys):
    for argv in (["cohomology", "xi", "--format", "yaml"], ["frobnicate"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == EXIT_INPUT


def test_syntax_error_shows_caret(capsys):
    code, _, err = run(capsys, "ring-mul", "u_xi **")
    assert code == EXIT_INPUT
    assert err.splitlines()[-1].strip() == "^"


def test_verify_small(capsys, tmp_path, schema):
    code, out, _ = run(capsys, "verify", "--box", "2,2,2,4", "--towers", "2",
                       "--report", str(tmp_path), "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    schema("verify").validate(doc)
    assert doc["ok"] and doc["phi_sweep"]["degrees"] == 3 * 3 * 3 * 5
    with open(tmp_path / "phi_sweep.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 135 and all(r["match"] == "1" for r in rows)
    for name in ("phi_sweep.png", "towers.png"):
        assert (tmp_path / name).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_verify_exit_code_on_mismatch(capsys, monkeypatch):
    import slicecalc.cli as cli
    from slicecalc.abelian import FinAbGroup

    real = cli.phi_sweep

    def broken(degrees, g):
        report = real(degrees, g)
        row = report.rows[0]
        bad = type(row)(row.degree, row.ring, FinAbGroup((7,)), row.table)
        return type(report)(report.g, (bad,) + report.rows[1:])

    monkeypatch.setattr(cli, "phi_sweep", broken)
    code, out, _ = run(capsys, "verify", "--box", "1,1,1,1", "--towers", "1")
    assert code == EXIT_MISMATCH
    assert "1 mismatch out of" in out


def test_slice_tower_plot_and_csv(capsys, tmp_path):
    png, table = tmp_path / "t.png", tmp_path / "t.csv"
    code, _, _ = run(capsys, "slice-tower", "8", "--plot", str(png), "--csv", str(table))
    assert code == EXIT_OK
    assert png.read_bytes()[:4] == b"\x89PNG"
    with open(table) as fh:
        rows = list(csv.DictReader(fh))
    # 8 has a wedge at 15, so two EM rows share that dimension
    assert [r["dim"] for r in rows] == ["25", "15", "15", "9", "8"]
    assert rows[-1]["kind"] == "sphere" and rows[-1]["beta"] == "8+4xi-2xi_p-2xi_q"

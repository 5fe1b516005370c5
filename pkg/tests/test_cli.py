import json
import subprocess
import sys

from projmono.cli import main
from projmono.corpus import fixture_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, json.loads(out) if out.strip() else None, err


def test_analyze_point(capsys):
    code, out, err = run(capsys, "analyze-point", fixture_path("fermat_quartic.poly"),
                         "--point", "1, 0, 0", "--loops")
    assert code == 0 and out["schema"] == 1 and out["command"] == "analyze-point"
    res = out["result"]
    assert res["verdict"] == "non_uniform" and res["order"] == 4
    assert len(res["sections"][0]["loops"]) == 4
    assert all(l["cycle_type"] == [4] for l in res["sections"][0]["loops"])
    assert "verdict=non_uniform" in err


def test_analyze_surface_reports_cone(capsys):
    code, out, _ = run(capsys, "analyze-point", fixture_path("cone_fermat_quartic.poly"),
                       "--point", "1, 0, 0, 1")
    assert code == 0 and out["result"]["cone"]["is_cone"]
    assert out["result"]["evidence"] == "section-level evidence"


def test_branch_locus(capsys):
    code, out, err = run(capsys, "branch-locus", fixture_path("generic_quartic.poly"),
                         "--point", "1, 2, 3")
    assert code == 0 and len(out["result"]["branch_points"]) == 12
    assert "12 branch points (12 simple)" in err


def test_scan_and_empty_candidates(capsys, tmp_path):
    code, out, _ = run(capsys, "scan", fixture_path("cone_fermat_quartic.poly"),
                       "--candidates", fixture_path("cone_line_points.txt"))
    assert code == 0 and out["result"]["summary"]["n_non_uniform"] == 5
    code, out, _ = run(capsys, "scan", fixture_path("conic.poly"),
                       "--candidates", fixture_path("empty_points.txt"))
    assert code == 0 and out["result"]["reports"] == []


def test_focal(capsys):
    code, out, err = run(capsys, "focal", fixture_path("skew_lines.fam"), "--u", "2, 1/3")
    assert code == 0
    roots = sorted(round(r["re"], 9) for r in out["result"]["roots"])
    assert roots == [0, 1] and out["result"]["degree_drop"] == 0


def test_json_out_and_determinism(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["analyze-point", str(fixture_path("fermat_quintic.poly")), "--point", "2, 1, 3",
                     "--seed", "3", "--json-out", str(p)]) == 0
    capsys.readouterr()
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert json.loads(paths[0].read_text())["config"]["seed"] == 3


def test_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze-point", fixture_path("conic.poly"), "--point", "1, 0, 1")
    assert code == 2 and out["error"]["kind"] == "CenterOnX"
    bad = tmp_path / "bad.poly"
    bad.write_text("x0^2 + * x1\n")
    code, out, _ = run(capsys, "branch-locus", bad, "--point", "1, 0, 0")
    assert code == 2 and out["error"]["kind"] == "ParseError"
    fam = tmp_path / "deg.fam"
    fam.write_text("params 2\np = 1, u1, u2, 0\nq = 1, u1, u2, 0\n")
    code, out, _ = run(capsys, "focal", fam, "--u", "1, 2")
    assert code == 3 and out["error"]["kind"] == "DegenerateChart"
    code, out, _ = run(capsys, "analyze-point", tmp_path / "missing.poly", "--point", "1, 0, 0")
    assert code == 2


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "projmono.cli", "--version"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "projmono" in out.stdout

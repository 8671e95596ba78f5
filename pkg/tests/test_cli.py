import io
import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from fixtures import EIGENVECTOR8_TEXT, THETA8
from support import DATA
from teichpoly.cli import render_geometry, run_cli
from teichpoly.oddblock import parse_matrix_text, validate

M8 = str(DATA / "M8.txt")
F2 = str(DATA / "F2.txt")
G2 = str(DATA / "G2.txt")
BAD = str(DATA / "notoddblock.txt")

REPORT_KEYS = {
    "n",
    "valid",
    "phi",
    "directions",
    "lambda",
    "eigenvector",
    "eigenbasis",
    "alignment",
    "genus",
    "census",
    "teichmuller",
    "methods",
    "methods_agree",
}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_validate():
    code, out, _ = run("validate", M8)
    assert code == 0 and "phi = (7, 5, 8, 3, 6, 1, 4, 0, 2)" in out


def test_validate_rejects_condition_i():
    code, out, err = run("validate", BAD)
    assert code == 2 and out == ""
    assert "column 2" in err


def test_missing_file_is_a_validation_error(tmp_path):
    code, _, err = run("validate", str(tmp_path / "nope.txt"))
    assert code == 2 and "cannot read" in err


def test_analyze_m8():
    code, out, _ = run("analyze", M8)
    assert code == 0
    assert f"eigenvector = {EIGENVECTOR8_TEXT}" in out
    assert "genus = 4" in out
    assert "cone points: 9 x 1pi, 1 x 7pi" in out
    assert "alignment = 1:+1 2:-1 3:+1 4:-1 5:+1 6:-1 7:+1" in out


def test_analyze_json_schema():
    code, out, _ = run("analyze", M8, "--json", "--precision", "12")
    rep = json.loads(out)
    assert code == 0 and set(rep) == REPORT_KEYS
    assert rep["genus"] == 4 and rep["census"]["cone_angles"] == {"1pi": 9, "7pi": 1}
    assert rep["eigenbasis"] == [[1, 0, 0, 0, -1, 0, 1, 0]]
    lo, hi = float(rep["lambda"]["lo"]), float(rep["lambda"]["hi"])
    ref = max(np.linalg.eigvals(np.loadtxt(M8, skiprows=2)).real)
    assert hi - lo < 1e-11 and abs((lo + hi) / 2 - ref) < 1e-11


def test_precision_floor():
    code, _, _ = run("analyze", M8, "--precision", "5")
    assert code == 2


def test_analyze_f2_is_a_hypothesis_failure():
    code, _, err = run("analyze", F2)
    assert code == 3 and "sheared" in err


def test_teich_m8():
    for method in ("steps", "fox", "mcmullen", "all"):
        code, out, _ = run("teich", M8, "--method", method)
        assert code == 0
        assert out.splitlines()[0] == THETA8


def test_teich_json():
    code, out, _ = run("teich", M8, "--json")
    rep = json.loads(out)
    assert code == 0 and set(rep) == REPORT_KEYS
    assert rep["teichmuller"]["string"] == THETA8
    assert rep["teichmuller"]["variables"] == ["u", "t"]
    assert rep["methods"] == ["steps", "fox", "mcmullen"] and rep["methods_agree"] is True


def test_teich_exit_codes():
    assert run("teich", G2)[0] == 3
    assert run("teich", BAD)[0] == 2


def test_teich_inconclusive(tmp_path):
    # equal consecutive widths cannot be separated
    path = tmp_path / "sym.txt"
    path.write_text("4\n0 0 1 1\n1 0 1 1\n1 1 0 1\n1 1 0 0\n")
    code, _, err = run("teich", str(path), "--precision", "8")
    assert code == 4 and "could not be separated" in err


def test_convert_round_trip():
    code, out, _ = run("convert", G2)
    assert code == 0
    assert out.startswith("# refined from G2.txt")
    N = parse_matrix_text(out)
    assert validate(N, allow_singular=True).binary


def test_convert_enumerate():
    code, out, _ = run("convert", G2, "--enumerate")
    assert code == 0 and out.strip() == "0: 1-2-0 | 0-2"
    assert run("convert", G2, "--choose", "3")[0] == 2


def test_render_m8_is_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run("render", M8, "--out", str(a))[0] == 0
    assert run("render", M8, "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    root = ET.fromstring(a.read_text())
    ns = {"s": "http://www.w3.org/2000/svg"}
    points = root.find(".//s:polyline", ns).get("points").split()
    assert len(points) == 9
    # slopes alternate in sign
    ys = [float(p.split(",")[1]) for p in points]
    signs = [ys[k + 1] > ys[k] for k in range(8)]
    assert all(signs[k] != signs[k + 1] for k in range(7))
    assert len(root.findall(".//s:g[@id='rows']/s:rect", ns)) == 8
    assert len(root.findall(".//s:g[@id='columns']/s:rect", ns)) == 8


def test_render_f2_draws_the_graph_only(tmp_path):
    path = tmp_path / "f2.svg"
    code, _, err = run("render", F2, "--out", str(path))
    assert code == 0 and "graph only" in err
    root = ET.fromstring(path.read_text())
    ns = {"s": "http://www.w3.org/2000/svg"}
    assert len(root.find(".//s:polyline", ns).get("points").split()) == 3
    assert root.findall(".//s:rect", ns) == []


def test_render_geometry_pure():
    g = {"n": 1, "graph": {"partition": [0, 1], "polyline": [[0, 0], [1, 1]], "postcritical": []}, "rows": [], "columns": []}
    assert render_geometry(g) == render_geometry(g)
    assert render_geometry(g).startswith('<?xml version="1.0"')


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "teichpoly", "teich", M8], capture_output=True, text=True, check=False
    )
    assert res.returncode == 0 and res.stdout.splitlines()[0] == THETA8


def test_usage_errors():
    assert run()[0] == 2
    assert run("teich", M8, "--method", "bogus")[0] == 2
    with pytest.raises(SystemExit):
        from teichpoly.cli import build_parser

        build_parser().parse_args(["--help"])

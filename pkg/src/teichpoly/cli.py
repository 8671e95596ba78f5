"""Command-line front end.

    teichpoly validate M.txt
    teichpoly analyze M.txt [--precision 30] [--json]
    teichpoly teich M.txt [--method steps|fox|mcmullen|all] [--json]
    teichpoly convert G.txt [--enumerate | --choose K]
    teichpoly render M.txt --out figure.svg

Exit codes: 0 ok, 2 invalid input, 3 hypothesis failure, 4 inconclusive
precision, 5 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

from .errors import HypothesisViolated, TeichError
from .exact import RationalInterval
from .oddblock import (
    OddBlockMatrix,
    PerronData,
    build_pl_model,
    fixed_eigenspace,
    format_matrix,
    perron_data,
    read_matrix,
    validate,
)
from .split import convert, enumerate_realizations
from .surface import (
    alignment_seed,
    assemble_polygon,
    extend_alignment,
    gauss_bonnet_holds,
    geometry_export,
)
from .teich import METHODS, compute_all, polynomial_json, render_polynomial

EXIT_OK = 0
EXIT_INTERNAL = 5


@dataclass(frozen=True)
class RunConfig:
    command: str
    path: Path
    methods: tuple[str, ...] = METHODS
    precision: int = 30
    json: bool = False
    out: Path | None = None
    enumerate: bool = False
    choose: int = 0
    hypotheses: bool = True

    @property
    def width(self) -> Fraction:
        return Fraction(1, 10**self.precision)


def _precision(text: str) -> int:
    k = int(text)
    if k < 8:
        raise argparse.ArgumentTypeError("precision must be at least 8 digits")
    return k


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="teichpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the odd-block conditions")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("analyze", help="endpoint map, Perron data, alignment and census")
    p.add_argument("file")
    p.add_argument("--precision", type=_precision, default=30, help="decimal digits (default 30)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("teich", help="Teichmuller polynomial with cross-checks")
    p.add_argument("file")
    p.add_argument("--method", choices=METHODS + ("all",), default="all")
    p.add_argument("--precision", type=_precision, default=30)
    p.add_argument("--json", action="store_true")
    p.add_argument(
        "--skip-hypotheses",
        action="store_true",
        help="do not certify distinct widths and the alignment before computing",
    )

    p = sub.add_parser("convert", help="refine a general matrix to a {0,1} one")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--enumerate", action="store_true", help="list the realizations")
    g.add_argument("--choose", type=int, default=0, metavar="K", help="use realization K")

    p = sub.add_parser("render", help="SVG of the graph and the two decompositions")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--precision", type=_precision, default=30)
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    methods = METHODS
    if getattr(ns, "method", "all") != "all":
        methods = (ns.method,)
    return RunConfig(
        command=ns.command,
        path=Path(ns.file),
        methods=methods,
        precision=getattr(ns, "precision", 30),
        json=getattr(ns, "json", False),
        out=Path(ns.out) if getattr(ns, "out", None) else None,
        enumerate=getattr(ns, "enumerate", False),
        choose=getattr(ns, "choose", 0),
        hypotheses=not getattr(ns, "skip_hypotheses", False),
    )


# reports


def _interval_json(x: RationalInterval, digits: int) -> dict:
    lo, hi = x.decimal_bounds(digits)
    return {"lo": lo, "hi": hi}


def _sig6(x: RationalInterval) -> str:
    return f"{float(x.mid):.6g}"


def empty_report(A: OddBlockMatrix) -> dict:
    return {
        "n": A.n,
        "valid": True,
        "phi": list(A.phi),
        "directions": list(A.directions) if A.directions else None,
        "lambda": None,
        "eigenvector": None,
        "eigenbasis": [list(x) for x in fixed_eigenspace(A)],
        "alignment": None,
        "genus": None,
        "census": None,
        "teichmuller": None,
        "methods": [],
        "methods_agree": None,
    }


@dataclass(frozen=True)
class Analysis:
    report: dict
    perron: PerronData
    polygon: object | None


def analyze(A: OddBlockMatrix, cfg: RunConfig) -> Analysis:
    rep = empty_report(A)
    pd = perron_data(A, cfg.width)
    digits = cfg.precision + 2
    rep["lambda"] = _interval_json(pd.lam, digits)
    rep["eigenvector"] = [_interval_json(x, digits) for x in pd.v]
    if not A.binary:
        return Analysis(rep, pd, None)
    p = build_pl_model(A)
    alpha = extend_alignment(alignment_seed(p), p)
    rep["alignment"] = {str(i): a for i, a in alpha.as_dict().items()}
    poly = assemble_polygon(p, alpha, pd)
    c = poly.census
    rep["genus"] = c.genus
    rep["census"] = {
        "cone_angles": {f"{k}pi": v for k, v in sorted(c.angle_counts().items())},
        "track_vertices": c.track_vertices,
        "track_edges": c.track_edges,
        "gauss_bonnet": gauss_bonnet_holds(c),
    }
    return Analysis(rep, pd, poly)


def _print_analysis(A: OddBlockMatrix, an: Analysis, out) -> None:
    rep = an.report
    print(f"n = {A.n}", file=out)
    print(f"phi = {tuple(A.phi)}", file=out)
    if A.directions:
        signs = " ".join("+" if d > 0 else "-" for d in A.directions)
        print(f"directions = {signs}", file=out)
    print(f"lambda in {an.perron.lam}", file=out)
    print("eigenvector = " + ", ".join(_sig6(x) for x in an.perron.v), file=out)
    print(f"eigenbasis = {[tuple(x) for x in rep['eigenbasis']]}", file=out)
    if rep["alignment"] is None:
        print("alignment: needs a {0,1} matrix; run convert first", file=out)
        return
    vals = " ".join(f"{i}:{a:+d}" for i, a in rep["alignment"].items())
    print(f"alignment = {vals}", file=out)
    print(f"genus = {rep['genus']}", file=out)
    cones = ", ".join(f"{v} x {k}" for k, v in rep["census"]["cone_angles"].items())
    print(f"cone points: {cones}", file=out)
    gb = "holds" if rep["census"]["gauss_bonnet"] else "FAILS"
    print(f"Gauss-Bonnet: {gb}", file=out)


# commands


def cmd_validate(cfg: RunConfig, out) -> int:
    A = validate(read_matrix(cfg.path))
    if cfg.json:
        rep = empty_report(A)
        rep["binary"] = A.binary
        rep["aperiodic_power"] = A.aperiodic_power
        print(json.dumps(rep, indent=2), file=out)
        return EXIT_OK
    kind = "{0,1}" if A.binary else "general"
    print(f"valid {kind} odd-block matrix, n = {A.n}", file=out)
    print(f"phi = {tuple(A.phi)}", file=out)
    if A.directions:
        print("directions = " + " ".join("+" if d > 0 else "-" for d in A.directions), file=out)
    print(f"M^{A.aperiodic_power} > 0", file=out)
    return EXIT_OK


def cmd_analyze(cfg: RunConfig, out) -> int:
    A = validate(read_matrix(cfg.path))
    an = analyze(A, cfg)
    if cfg.json:
        print(json.dumps(an.report, indent=2), file=out)
    else:
        _print_analysis(A, an, out)
    return EXIT_OK


def cmd_teich(cfg: RunConfig, out) -> int:
    A = validate(read_matrix(cfg.path))
    res = compute_all(A, cfg.methods, cfg.width, hypotheses=cfg.hypotheses)
    if not cfg.json:
        print(render_polynomial(res.poly), file=out)
        print(f"methods: {', '.join(res.methods)} (agree)", file=out)
        return EXIT_OK
    if cfg.hypotheses:
        rep = analyze(A, cfg).report
    else:
        rep = empty_report(A)
    rep["eigenbasis"] = [list(x) for x in res.eigenbasis]
    rep["teichmuller"] = polynomial_json(res.poly)
    rep["methods"] = list(res.methods)
    rep["methods_agree"] = res.agree
    print(json.dumps(rep, indent=2), file=out)
    return EXIT_OK


def _turns(seq) -> str:
    return " | ".join("-".join(str(y) for y in col) for col in seq.columns)


def cmd_convert(cfg: RunConfig, out) -> int:
    A = validate(read_matrix(cfg.path))
    if cfg.enumerate:
        for k, r in enumerate(enumerate_realizations(A)):
            print(f"{k}: {_turns(r)}", file=out)
        return EXIT_OK
    s = convert(A, cfg.choose)
    comments = [
        f"refined from {cfg.path.name} (n = {A.n}), realization {cfg.choose}",
        f"turning heights per column: {_turns(s.realization)}",
        f"phi = {' '.join(str(x) for x in s.N.phi)}",
    ]
    if s.N.singular:
        comments.append("singular: the refinement may add a zero eigenvalue")
    print(format_matrix(s.N.M, comments), end="", file=out)
    return EXIT_OK


def cmd_render(cfg: RunConfig, out, err=None) -> int:
    A = validate(read_matrix(cfg.path))
    if not A.binary:
        raise HypothesisViolated("render needs a {0,1} matrix; run convert first")
    p = build_pl_model(A)
    try:
        an = analyze(A, cfg)
        pd, poly = an.perron, an.polygon
    except HypothesisViolated as exc:
        # the graph of h is still meaningful without the polygon
        print(f"warning: drawing the graph only: {exc}", file=err or sys.stderr)
        pd, poly = perron_data(A, cfg.width, require_distinct=False), None
    g = geometry_export(p, pd, poly)
    cfg.out.write_text(render_geometry(g), encoding="utf-8")
    print(f"wrote {cfg.out}", file=out)
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "analyze": cmd_analyze,
    "teich": cmd_teich,
    "convert": cmd_convert,
    "render": cmd_render,
}


def run_cli(argv: Sequence[str], out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if cfg.command == "render":
            return cmd_render(cfg, out, err)
        return COMMANDS[cfg.command](cfg, out)
    except TeichError as exc:
        print(f"error: {exc}", file=err)
        return exc.exit_code
    except Exception as exc:  # a bug, not bad input
        print(f"internal error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INTERNAL


def main(argv: Sequence[str] | None = None) -> int:
    return run_cli(sys.argv[1:] if argv is None else argv)


# SVG

PANEL = 360
MARGIN = 30


def _f(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _graph_panel(g: dict, x0: float) -> list[str]:
    size = PANEL - 2 * MARGIN

    def X(x):
        return x0 + MARGIN + x * size

    def Y(y):
        return MARGIN + (1 - y) * size

    out = ['<g id="graph">']
    for x in g["partition"]:
        out.append(
            f'<line x1="{_f(X(x))}" y1="{_f(Y(0))}" x2="{_f(X(x))}" y2="{_f(Y(1))}" class="grid"/>'
        )
        out.append(
            f'<line x1="{_f(X(0))}" y1="{_f(Y(x))}" x2="{_f(X(1))}" y2="{_f(Y(x))}" class="grid"/>'
        )
    pts = " ".join(f"{_f(X(x))},{_f(Y(y))}" for x, y in g["polyline"])
    out.append(f'<polyline points="{pts}" class="graph"/>')
    for x, y in g["postcritical"]:
        out.append(f'<circle cx="{_f(X(x))}" cy="{_f(Y(y))}" r="3" class="dot"/>')
    out.append("</g>")
    return out


def _box_panel(boxes: list[dict], x0: float, y0: float, scale: float, cls: str, ident: str) -> list[str]:
    out = [f'<g id="{ident}">']
    for b in boxes:
        x, y = x0 + b["x"] * scale, y0 + b["y"] * scale
        w, h = b["w"] * scale, b["h"] * scale
        out.append(f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(w)}" height="{_f(h)}" class="{cls}"/>')
        out.append(
            f'<text x="{_f(x + w / 2)}" y="{_f(y + h / 2)}" class="label">{escape(b["label"])}</text>'
        )
    out.append("</g>")
    return out


def render_geometry(g: dict) -> str:
    """SVG 1.1 document: the graph of h on the left, the R and C
    decompositions of the polygon stacked on the right.  Output depends
    only on g, so equal inputs give identical bytes."""
    boxes = g["rows"] + g["columns"]
    width = 2 * PANEL if boxes else PANEL
    body = _graph_panel(g["graph"], 0)
    if boxes:
        lo = min(b["x"] for b in boxes)
        hi = max(b["x"] + b["w"] for b in boxes)
        half = (PANEL - 2 * MARGIN) / 2
        scale = min((PANEL - 2 * MARGIN) / max(hi - lo, 1e-12), half)
        x0 = PANEL + MARGIN - lo * scale
        body += _box_panel(g["rows"], x0, MARGIN, scale, "row", "rows")
        body += _box_panel(g["columns"], x0, MARGIN + half + 10, scale, "col", "columns")
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{PANEL}" '
        f'viewBox="0 0 {width} {PANEL}">',
        "<style>",
        ".grid{stroke:#bbb;stroke-width:0.5}",
        ".graph{fill:none;stroke:#000;stroke-width:1.5}",
        ".dot{fill:#c00}",
        ".row{fill:#dfe8f7;stroke:#235;stroke-width:0.7}",
        ".col{fill:#f7e3df;stroke:#522;stroke-width:0.7}",
        ".label{font:9px sans-serif;text-anchor:middle;dominant-baseline:middle}",
        "</style>",
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"

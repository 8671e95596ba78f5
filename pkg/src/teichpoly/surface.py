"""Alignment function, the polygon P0 and the surface census.

Formal sums over the eigenvector widths v_1..v_n are integer coefficient
tuples; they are evaluated on interval enclosures only for checks and drawing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    AlignmentConflict,
    AlignmentUnderdetermined,
    BothSides,
    HypothesisViolated,
    TilingMismatch,
)
from .exact import RationalInterval
from .oddblock import PerronData, PLMap

FormalSum = tuple[int, ...]

AREA_TOLERANCE = Fraction(1, 10**8)


@dataclass(frozen=True)
class Alignment:
    n: int
    # entry i-1 holds alpha(i) for i = 1..n-1; None where undetermined
    values: tuple[int | None, ...]
    seed_defined: frozenset[int]

    def __getitem__(self, i: int) -> int | None:
        return self.values[i - 1]

    @property
    def complete(self) -> bool:
        return all(x is not None for x in self.values)

    def as_dict(self) -> dict[int, int | None]:
        return {i: self.values[i - 1] for i in range(1, self.n)}


@dataclass(frozen=True)
class Census:
    n: int
    genus: int
    cone_points: tuple[tuple[str, int], ...]  # (label, cone angle in units of pi)
    track_vertices: int
    track_edges: int
    track_b1: int

    def angle_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, angle in self.cone_points:
            out[angle] = out.get(angle, 0) + 1
        return out


@dataclass(frozen=True)
class ColumnBox:
    column: int
    offset: FormalSum
    rows: tuple[int, int]


@dataclass(frozen=True)
class PolygonData:
    n: int
    left: tuple[FormalSum, ...]
    width: tuple[FormalSum, ...]
    height: tuple[RationalInterval, ...]
    columns: tuple[ColumnBox, ...]
    area_rows: RationalInterval
    area_columns: RationalInterval
    census: Census

    @property
    def genus(self) -> int:
        return self.census.genus


def _crosses_interior(p: PLMap, j: int, y: int) -> bool:
    a, b = sorted((p.phi[j - 1], p.phi[j]))
    return a < y < b


def alignment_seed(p: PLMap) -> Alignment:
    """Horizontal-line rule at each interior partition point."""
    values: list[int | None] = []
    defined = set()
    for i in range(1, p.n):
        y = p.phi[i]
        left = any(_crosses_interior(p, j, y) for j in range(1, i + 1))
        right = any(_crosses_interior(p, j, y) for j in range(i + 1, p.n + 1))
        if left and right:
            raise BothSides(f"height x_{y} is met on both sides of x_{i}")
        if right:
            values.append(1)
            defined.add(i)
        elif left:
            values.append(-1)
            defined.add(i)
        else:
            values.append(None)
    return Alignment(p.n, tuple(values), frozenset(defined))


def extend_alignment(seed: Alignment, p: PLMap) -> Alignment:
    n = p.n
    alpha: dict[int, int] = {}
    for i in p.critical:
        alpha[i] = -1 if p.is_local_max(i) else 1
    noncritical = [i for i in range(1, n) if not p.is_critical(i)]

    def propagate():
        changed = True
        while changed:
            changed = False
            for i in noncritical:
                target = p.phi[i]
                if i not in alpha and 0 < target < n and target in alpha:
                    alpha[i] = p.direction(i) * alpha[target]
                    changed = True

    propagate()
    for i in noncritical:
        if i not in alpha and seed[i] is not None:
            alpha[i] = seed[i]
            propagate()
    missing = [i for i in range(1, n) if i not in alpha]
    if missing:
        raise AlignmentUnderdetermined(f"alpha is not forced at {missing}")
    for i in seed.seed_defined:
        if seed[i] != alpha[i]:
            raise AlignmentConflict(
                f"seed gives alpha({i}) = {seed[i]:+d} but the conditions force {alpha[i]:+d}"
            )
    for i in noncritical:
        target = p.phi[i]
        if 0 < target < n and alpha[i] != p.direction(i) * alpha[target]:
            raise AlignmentConflict(f"condition (b) fails at x_{i}")
    return Alignment(n, tuple(alpha[i] for i in range(1, n)), seed.seed_defined)


def _unit(n: int, j: int) -> FormalSum:
    return tuple(int(k == j - 1) for k in range(n))


def _fadd(a: FormalSum, b: FormalSum) -> FormalSum:
    return tuple(x + y for x, y in zip(a, b))


def _fsub(a: FormalSum, b: FormalSum) -> FormalSum:
    return tuple(x - y for x, y in zip(a, b))


def evaluate_sum(s: FormalSum, v: Sequence[RationalInterval]) -> RationalInterval:
    acc = RationalInterval.point(0)
    for c, x in zip(s, v):
        if c:
            acc = acc + x * c
    return acc


def surface_invariants(p: PLMap) -> Census:
    n = p.n
    if n % 2:
        raise HypothesisViolated(
            f"n = {n} is odd; the genus is then smaller than n/2 and the construction is not covered"
        )
    points = tuple((f"Q_{i}", 1) for i in range(n + 1)) + (("Q", n - 1),)
    return Census(n, n // 2, points, n + 1, 2 * n, 2 * n - (n + 1) + 1)


def gauss_bonnet_holds(c: Census) -> bool:
    """Integer Gauss-Bonnet bookkeeping, angles in units of pi.

    On the quotient sphere the cone points satisfy sum(angle - 2) = -2*chi(S^2).
    Each angle-pi point is a simple branch point of the double cover, so
    Riemann-Hurwitz gives chi(S) = 2*2 - (#points), which must equal 2 - 2g.
    On S the single point over Q has angle 2(n-1)pi and carries all curvature.
    """
    on_sphere = sum(angle - 2 for _, angle in c.cone_points) == -4
    branch = sum(1 for _, angle in c.cone_points if angle % 2 == 1)
    hurwitz = 4 - branch == 2 - 2 * c.genus
    top = [a for label, a in c.cone_points if label == "Q"]
    on_surface = len(top) == 1 and (2 * top[0] - 2) == 2 * (2 * c.genus - 2)
    return on_sphere and hurwitz and on_surface and c.track_b1 == 2 * c.genus


def assemble_polygon(p: PLMap, a: Alignment, pd: PerronData) -> PolygonData:
    n = p.n
    if not pd.consecutive_distinct:
        raise HypothesisViolated("consecutive eigenvector entries are not certified distinct")
    if not a.complete:
        raise HypothesisViolated("alignment is not fully determined")
    census = surface_invariants(p)
    rows = p.lap_counts
    zero = (0,) * n
    W = []
    for i in range(1, n + 1):
        w = zero
        for j in range(1, n + 1):
            if rows[i - 1][j - 1]:
                w = _fadd(w, _unit(n, j))
        W.append(w)
    L = [zero]
    for i in range(1, n):
        if a[i] == -1:
            L.append(L[-1])
        else:
            L.append(_fsub(_fadd(L[-1], W[i - 1]), W[i]))

    # pack the unit boxes of row i left to right in column order
    offsets: dict[tuple[int, int], FormalSum] = {}
    for i in range(1, n + 1):
        x = L[i - 1]
        for j in range(1, n + 1):
            if rows[i - 1][j - 1]:
                offsets[(i, j)] = x
                x = _fadd(x, _unit(n, j))

    v = pd.v
    columns = []
    for j in range(1, n + 1):
        lo, hi = p.block(j)
        off = offsets[(lo, j)]
        for i in range(lo + 1, hi + 1):
            other = offsets[(i, j)]
            if other != off:
                gap = evaluate_sum(_fsub(other, off), v)
                if not gap.contains(0):
                    raise TilingMismatch(
                        f"column {j} is sheared between rows {i - 1} and {i} by {gap}"
                    )
        columns.append(ColumnBox(j, off, (lo, hi)))

    area_rows = RationalInterval.point(0)
    for i in range(n):
        area_rows = area_rows + evaluate_sum(W[i], v) * v[i]
    area_cols = RationalInterval.point(0)
    x = pd.partition
    for box in columns:
        lo, hi = box.rows
        area_cols = area_cols + v[box.column - 1] * (x[hi] - x[lo - 1])
    if not area_rows.intersects(area_cols) or (
        max(area_rows.hi, area_cols.hi) - min(area_rows.lo, area_cols.lo) > AREA_TOLERANCE
    ):
        raise TilingMismatch(f"areas disagree: rows {area_rows}, columns {area_cols}")

    return PolygonData(n, tuple(L), tuple(W), tuple(v), tuple(columns), area_rows, area_cols, census)


def _mid(x: RationalInterval) -> float:
    return float(x.mid)


def geometry_export(p: PLMap, pd: PerronData, poly: PolygonData | None) -> dict:
    """Plain data for the renderer: the graph of h and the two decompositions.

    Rectangle coordinates have y growing downward, R_1 on top.
    """
    xs = [_mid(x) for x in pd.partition]
    graph = {
        "partition": xs,
        "polyline": [[xs[j], xs[p.phi[j]]] for j in range(p.n + 1)],
        "postcritical": [[xs[i], xs[p.phi[i]]] for i in range(1, p.n)],
    }
    out = {"n": p.n, "graph": graph, "rows": [], "columns": []}
    if poly is None:
        return out
    v = pd.v
    for i in range(1, p.n + 1):
        left = evaluate_sum(poly.left[i - 1], v)
        width = evaluate_sum(poly.width[i - 1], v)
        out["rows"].append(
            {
                "label": f"R_{i}",
                "x": _mid(left),
                "y": xs[i - 1],
                "w": _mid(width),
                "h": xs[i] - xs[i - 1],
            }
        )
    for box in poly.columns:
        lo, hi = box.rows
        out["columns"].append(
            {
                "label": f"C_{box.column}",
                "x": _mid(evaluate_sum(box.offset, v)),
                "y": xs[lo - 1],
                "w": _mid(v[box.column - 1]),
                "h": xs[hi] - xs[lo - 1],
            }
        )
    return out

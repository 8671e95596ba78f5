"""Realize general odd-block matrices and refine them to {0,1} matrices.

A column j of M with entries > 1 is realized by a zigzag: the graph of h
over I_j turns at partition heights, each monotone leg sweeping whole
partition intervals.  Cutting I_j at its turning points gives a finer
Markov partition whose incidence matrix has entries in {0,1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import AmbiguousPhi, NoRealization, TeichError, VerificationFailed
from .exact import IntegerMatrix, RationalInterval, char_poly, isolate_perron_root
from .oddblock import (
    DECREASING,
    INCREASING,
    OddBlockMatrix,
    PLMap,
    aperiodicity_power,
    build_pl_model,
    perron_data,
    validate,
)

Turns = tuple[int, ...]


@dataclass(frozen=True)
class TurningSequence:
    columns: tuple[Turns, ...]  # per column: phi(j-1), turning heights..., phi(j)

    def legs(self, j: int) -> list[tuple[int, int]]:
        seq = self.columns[j - 1]
        return list(zip(seq, seq[1:]))


@dataclass(frozen=True)
class RefinedInterval:
    column: int
    leg: int
    start: int  # partition height where the leg starts
    end: int

    @property
    def rows(self) -> tuple[int, int]:
        """Base rows swept by the leg, inclusive."""
        lo, hi = sorted((self.start, self.end))
        return lo + 1, hi


@dataclass(frozen=True)
class RefinedPartition:
    n: int
    intervals: tuple[RefinedInterval, ...]

    @property
    def m(self) -> int:
        return len(self.intervals)

    def inserted_points(self) -> list[tuple[int, int]]:
        """(column, number of legs before the point) for each interior turning."""
        return [(iv.column, iv.leg) for iv in self.intervals if iv.leg > 0]

    def widths(self, v: Sequence[RationalInterval], lam: RationalInterval) -> list[RationalInterval]:
        out = []
        for iv in self.intervals:
            lo, hi = iv.rows
            total = RationalInterval.point(0)
            for i in range(lo, hi + 1):
                total = total + v[i - 1]
            out.append(total / lam)
        return out


@dataclass(frozen=True)
class SplitResult:
    source: OddBlockMatrix
    realization: TurningSequence
    partition: RefinedPartition
    N: OddBlockMatrix
    pl_map: PLMap


@dataclass(frozen=True)
class SplitReport:
    aperiodic_power: int
    lam_source: RationalInterval
    lam_refined: RationalInterval
    widths: tuple[RationalInterval, ...]
    residual: tuple[RationalInterval, ...]


def column_realizations(counts: Sequence[int], start: int, end: int) -> list[Turns]:
    """All zigzags from `start` to `end` sweeping row i exactly counts[i-1] times."""
    n = len(counts)
    out: list[Turns] = []

    def rec(seq: list[int], remaining: list[int], last_dir: int):
        here = seq[-1]
        if not any(remaining):
            if here == end:
                out.append(tuple(seq))
            return
        for direction in (INCREASING, DECREASING):
            if direction == last_dir:
                continue
            # extend the leg one row at a time while counts allow it
            rem = list(remaining)
            y = here
            while True:
                row = y + 1 if direction == INCREASING else y
                if not 1 <= row <= n or rem[row - 1] == 0:
                    break
                rem[row - 1] -= 1
                y += direction
                rec(seq + [y], rem, direction)

    rec([start], list(counts), 0)
    if not any(counts) and start == end:
        return [(start,)]
    return sorted(set(out))


def enumerate_realizations(A: OddBlockMatrix, limit: int | None = None) -> list[TurningSequence]:
    per_column = []
    for j in range(1, A.n + 1):
        seqs = column_realizations(A.M.col(j - 1), A.phi[j - 1], A.phi[j])
        if not seqs:
            raise NoRealization(f"column {j} admits no zigzag with the given lap counts")
        per_column.append(seqs)
    out = []
    for combo in product(*per_column):
        out.append(TurningSequence(tuple(combo)))
        if limit is not None and len(out) >= limit:
            break
    return out


def canonical_realization(A: OddBlockMatrix) -> TurningSequence:
    return enumerate_realizations(A, limit=1)[0]


def refine_to_binary(A: OddBlockMatrix, r: TurningSequence) -> SplitResult:
    intervals = []
    for j in range(1, A.n + 1):
        for k, (s, e) in enumerate(r.legs(j)):
            intervals.append(RefinedInterval(j, k, s, e))
    part = RefinedPartition(A.n, tuple(intervals))
    m = part.m

    # refined index of base partition point h: legs of columns 1..h precede it
    base_index = [0]
    for j in range(1, A.n + 1):
        base_index.append(base_index[-1] + len(r.legs(j)))

    rows = [[0] * m for _ in range(m)]
    for c, leg in enumerate(intervals):
        lo, hi = leg.rows
        for rr, iv in enumerate(intervals):
            if lo <= iv.column <= hi:
                rows[rr][c] = 1
    phi = [base_index[intervals[0].start]] + [base_index[iv.end] for iv in intervals]
    N = IntegerMatrix(rows)
    try:
        NB = validate(N, allow_singular=True)
    except AmbiguousPhi as exc:
        if tuple(phi) not in exc.solutions:
            raise
        power = aperiodicity_power(N)
        if power is None:
            raise
        directions = tuple(
            INCREASING if phi[c] > phi[c - 1] else DECREASING for c in range(1, m + 1)
        )
        NB = OddBlockMatrix(N, tuple(phi), directions, True, power, N.det() == 0)
    if NB.phi != tuple(phi):
        raise VerificationFailed(f"refined endpoint map {NB.phi} differs from the construction {tuple(phi)}")
    return SplitResult(A, r, part, NB, build_pl_model(NB))


def verify_split(
    A: OddBlockMatrix,
    N: OddBlockMatrix | IntegerMatrix,
    width=Fraction(1, 10**8),
    partition: RefinedPartition | None = None,
) -> SplitReport:
    width = Fraction(width)
    M = N.M if isinstance(N, OddBlockMatrix) else N
    if partition is None:
        partition = _find_partition(A, M)
    if partition.m != M.rows or not M.is_square:
        raise VerificationFailed(f"N has size {M.rows}, the refinement has {partition.m} intervals")
    power = aperiodicity_power(M)
    if power is None:
        raise VerificationFailed("N is not aperiodic")
    pd = perron_data(A, width, require_distinct=False)
    lam_n = isolate_perron_root(char_poly(M), width)
    if not pd.lam.intersects(lam_n):
        raise VerificationFailed(f"leading eigenvalues differ: {pd.lam} vs {lam_n}")
    w = partition.widths(pd.v, pd.lam)
    residual = []
    for c in range(M.rows):
        acc = RationalInterval.point(0)
        for rr in range(M.rows):
            if M[rr, c]:
                acc = acc + w[rr] * M[rr, c]
        residual.append(acc - pd.lam * w[c])
    bad = [c + 1 for c, x in enumerate(residual) if not x.contains(0)]
    if bad:
        raise VerificationFailed(f"refined widths fail the eigenvector residual at {bad}")
    return SplitReport(power, pd.lam, lam_n, tuple(w), tuple(residual))


def _find_partition(A: OddBlockMatrix, M: IntegerMatrix, limit: int = 256) -> RefinedPartition:
    try:
        candidates = enumerate_realizations(A, limit)
    except TeichError as exc:
        raise VerificationFailed(f"source has no realization: {exc}") from None
    for r in candidates:
        try:
            s = refine_to_binary(A, r)
        except TeichError:
            continue
        if s.N.M == M:
            return s.partition
    raise VerificationFailed("N is not the refinement of any realization of the source")


def convert(A: OddBlockMatrix, choose: int = 0) -> SplitResult:
    realizations = enumerate_realizations(A, limit=choose + 1)
    if choose >= len(realizations):
        raise NoRealization(f"only {len(realizations)} realizations exist")
    return refine_to_binary(A, realizations[choose])

"""Odd-block matrices: validation, the endpoint map, Perron data.

Indexing: partition points are 0..n, pieces (= columns) and rows are 1..n in
the public API.  Python tuples indexed by piece use position j-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import (
    AmbiguousPhi,
    Inconclusive,
    MatrixFormatError,
    NoPhiExists,
    NotAperiodic,
    NotOddBlock,
    Singular,
)
from .exact import (
    IntegerMatrix,
    RationalInterval,
    char_poly,
    integer_kernel_basis,
    interval_eigenvector,
    isolate_perron_root,
    refine_root,
)

INCREASING = 1
DECREASING = -1


@dataclass(frozen=True)
class OddBlockMatrix:
    M: IntegerMatrix
    phi: tuple[int, ...]
    # +1/-1 per piece for binary matrices; None when a realization must decide
    directions: tuple[int, ...] | None
    binary: bool
    aperiodic_power: int
    singular: bool = False

    @property
    def n(self) -> int:
        return self.M.rows

    def direction(self, j: int) -> int:
        if self.directions is None:
            raise ValueError("directions are only determined for binary matrices")
        return self.directions[j - 1]

    def nonzero_block(self, j: int) -> tuple[int, int]:
        return _block(self.M.col(j - 1), lambda x: x != 0)

    def odd_block(self, j: int) -> tuple[int, int] | None:
        """1-based row range of odd entries in column j, None when empty."""
        return _block(self.M.col(j - 1), lambda x: x % 2 == 1)


@dataclass(frozen=True)
class PLMap:
    n: int
    phi: tuple[int, ...]
    directions: tuple[int, ...]
    image_block: tuple[tuple[int, int], ...]
    lap_counts: tuple[tuple[int, ...], ...]

    def direction(self, j: int) -> int:
        return self.directions[j - 1]

    def block(self, j: int) -> tuple[int, int]:
        return self.image_block[j - 1]

    @property
    def critical(self) -> tuple[int, ...]:
        return tuple(
            i for i in range(1, self.n) if self.directions[i - 1] != self.directions[i]
        )

    def is_critical(self, i: int) -> bool:
        return 0 < i < self.n and self.directions[i - 1] != self.directions[i]

    def is_local_max(self, i: int) -> bool:
        return self.is_critical(i) and self.directions[i - 1] == INCREASING

    def decreasing_pieces(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.n + 1) if self.directions[j - 1] == DECREASING)


@dataclass(frozen=True)
class PerronData:
    lam: RationalInterval
    v: tuple[RationalInterval, ...]
    partition: tuple[RationalInterval, ...]
    consecutive_distinct: bool


def _block(column: Iterable[int], pred) -> tuple[int, int] | None:
    rows = [i + 1 for i, x in enumerate(column) if pred(x)]
    if not rows:
        return None
    return rows[0], rows[-1]


def _is_consecutive(column, pred) -> bool:
    rows = [i for i, x in enumerate(column) if pred(x)]
    return not rows or rows[-1] - rows[0] + 1 == len(rows)


def _solve_phi(M: IntegerMatrix) -> list[tuple[int, ...]]:
    """All endpoint maps compatible with the odd blocks.

    Each column pins {phi(j-1), phi(j)} to {p-1, q}, so phi(0) determines
    everything; the search branches over phi(0) only.
    """
    n = M.rows
    blocks = [_block(M.col(j), lambda x: x % 2 == 1) for j in range(n)]
    solutions = []
    for start in range(n + 1):
        phi = [start]
        for blk in blocks:
            prev = phi[-1]
            if blk is None:
                phi.append(prev)
            elif prev == blk[0] - 1:
                phi.append(blk[1])
            elif prev == blk[1]:
                phi.append(blk[0] - 1)
            else:
                break
        if len(phi) == n + 1:
            solutions.append(tuple(phi))
    return solutions


def aperiodicity_power(M: IntegerMatrix) -> int | None:
    """Smallest power of two k with M^k > 0, searched up to the Wielandt bound."""
    n = M.rows
    bound = (n - 1) ** 2 + 1
    B = np.array(M.entries, dtype=bool).reshape(n, n)
    k = 1
    while True:
        if B.all():
            return k
        if k >= bound:
            return None
        B = (B.astype(np.int64) @ B.astype(np.int64)) > 0
        k *= 2


def validate(M: IntegerMatrix, allow_singular: bool = False) -> OddBlockMatrix:
    if not M.is_square:
        raise MatrixFormatError(f"matrix is {M.rows}x{M.cols}, not square")
    if any(x < 0 for row in M.entries for x in row):
        raise MatrixFormatError("matrix has negative entries")
    n = M.rows
    for j in range(n):
        col = M.col(j)
        if not _is_consecutive(col, lambda x: x != 0):
            raise NotOddBlock("i", j + 1, "nonzero entries are not one consecutive block")
        if not _is_consecutive(col, lambda x: x % 2 == 1):
            raise NotOddBlock("ii", j + 1, "odd entries are not one consecutive block")
    solutions = _solve_phi(M)
    if not solutions:
        raise NoPhiExists("no endpoint map satisfies condition (ii)")
    if len(solutions) > 1:
        raise AmbiguousPhi(solutions)
    phi = solutions[0]
    binary = all(x in (0, 1) for row in M.entries for x in row)
    directions = None
    if binary:
        directions = tuple(
            INCREASING if phi[j] > phi[j - 1] else DECREASING for j in range(1, n + 1)
        )
    singular = M.det() == 0
    if singular and not allow_singular:
        raise Singular("determinant is zero")
    power = aperiodicity_power(M)
    if power is None:
        raise NotAperiodic(f"no power up to {(n - 1) ** 2 + 1} is positive")
    return OddBlockMatrix(M, phi, directions, binary, power, singular)


def build_pl_model(A: OddBlockMatrix) -> PLMap:
    if not A.binary:
        raise ValueError("build_pl_model needs a {0,1} matrix; realize general ones with split")
    blocks = tuple(A.nonzero_block(j) for j in range(1, A.n + 1))
    return PLMap(A.n, A.phi, A.directions, blocks, A.M.entries)


def perron_data(
    A: OddBlockMatrix,
    width=Fraction(1, 10**30),
    require_distinct: bool = True,
    max_bits: int = 2000,
) -> PerronData:
    """Certified Perron root of M and the L1-normalized Perron vector of M^T."""
    width = Fraction(width)
    cp = char_poly(A.M)
    lam = isolate_perron_root(cp, width)
    while True:
        v = interval_eigenvector(A.M.T, lam, width)
        distinct = all(a.disjoint(b) for a, b in zip(v, v[1:]))
        if distinct or width.denominator.bit_length() > max_bits:
            break
        width /= 2**64
        lam = refine_root(cp, lam, width)
    if require_distinct and not distinct:
        raise Inconclusive("consecutive eigenvector entries could not be separated")
    partition = [RationalInterval.point(0)]
    for x in v:
        partition.append(partition[-1] + x)
    return PerronData(lam, tuple(v), tuple(partition), distinct)


def fixed_eigenspace(A: OddBlockMatrix) -> list[tuple[int, ...]]:
    return integer_kernel_basis(A.M - IntegerMatrix.identity(A.n))


# matrix text format


def parse_matrix_text(text: str) -> IntegerMatrix:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    try:
        n = int(lines[0])
    except ValueError:
        raise MatrixFormatError(f"first line must be the size, got {lines[0]!r}") from None
    if n <= 0:
        raise MatrixFormatError("size must be positive")
    body = lines[1:]
    if len(body) != n:
        raise MatrixFormatError(f"expected {n} rows, found {len(body)}")
    rows = []
    for k, ln in enumerate(body, start=1):
        try:
            row = [int(x) for x in ln.split()]
        except ValueError:
            raise MatrixFormatError(f"row {k} has a non-integer entry") from None
        if len(row) != n:
            raise MatrixFormatError(f"row {k} has {len(row)} entries, expected {n}")
        if any(x < 0 for x in row):
            raise MatrixFormatError(f"row {k} has a negative entry")
        rows.append(row)
    return IntegerMatrix(rows)


def read_matrix(path: str | Path) -> IntegerMatrix:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix_text(text)


def format_matrix(M: IntegerMatrix, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" if c else "#" for c in comments]
    out.append(str(M.rows))
    out.extend(" ".join(str(x) for x in row) for row in M.entries)
    return "\n".join(out) + "\n"

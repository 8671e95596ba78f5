"""Integer and Laurent-polynomial matrices, determinants, minors and kernels."""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np

from .laurent import LaurentPoly


class IntegerMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]]):
        grid = tuple(tuple(int(x) for x in row) for row in entries)
        widths = {len(row) for row in grid}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        self.entries = grid
        self.rows = len(grid)
        self.cols = widths.pop() if widths else 0

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    @property
    def T(self) -> "IntegerMatrix":
        return IntegerMatrix(zip(*self.entries)) if self.rows else IntegerMatrix([])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"IntegerMatrix({[list(r) for r in self.entries]})"

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return IntegerMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return IntegerMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            cols = other.T.entries
            return IntegerMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries]
            )
        return tuple(sum(a * b for a, b in zip(r, other)) for r in self.entries)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=object).reshape(self.rows, self.cols)

    def det(self) -> int:
        return integer_determinant(self)


def integer_determinant(A: IntegerMatrix) -> int:
    """Bareiss elimination over the integers."""
    if not A.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    a = [list(r) for r in A.entries]
    sign, prev = 1, 1
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


class LaurentMatrix:
    __slots__ = ("variables", "rows", "cols", "entries")

    def __init__(self, variables: Sequence[str], entries: Iterable[Iterable[LaurentPoly | int]]):
        self.variables = tuple(variables)
        grid = []
        for row in entries:
            out = []
            for x in row:
                if isinstance(x, LaurentPoly):
                    if x.variables != self.variables:
                        x = x.with_variables(self.variables)
                else:
                    x = LaurentPoly.constant(self.variables, x)
                out.append(x)
            grid.append(tuple(out))
        widths = {len(r) for r in grid}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        self.entries = tuple(grid)
        self.rows = len(grid)
        self.cols = widths.pop() if widths else 0

    @classmethod
    def from_integer(cls, A: IntegerMatrix, variables: Sequence[str]) -> "LaurentMatrix":
        return cls(variables, A.entries)

    @classmethod
    def identity(cls, n: int, variables: Sequence[str]) -> "LaurentMatrix":
        return cls(variables, [[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentMatrix)
            and self.variables == other.variables
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        body = "\n".join("  [" + ", ".join(str(x) for x in r) + "]" for r in self.entries)
        return f"LaurentMatrix({self.variables},\n{body})"

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return LaurentMatrix(
            self.variables, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return LaurentMatrix(
            self.variables, [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def scale(self, c: LaurentPoly | int) -> "LaurentMatrix":
        return self.map(lambda x: x * c)

    def map(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> "LaurentMatrix":
        return LaurentMatrix(self.variables, [[fn(x) for x in r] for r in self.entries])

    @property
    def T(self) -> "LaurentMatrix":
        return LaurentMatrix(self.variables, zip(*self.entries))

    def with_variables(self, variables: Sequence[str]) -> "LaurentMatrix":
        return LaurentMatrix(variables, [[x.with_variables(variables) for x in r] for r in self.entries])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "LaurentMatrix":
        return LaurentMatrix(self.variables, [[self.entries[i][j] for j in cols] for i in rows])

    def substitute(self, values) -> "LaurentMatrix":
        return self.map(lambda x: x.substitute(values))

    def to_integer(self) -> IntegerMatrix:
        """Entries must all be constants."""
        out = []
        for r in self.entries:
            if not all(x.is_constant() for x in r):
                raise ValueError("matrix has non-constant entries")
            out.append([x.constant_term() for x in r])
        return IntegerMatrix(out)


def determinant(A: LaurentMatrix) -> LaurentPoly:
    """Fraction-free elimination after clearing each row's negative exponents."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n, k = A.rows, len(A.variables)
    unit = [0] * k
    a = []
    for row in A.entries:
        mins = [0] * k
        for x in row:
            if x.terms:
                mins = [min(m, e) for m, e in zip(mins, x.min_exponents())]
        shift = tuple(-m for m in mins)
        unit = [u - s for u, s in zip(unit, shift)]
        a.append([x.shift(shift) for x in row])
    if n == 0:
        return LaurentPoly.one(A.variables)
    sign = 1
    prev = LaurentPoly.one(A.variables)
    for c in range(n):
        candidates = [i for i in range(c, n) if a[i][c].terms]
        if not candidates:
            return LaurentPoly.zero(A.variables)
        # the sparsest pivot keeps intermediate expressions small
        p = min(candidates, key=lambda i: (len(a[i][c].terms), i))
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        for i in range(c + 1, n):
            lead = a[i][c]
            row_i, row_c = a[i], a[c]
            for j in range(c + 1, n):
                x = row_i[j] * piv
                if lead.terms and row_c[j].terms:
                    x = x - lead * row_c[j]
                row_i[j] = x.exact_div(prev) if c else x
            row_i[c] = LaurentPoly.zero(A.variables)
        prev = piv
    return (a[n - 1][n - 1] * sign).shift(unit)


def maximal_minors(A: LaurentMatrix) -> list[LaurentPoly]:
    """Minors from deleting (cols - rows) columns, lexicographic in the deleted set."""
    if A.rows > A.cols:
        raise ValueError("more rows than columns")
    rows = range(A.rows)
    out = []
    for deleted in combinations(range(A.cols), A.cols - A.rows):
        keep = [j for j in range(A.cols) if j not in deleted]
        out.append(determinant(A.submatrix(rows, keep)))
    return out


def char_poly(A: IntegerMatrix, variable: str = "u") -> LaurentPoly:
    """det(uI - A) as a univariate polynomial."""
    if not A.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    vars_ = (variable,)
    u = LaurentPoly.var(vars_, variable)
    n = A.rows
    B = LaurentMatrix(vars_, [[(u if i == j else 0) - A[i, j] for j in range(n)] for i in range(n)])
    return determinant(B)


def char_poly_laurent(A: LaurentMatrix, variable: str = "u") -> LaurentPoly:
    """det(uI - A) for a matrix over a Laurent ring; u is prepended to the variables."""
    vars_ = (variable,) + A.variables
    u = LaurentPoly.var(vars_, variable)
    B = A.with_variables(vars_)
    n = A.rows
    return determinant(
        LaurentMatrix(vars_, [[(u if i == j else 0) - B[i, j] for j in range(n)] for i in range(n)])
    )


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite form H = U·A with U unimodular.

    Pivots are positive and entries above each pivot are reduced into [0, pivot).
    Zero rows of H are moved to the bottom.
    """
    a = [list(r) for r in rows]
    m = len(a)
    ncols = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        # Euclid on column c among rows r..m-1
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < m and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            pivots.append(c)
            r += 1
    return a, u


def integer_kernel_basis(A: IntegerMatrix) -> list[tuple[int, ...]]:
    """Basis of the saturated lattice {v : Av = 0} in reduced Hermite form."""
    n = A.cols
    if n == 0:
        return []
    H, U = hermite_normal_form(A.T.entries if A.rows else [[] for _ in range(n)])
    kernel = [U[i] for i in range(n) if not any(H[i])]
    if not kernel:
        return []
    K, _ = hermite_normal_form(kernel)
    return [tuple(r) for r in K if any(r)]

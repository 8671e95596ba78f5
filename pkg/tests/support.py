"""Shared fixtures and generators for the test suite."""

from __future__ import annotations

import functools
import random
from pathlib import Path

from teichpoly.errors import TeichError
from teichpoly.exact import IntegerMatrix
from teichpoly.oddblock import read_matrix, validate
from teichpoly.traintrack import chain_model

DATA = Path(__file__).resolve().parent.parent / "data"


def load(name: str) -> IntegerMatrix:
    return read_matrix(DATA / name)


def matrix_from_phi(phi) -> IntegerMatrix:
    n = len(phi) - 1
    rows = [[0] * n for _ in range(n)]
    for j in range(1, n + 1):
        lo, hi = sorted((phi[j - 1], phi[j]))
        for i in range(lo, hi):
            rows[i][j - 1] = 1
    return IntegerMatrix(rows)


def _row_consecutive_phis(n: int):
    """Endpoint maps whose {0,1} matrix has consecutive rows that chain.

    Rows of M are the columns of M^T, so row i spans columns [a_i, b_i] and
    consecutive rows must share an endpoint of {a_i - 1, b_i}.  Rows are
    checked as soon as they close, which keeps the search small.
    """
    out = []

    def ends(i, start, stop):
        return {start - 1, stop}

    def rec(phi, start, stop):
        j = len(phi)  # next column index (1-based)
        if j == n + 1:
            if all(s is not None for s in start):
                spans = [ends(i, start[i], stop[i] if stop[i] else n) for i in range(n)]
                if all(spans[i] & spans[i + 1] for i in range(n - 1)):
                    out.append(tuple(phi))
            return
        for y in range(n + 1):
            if y == phi[-1]:
                continue
            lo, hi = sorted((phi[-1], y))
            # equal columns would make M singular
            if any(sorted(pair) == [lo, hi] for pair in zip(phi, phi[1:])):
                continue
            st, sp = list(start), list(stop)
            ok = True
            for i in range(n):
                if lo <= i < hi:
                    if sp[i]:
                        ok = False
                        break
                    if st[i] is None:
                        st[i] = j
                elif st[i] is not None and not sp[i]:
                    sp[i] = j - 1
                    for k in (i - 1, i + 1):
                        if 0 <= k < n and sp[k] and not ends(i, st[i], sp[i]) & ends(k, st[k], sp[k]):
                            ok = False
                    if not ok:
                        break
            if ok:
                rec(phi + [y], st, sp)

    for first in range(n + 1):
        rec([first], [None] * n, [0] * n)
    return out


@functools.lru_cache(maxsize=None)
def chain_class(n: int) -> tuple[IntegerMatrix, ...]:
    """Every valid {0,1} odd-block matrix of size n whose transpose is odd-block."""
    found = []
    for phi in _row_consecutive_phis(n):
        M = matrix_from_phi(phi)
        try:
            A = validate(M)
            chain_model(A)
        except TeichError:
            continue
        found.append(M)
    return tuple(found)


def random_chain_matrices(count: int, sizes=(2, 4, 6, 8), seed: int = 2024):
    pool = [M for n in sizes for M in chain_class(n)]
    rng = random.Random(seed)
    return rng.sample(pool, min(count, len(pool)))


def _zigzag(rng: random.Random, n: int, start: int, end: int, extra: int) -> list[int]:
    """Heights visited by one column: start, turning points, end."""
    seq = [start]
    for _ in range(extra):
        y = rng.randrange(n + 1)
        if y != seq[-1]:
            seq.append(y)
    if end != seq[-1]:
        seq.append(end)
    # merge consecutive legs that keep the same direction
    out = [seq[0]]
    for y in seq[1:]:
        if len(out) >= 2 and (out[-1] - out[-2]) * (y - out[-1]) > 0:
            out[-1] = y
        else:
            out.append(y)
    return out


def random_general_matrices(count: int, sizes=(2, 3, 4), seed: int = 77) -> list[IntegerMatrix]:
    """Valid odd-block matrices with some entries above 1.

    Each column is the lap count of a random zigzag between consecutive
    endpoint heights, so condition (ii) holds by construction; validate
    filters the rest.
    """
    rng = random.Random(seed)
    out: list[IntegerMatrix] = []
    while len(out) < count:
        n = rng.choice(sizes)
        phi = [rng.randrange(n + 1)]
        while len(phi) < n + 1:
            y = rng.randrange(n + 1)
            if y != phi[-1]:
                phi.append(y)
        cols = []
        for j in range(n):
            seq = _zigzag(rng, n, phi[j], phi[j + 1], rng.randint(0, 2))
            counts = [0] * n
            for a, b in zip(seq, seq[1:]):
                lo, hi = sorted((a, b))
                for i in range(lo, hi):
                    counts[i] += 1
            cols.append(counts)
        M = IntegerMatrix([list(r) for r in zip(*cols)])
        if M in out or all(x <= 1 for row in M.entries for x in row):
            continue
        try:
            validate(M)
        except TeichError:
            continue
        out.append(M)
    return out

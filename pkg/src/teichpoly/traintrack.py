"""The chain train track, its induced maps and the Z^b cover data.

Convention (checked against the reference 16x16 and 9x9 matrices): the edge
alpha_i is the rectangle R_i, and its image runs over the support of row i of
M.  Equivalently the track map is the chain map of the interval map g built
from M^T, so the track exists exactly when M^T is odd-block too.  g is
called the row model below.

Orientation: alpha_i runs from vertex i-1 to i, beta_i from vertex i to i-1.
If g increases on piece i with row support [a, b]:
    alpha_i -> alpha_a ... alpha_b        beta_i -> beta_b ... beta_a
and if g decreases there:
    alpha_i -> beta_b ... beta_a          beta_i -> alpha_a ... alpha_b
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import HypothesisViolated, InternalError, ValidationError
from .exact import LaurentMatrix, LaurentPoly
from .oddblock import OddBlockMatrix, PLMap, build_pl_model, validate

ALPHA = "alpha"
BETA = "beta"


@dataclass(frozen=True, order=True)
class Edge:
    kind: str
    index: int

    @property
    def tail(self) -> int:
        return self.index - 1 if self.kind == ALPHA else self.index

    @property
    def head(self) -> int:
        return self.index if self.kind == ALPHA else self.index - 1

    def __str__(self) -> str:
        return f"{self.kind}_{self.index}"


# a signed edge: (edge, +1) traverses tail -> head
EdgeWord = tuple[tuple[Edge, int], ...]
# a group word in the free generators gamma_1..gamma_n
GroupWord = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class TrainTrack:
    n: int

    @property
    def vertices(self) -> range:
        return range(self.n + 1)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(Edge(ALPHA, i) for i in range(1, self.n + 1)) + tuple(
            Edge(BETA, i) for i in range(1, self.n + 1)
        )

    def edge_index(self, e: Edge) -> int:
        return e.index - 1 + (0 if e.kind == ALPHA else self.n)

    @property
    def b1(self) -> int:
        return len(self.edges) - len(self.vertices) + 1


@dataclass(frozen=True)
class CoverDecoration:
    b: int
    alpha: tuple[tuple[int, ...], ...]  # deck vector of alpha_i at position i-1

    def of(self, e: Edge) -> tuple[int, ...]:
        return self.alpha[e.index - 1] if e.kind == ALPHA else (0,) * self.b

    @property
    def variables(self) -> tuple[str, ...]:
        return t_variables(self.b)


@dataclass(frozen=True)
class LoopMap:
    n: int
    images: tuple[GroupWord, ...]
    middles: tuple[GroupWord, ...]
    conjugators: tuple[GroupWord, ...]
    decreasing: tuple[int, ...]


def t_variables(b: int) -> tuple[str, ...]:
    if b == 1:
        return ("t",)
    return tuple(f"t{k}" for k in range(1, b + 1))


def chain_model(A: OddBlockMatrix) -> PLMap:
    """The row model g: the PL model of M^T."""
    try:
        At = validate(A.M.T)
    except ValidationError as exc:
        raise HypothesisViolated(
            f"the transpose is not odd-block ({exc}); rows of M do not give a chain train track"
        ) from None
    if not At.binary:
        raise HypothesisViolated("the train track construction needs a {0,1} matrix")
    return build_pl_model(At)


def build_train_track(p: PLMap) -> TrainTrack:
    return TrainTrack(p.n)


def induced_edge_map(p: PLMap) -> dict[Edge, EdgeWord]:
    """Edge images for the row model p (see the module docstring)."""
    out: dict[Edge, EdgeWord] = {}
    for i in range(1, p.n + 1):
        a, b = p.block(i)
        front = tuple((Edge(ALPHA, j), 1) for j in range(a, b + 1))
        back = tuple((Edge(BETA, j), 1) for j in range(b, a - 1, -1))
        if p.direction(i) > 0:
            out[Edge(ALPHA, i)], out[Edge(BETA, i)] = front, back
        else:
            out[Edge(ALPHA, i)], out[Edge(BETA, i)] = back, front
    return out


def cover_decoration(t: TrainTrack, basis: Sequence[Sequence[int]]) -> CoverDecoration:
    return CoverDecoration(len(basis), tuple(tuple(int(x[i]) for x in basis) for i in range(t.n)))


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vneg(a):
    return tuple(-x for x in a)


def word_deck(word: EdgeWord, d: CoverDecoration) -> tuple[int, ...]:
    acc = (0,) * d.b
    for e, s in word:
        acc = _vadd(acc, d.of(e)) if s > 0 else _vsub(acc, d.of(e))
    return acc


def vertex_lift_offsets(t: TrainTrack, m: dict[Edge, EdgeWord], d: CoverDecoration) -> tuple:
    """Deck offset s_k of the lifted map at each vertex, with s_0 = 0.

    Lifting alpha_i from sheet 0 must land where the lift of its head lands,
    which forces s_i = s_{i-1} + deck(image of alpha_i) - deck(alpha_i).
    """
    s = [(0,) * d.b]
    for i in range(1, t.n + 1):
        e = Edge(ALPHA, i)
        s.append(_vsub(_vadd(s[-1], word_deck(m[e], d)), d.of(e)))
    # the beta edges must be consistent with the same offsets
    for i in range(1, t.n + 1):
        e = Edge(BETA, i)
        if _vadd(s[i], word_deck(m[e], d)) != s[i - 1]:
            raise InternalError(f"lift offsets inconsistent along {e}")
    return tuple(s)


def edge_transition_matrix(t: TrainTrack, m: dict[Edge, EdgeWord], d: CoverDecoration) -> LaurentMatrix:
    """Rows are source edges, columns the edges met by their images."""
    vars_ = d.variables
    s = vertex_lift_offsets(t, m, d)
    size = 2 * t.n
    grid = [[LaurentPoly.zero(vars_) for _ in range(size)] for _ in range(size)]
    for e in t.edges:
        acc = s[e.tail]
        r = t.edge_index(e)
        for f, sign in m[e]:
            if sign < 0:
                raise InternalError("edge images must be positively oriented")
            c = t.edge_index(f)
            grid[r][c] = grid[r][c] + LaurentPoly.monomial(vars_, acc)
            acc = _vadd(acc, d.of(f))
    return LaurentMatrix(vars_, grid)


def vertex_transition_matrix(t: TrainTrack, p: PLMap, d: CoverDecoration) -> LaurentMatrix:
    vars_ = d.variables
    s = vertex_lift_offsets(t, induced_edge_map(p), d)
    size = t.n + 1
    grid = [[LaurentPoly.zero(vars_) for _ in range(size)] for _ in range(size)]
    for k in range(size):
        grid[k][p.phi[k]] = LaurentPoly.monomial(vars_, s[k])
    return LaurentMatrix(vars_, grid)


# based loops


def free_reduce(word: GroupWord) -> GroupWord:
    out: list[tuple[int, int]] = []
    for g, s in word:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def invert(word):
    return tuple((g, -s) for g, s in reversed(word))


def _tree_path(k: int) -> EdgeWord:
    """Vertex 0 to vertex k along the beta edges."""
    return tuple((Edge(BETA, j), -1) for j in range(1, k + 1))


def _apply(m: dict[Edge, EdgeWord], word: EdgeWord) -> EdgeWord:
    out = []
    for e, s in word:
        out.extend(m[e] if s > 0 else invert(m[e]))
    return tuple(out)


def _to_generators(word: EdgeWord) -> GroupWord:
    # beta edges form the spanning tree; alpha_j reads as gamma_j
    return free_reduce(tuple((e.index, s) for e, s in word if e.kind == ALPHA))


def generator_loop(i: int) -> EdgeWord:
    return _tree_path(i - 1) + ((Edge(ALPHA, i), 1),) + invert(_tree_path(i))


def induced_loop_map(p: PLMap, t: TrainTrack) -> LoopMap:
    """psi_1* on the free group, read off the edge map.

    The basepoint is vertex 0; images are pulled back along the tree path
    from 0 to phi(0).  The result is checked against the conjugated form
    C_i W_i C_i^-1, where W_i runs over the support of row i and C_i is the
    product of W_k^-1 over the decreasing pieces k < i, in increasing k.
    """
    m = induced_edge_map(p)
    base = _tree_path(p.phi[0])
    images = []
    for i in range(1, t.n + 1):
        path = base + _apply(m, generator_loop(i)) + invert(base)
        images.append(_to_generators(path))

    middles = []
    for i in range(1, t.n + 1):
        a, b = p.block(i)
        middles.append(tuple((j, 1) for j in range(a, b + 1)))
    decreasing = p.decreasing_pieces()
    conjugators = []
    for i in range(1, t.n + 1):
        c: GroupWord = ()
        for k in decreasing:
            if k < i:
                c = c + invert(middles[k - 1])
        conjugators.append(c)
    for i in range(t.n):
        expected = free_reduce(conjugators[i] + middles[i] + invert(conjugators[i]))
        if expected != images[i]:
            raise InternalError(f"loop image of gamma_{i + 1} does not have the conjugated form")
    return LoopMap(t.n, tuple(images), tuple(middles), tuple(conjugators), decreasing)


def abelianize(word: GroupWord, d: CoverDecoration) -> tuple[int, ...]:
    acc = (0,) * d.b
    for g, s in word:
        x = d.alpha[g - 1]
        acc = _vadd(acc, x) if s > 0 else _vsub(acc, x)
    return acc

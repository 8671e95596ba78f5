"""Three routes to the Teichmüller polynomial and their cross-check.

steps     decorate M, push superscripts right, fold in the decreasing rows,
          gcd of maximal minors
fox       Fox calculus on the HNN presentation <gamma_i, u | u gamma_i u^-1 = psi(gamma_i)>
mcmullen  det(uI - E) / det(uI - V) on the Z^b cover of the train track

All polynomials live in variables (u, t...) with u first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CrossCheckMismatch, DegenerateResult, HypothesisViolated
from .exact import (
    IntegerMatrix,
    LaurentMatrix,
    LaurentPoly,
    RationalInterval,
    char_poly_laurent,
    isolate_perron_root,
    maximal_minors,
    poly_gcd_many,
)
from .oddblock import OddBlockMatrix, PLMap, build_pl_model, fixed_eigenspace, perron_data
from .surface import alignment_seed, extend_alignment
from .traintrack import (
    CoverDecoration,
    GroupWord,
    LoopMap,
    build_train_track,
    chain_model,
    cover_decoration,
    edge_transition_matrix,
    induced_edge_map,
    induced_loop_map,
    t_variables,
    vertex_transition_matrix,
)

METHODS = ("steps", "fox", "mcmullen")


@dataclass(frozen=True)
class DecoratedMatrix:
    base: IntegerMatrix
    column_decorations: tuple[tuple[int, ...], ...]
    entries: LaurentMatrix
    end_superscripts: tuple[tuple[int, ...], ...] | None = None

    @property
    def b(self) -> int:
        return len(self.column_decorations[0]) if self.column_decorations else 0

    @property
    def variables(self) -> tuple[str, ...]:
        return t_variables(self.b)


@dataclass(frozen=True)
class TeichResult:
    poly: LaurentPoly
    method: str
    eigenbasis: tuple[tuple[int, ...], ...]
    canonical: bool = True


@dataclass(frozen=True)
class CrossChecked:
    poly: LaurentPoly
    results: dict[str, TeichResult] = field(hash=False)
    eigenbasis: tuple[tuple[int, ...], ...]
    agree: bool

    @property
    def methods(self) -> tuple[str, ...]:
        return tuple(self.results)


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _mono(vars_, exp, c=1) -> LaurentPoly:
    return LaurentPoly.monomial(vars_, exp, c)


# Steps I-IV


def step1_decorate(A: OddBlockMatrix | IntegerMatrix, basis: Sequence[Sequence[int]]) -> DecoratedMatrix:
    M = A.M if isinstance(A, OddBlockMatrix) else A
    decorations = tuple(tuple(int(x[j]) for x in basis) for j in range(M.rows))
    vars_ = t_variables(len(basis))
    return DecoratedMatrix(M, decorations, LaurentMatrix.from_integer(M, vars_))


def step2_push(D: DecoratedMatrix) -> DecoratedMatrix:
    """Left-to-right accumulator: each nonzero entry picks up t^(sum of decorations to its left)."""
    vars_ = D.variables
    zero = (0,) * D.b
    rows, ends = [], []
    for i in range(D.base.rows):
        acc = zero
        row = []
        for j in range(D.base.cols):
            x = D.base[i, j]
            if x:
                row.append(_mono(vars_, acc, x))
                acc = _vadd(acc, D.column_decorations[j])
            else:
                row.append(LaurentPoly.zero(vars_))
        rows.append(row)
        ends.append(acc)
    return DecoratedMatrix(D.base, D.column_decorations, LaurentMatrix(vars_, rows), tuple(ends))


def step3_replace(D: DecoratedMatrix, p: PLMap) -> LaurentMatrix:
    """Fold the decreasing rows above each row into it.

    With l_1 < ... < l_k the decreasing pieces of p above row r, n_l their end
    exponents and n the end exponent of r, row r becomes
        t^-(n_1+...+n_k) r + (t^n - 1) * sum_l t^-(n_1+...+n_l) r_l
    with t^n - 1 appended.  The r_l are Step II rows.  A row with n = 0 is
    only rescaled by a unit; the rescaling is kept because the diagonal u of
    Step IV is not rescaled with it.
    """
    if D.end_superscripts is None:
        raise ValueError("step3_replace needs Step II output")
    vars_ = D.variables
    zero = (0,) * D.b
    decreasing = set(p.decreasing_pieces())
    E = D.entries
    n = D.base.rows
    out = []
    for r in range(1, n + 1):
        above = [l for l in range(1, r) if l in decreasing]
        nr = D.end_superscripts[r - 1]
        tail = _mono(vars_, nr) - 1
        prefix = zero
        combo = [LaurentPoly.zero(vars_) for _ in range(n)]
        for l in above:
            prefix = _vadd(prefix, D.end_superscripts[l - 1])
            w = _mono(vars_, tuple(-x for x in prefix))
            combo = [c + w * E[l - 1, j] for j, c in enumerate(combo)]
        scale = _mono(vars_, tuple(-x for x in prefix))
        row = [scale * E[r - 1, j] + tail * combo[j] for j in range(n)]
        out.append(row + [tail])
    return LaurentMatrix(vars_, out)


def _with_u(A: LaurentMatrix) -> LaurentMatrix:
    return A.with_variables(("u",) + A.variables)


def presentation_matrix(S: LaurentMatrix) -> LaurentMatrix:
    """S - u [I | 0]."""
    S = _with_u(S)
    u = LaurentPoly.var(S.variables, "u")
    return LaurentMatrix(
        S.variables,
        [[S[i, j] - (u if i == j else 0) for j in range(S.cols)] for i in range(S.rows)],
    )


def gcd_of_maximal_minors(A: LaurentMatrix) -> LaurentPoly:
    minors = maximal_minors(A)
    # cheap minors first so the running gcd shrinks early
    g = poly_gcd_many(sorted((m for m in minors if m), key=len))
    if g is None or g.is_zero():
        raise DegenerateResult("all maximal minors vanish")
    return g


def step4_gcd_minors(S: LaurentMatrix, basis=()) -> TeichResult:
    g = gcd_of_maximal_minors(presentation_matrix(S))
    return TeichResult(g, "steps", tuple(tuple(x) for x in basis))


def teich_steps(A: OddBlockMatrix | IntegerMatrix, basis=None, p: PLMap | None = None) -> TeichResult:
    basis = fixed_eigenspace(A) if basis is None else basis
    p = chain_model(A) if p is None else p
    D = step2_push(step1_decorate(A, basis))
    return step4_gcd_minors(step3_replace(D, p), basis)


# Fox calculus

U = 0  # generator label of the stable letter; gamma_i is labelled i


def _abelian(gen: int, d: CoverDecoration) -> tuple[int, ...]:
    if gen == U:
        return (1,) + (0,) * d.b
    return (0,) + d.alpha[gen - 1]


def fox_derivative(word: GroupWord, gen: int, d: CoverDecoration) -> LaurentPoly:
    """Abelianized Fox derivative of a word in gamma_1..gamma_n and u (label 0)."""
    vars_ = ("u",) + d.variables
    acc = (0,) * (d.b + 1)
    out = LaurentPoly.zero(vars_)
    for g, s in word:
        if s > 0:
            if g == gen:
                out = out + _mono(vars_, acc)
            acc = _vadd(acc, _abelian(g, d))
        else:
            acc = tuple(x - y for x, y in zip(acc, _abelian(g, d)))
            if g == gen:
                out = out - _mono(vars_, acc)
    return out


def hnn_relations(L: LoopMap) -> tuple[GroupWord, ...]:
    """R_i = psi(gamma_i) u gamma_i^-1 u^-1."""
    return tuple(L.images[i - 1] + ((U, 1), (i, -1), (U, -1)) for i in range(1, L.n + 1))


def fox_alexander_matrix(L: LoopMap, d: CoverDecoration) -> LaurentMatrix:
    vars_ = ("u",) + d.variables
    rows = []
    for R in hnn_relations(L):
        rows.append([fox_derivative(R, j, d) for j in range(1, L.n + 1)] + [fox_derivative(R, U, d)])
    return LaurentMatrix(vars_, rows)


def teich_fox(A: OddBlockMatrix, basis=None, p: PLMap | None = None) -> TeichResult:
    basis = fixed_eigenspace(A) if basis is None else basis
    p = chain_model(A) if p is None else p
    t = build_train_track(p)
    d = cover_decoration(t, basis)
    F = fox_alexander_matrix(induced_loop_map(p, t), d)
    return TeichResult(gcd_of_maximal_minors(F), "fox", tuple(tuple(x) for x in basis))


# McMullen's quotient


def mcmullen_theta(E: LaurentMatrix, V: LaurentMatrix, basis=()) -> TeichResult:
    """det(uI - E) / det(uI - V), times (u - 1) when there are no t variables.

    The quotient is the order of the Alexander module.  With b >= 1 it equals
    the gcd of maximal minors; with b = 0 that gcd carries one more factor
    u - 1 (the minors are Delta * ([g] - 1) and every generator maps to 1).
    """
    num = char_poly_laurent(E)
    den = char_poly_laurent(V)
    if not E.variables:
        num = num * (LaurentPoly.var(num.variables, "u") - 1)
    q = num.exact_div(den)
    return TeichResult(q.canonical(), "mcmullen", tuple(tuple(x) for x in basis))


def teich_mcmullen(A: OddBlockMatrix, basis=None, p: PLMap | None = None) -> TeichResult:
    basis = fixed_eigenspace(A) if basis is None else basis
    p = chain_model(A) if p is None else p
    t = build_train_track(p)
    d = cover_decoration(t, basis)
    E = edge_transition_matrix(t, induced_edge_map(p), d)
    V = vertex_transition_matrix(t, p, d)
    return mcmullen_theta(E, V, basis)


ROUTES = {"steps": teich_steps, "fox": teich_fox, "mcmullen": teich_mcmullen}


def theta_for_model(p: PLMap, basis: Sequence[Sequence[int]], method: str) -> TeichResult:
    """Run one route from a row model alone.

    The routes never use the odd-block structure of M itself, only that of
    its transpose, so any valid {0,1} odd-block matrix can serve as a row
    model.  M is the transpose of its lap counts and basis must span the
    fixed vectors of M.
    """
    M = IntegerMatrix([list(r) for r in p.lap_counts]).T
    return ROUTES[method](M, basis, p)


def check_hypotheses(A: OddBlockMatrix, precision=Fraction(1, 10**30)) -> None:
    """Distinct consecutive widths and a complete alignment; raise otherwise."""
    p = build_pl_model(A)
    perron_data(A, precision)
    extend_alignment(alignment_seed(p), p)


def compute_all(
    A: OddBlockMatrix,
    methods: Iterable[str] = METHODS,
    precision=Fraction(1, 10**30),
    hypotheses: bool = True,
) -> CrossChecked:
    methods = tuple(methods)
    unknown = set(methods) - set(METHODS)
    if unknown or not methods:
        raise ValueError(f"methods must be a nonempty subset of {METHODS}")
    if not A.binary:
        raise HypothesisViolated("the polynomial routes need a {0,1} matrix; use convert first")
    if A.n % 2:
        raise HypothesisViolated(f"n = {A.n} is odd")
    if hypotheses:
        check_hypotheses(A, precision)
    basis = fixed_eigenspace(A)
    p = chain_model(A)
    results = {m: ROUTES[m](A, basis, p) for m in methods}
    polys = {m: r.poly for m, r in results.items()}
    first = polys[methods[0]]
    if any(q != first for q in polys.values()):
        listed = "; ".join(f"{m}: {render_polynomial(q)}" for m, q in polys.items())
        raise CrossCheckMismatch(f"routes disagree: {listed}")
    return CrossChecked(first, results, tuple(tuple(x) for x in basis), True)


# properties


def is_reciprocal(p: LaurentPoly) -> bool:
    """p(1/u, 1/t) is a signed monomial multiple of p."""
    a, b = p.canonical(), p.inverted().canonical()
    return a == b


def specialize_t(p: LaurentPoly) -> LaurentPoly:
    """Theta(u, 1, ..., 1) as a univariate polynomial in u."""
    q = p.substitute({v: 1 for v in p.variables[1:]})
    q = q.drop_variables(p.variables[1:])
    q = q.shift((-q.min_exponents()[0],))
    return -q if q.leading_term()[1] < 0 else q


def dilatation_enclosure(p: LaurentPoly, width) -> RationalInterval:
    return isolate_perron_root(specialize_t(p), width)


# rendering


def variable_names(p: LaurentPoly) -> list[str]:
    return ["x" if v == "u" else v for v in p.variables]


def display_form(p: LaurentPoly) -> LaurentPoly:
    """Associate used for printing: lowest u power 0, leading u-coefficient
    with lowest t powers 0 and a positive leading term."""
    if p.is_zero():
        return p
    p = p.shift((-p.min_exponents()[0],) + (0,) * (p.nvars - 1))
    coeffs = p.coefficients_in("u")
    lead = coeffs[max(coeffs)]
    shift = tuple(-x for x in lead.min_exponents())
    shift = (0,) + shift[1:]
    p = p.shift(shift)
    lead = lead.shift(shift)
    if lead.leading_term()[1] < 0:
        p = -p
    return p


def _t_key(exp):
    t = exp[1:]
    return (sum(t), t)


def _mono_str(names: Sequence[str], exp: Sequence[int]) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _inner(terms: list[tuple[tuple[int, ...], int]], tnames) -> str:
    out = []
    for k, (exp, c) in enumerate(terms):
        mono = _mono_str(tnames, exp[1:])
        mag = abs(c)
        body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def render_polynomial(p: LaurentPoly, normalize: bool = True) -> str:
    if p.is_zero():
        return "0"
    q = display_form(p) if normalize else p
    names = variable_names(q)
    tnames = names[1:]
    groups: dict[int, list] = {}
    for exp, c in q.terms.items():
        groups.setdefault(exp[0], []).append((exp, c))
    pieces = []
    for k in sorted(groups, reverse=True):
        terms = sorted(groups[k], key=lambda ec: _t_key(ec[0]), reverse=True)
        xpart = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if len(terms) == 1:
            (exp, c), = terms
            mono = _mono_str(tnames, exp[1:])
            factors = [f for f in (mono, xpart) if f]
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            pieces.append((c < 0, "*".join(factors)))
        else:
            negative = terms[0][1] < 0
            if negative:
                terms = [(e, -c) for e, c in terms]
            body = "(" + _inner(terms, tnames) + ")"
            pieces.append((negative, body + ("*" + xpart if xpart else "")))
    out = []
    for k, (neg, body) in enumerate(pieces):
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def polynomial_json(p: LaurentPoly) -> dict:
    variables = list(p.variables)
    terms = [
        {"coeff": str(c), "exp": list(e)}
        for e, c in sorted(p.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)
    ]
    return {"variables": variables, "terms": terms, "string": render_polynomial(p)}

"""Multivariate Laurent polynomials with integer coefficients.

A polynomial is a map from exponent tuples to nonzero ints.  Exponents may be
negative; units of the ring are the signed monomials.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Mapping, Sequence

from ..errors import InexactDivision

Exponent = tuple[int, ...]


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple([x + y for x, y in zip(a, b)])


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple([x - y for x, y in zip(a, b)])


class LaurentPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, int] | None = None):
        self.variables = tuple(variables)
        k = len(self.variables)
        clean: dict[Exponent, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != k:
                raise ValueError(f"exponent {exp} does not match variables {self.variables}")
            c = int(c)
            if c:
                clean[exp] = c
        self.terms = clean

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exponent, int]) -> "LaurentPoly":
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        return p

    # constructors

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "LaurentPoly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Sequence[str], c: int) -> "LaurentPoly":
        variables = tuple(variables)
        return cls._raw(variables, {(0,) * len(variables): int(c)} if c else {})

    @classmethod
    def one(cls, variables: Sequence[str]) -> "LaurentPoly":
        return cls.constant(variables, 1)

    @classmethod
    def monomial(cls, variables: Sequence[str], exp: Sequence[int], c: int = 1) -> "LaurentPoly":
        variables = tuple(variables)
        exp = tuple(int(e) for e in exp)
        if len(exp) != len(variables):
            raise ValueError("exponent length mismatch")
        return cls._raw(variables, {exp: int(c)} if c else {})

    @classmethod
    def var(cls, variables: Sequence[str], name: str, power: int = 1) -> "LaurentPoly":
        variables = tuple(variables)
        exp = [0] * len(variables)
        exp[variables.index(name)] = power
        return cls._raw(variables, {tuple(exp): 1})

    # basic queries

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def min_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self.terms))

    def max_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(col) for col in zip(*self.terms))

    def degree(self, name: str) -> int:
        k = self.variables.index(name)
        return max(e[k] for e in self.terms) if self.terms else -1

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.terms == ({(0,) * self.nvars: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPoly({self.variables}, {dict(sorted(self.terms.items()))})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(self.variables, exp) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch {self.variables} vs {other.variables}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.variables, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.variables, out)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.variables, out)

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero(self.variables)
            return LaurentPoly._raw(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        return LaurentPoly._raw(self.variables, _mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only exist for monomials")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("negative powers only exist for units")
            return LaurentPoly._raw(self.variables, {tuple(-x * -k for x in e): c ** (-k)})
        result = LaurentPoly.one(self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with exponent `exp`."""
        exp = tuple(exp)
        return LaurentPoly._raw(self.variables, {_add_exp(e, exp): c for e, c in self.terms.items()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return LaurentPoly.zero(self.variables)
        ma, mb = self.min_exponents(), other.min_exponents()
        a = {_sub_exp(e, ma): c for e, c in self.terms.items()}
        b = {_sub_exp(e, mb): c for e, c in other.terms.items()}
        q = _poly_divide(a, b)
        if q is None:
            raise InexactDivision(f"({self}) is not divisible by ({other})")
        return LaurentPoly._raw(self.variables, q).shift(_sub_exp(ma, mb))

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.exact_div(self)
        except InexactDivision:
            return False
        return True

    # substitutions

    def substitute(self, values: Mapping[str, int | Fraction]) -> "LaurentPoly":
        """Set some variables to nonzero rational numbers; result keeps the variable list."""
        idx = {self.variables.index(name): Fraction(v) for name, v in values.items()}
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            coeff = Fraction(c)
            for k, v in idx.items():
                coeff *= v ** e[k]
            key = tuple(0 if k in idx else x for k, x in enumerate(e))
            out[key] = out.get(key, 0) + coeff
        if any(c.denominator != 1 for c in out.values()):
            raise ValueError("substitution produced non-integer coefficients")
        return LaurentPoly(self.variables, {e: int(c) for e, c in out.items()})

    def evaluate(self, values: Mapping[str, int | Fraction]) -> Fraction:
        point = [Fraction(values[name]) for name in self.variables]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for v, k in zip(point, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def with_variables(self, variables: Sequence[str]) -> "LaurentPoly":
        """Re-embed into a larger (or reordered) variable list."""
        variables = tuple(variables)
        pos = [variables.index(name) for name in self.variables]
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for k, x in zip(pos, e):
                new[k] = x
            out[tuple(new)] = c
        return LaurentPoly._raw(variables, out)

    def drop_variables(self, names: Iterable[str]) -> "LaurentPoly":
        """Project away variables that do not occur."""
        names = set(names)
        keep = [k for k, name in enumerate(self.variables) if name not in names]
        out: dict[Exponent, int] = {}
        for e, c in self.terms.items():
            if any(e[k] for k in range(len(e)) if k not in keep):
                raise ValueError("cannot drop a variable that occurs")
            out[tuple(e[k] for k in keep)] = c
        return LaurentPoly._raw(tuple(self.variables[k] for k in keep), out)

    def inverted(self) -> "LaurentPoly":
        """p(1/u, 1/t1, ...)."""
        return LaurentPoly._raw(self.variables, {tuple(-x for x in e): c for e, c in self.terms.items()})

    def coefficients_in(self, name: str) -> dict[int, "LaurentPoly"]:
        """Group terms by the exponent of one variable."""
        k = self.variables.index(name)
        out: dict[int, dict[Exponent, int]] = {}
        for e, c in self.terms.items():
            out.setdefault(e[k], {})[e[:k] + (0,) + e[k + 1:]] = c
        return {d: LaurentPoly._raw(self.variables, t) for d, t in out.items()}

    def univariate_coeffs(self) -> list[int]:
        """Dense coefficients, highest degree first, of a polynomial in one variable."""
        if self.nvars != 1:
            raise ValueError("not univariate")
        if not self.terms:
            return [0]
        if self.min_exponents()[0] < 0:
            raise ValueError("negative exponent in univariate coefficient list")
        deg = self.max_exponents()[0]
        return [self.terms.get((d,), 0) for d in range(deg, -1, -1)]

    # normalization

    def leading_term(self) -> tuple[Exponent, int]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def canonical(self) -> "LaurentPoly":
        """Unit-normalized associate: minimum exponents 0, positive graded-lex leading coefficient."""
        if not self.terms:
            return self
        p = self.shift(tuple(-m for m in self.min_exponents()))
        if p.leading_term()[1] < 0:
            p = -p
        return p

    def is_associate(self, other: "LaurentPoly") -> bool:
        return self.canonical() == other.canonical()

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = _igcd(g, c)
        return g


def _grlex_key(exp: Exponent):
    return (sum(exp), exp)


def _mul_terms(a: dict[Exponent, int], b: dict[Exponent, int]) -> dict[Exponent, int]:
    if len(a) < len(b):
        a, b = b, a
    out: dict[Exponent, int] = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _poly_divide(a: dict[Exponent, int], b: dict[Exponent, int]) -> dict[Exponent, int] | None:
    """Exact division of ordinary polynomials; None when it does not go through."""
    lb = max(b)
    cb = b[lb]
    r = dict(a)
    q: dict[Exponent, int] = {}
    while r:
        lr = max(r)
        cr = r[lr]
        if cr % cb or any(x < y for x, y in zip(lr, lb)):
            return None
        qe = _sub_exp(lr, lb)
        qc = cr // cb
        q[qe] = qc
        for e, c in b.items():
            key = _add_exp(e, qe)
            s = r.get(key, 0) - qc * c
            if s:
                r[key] = s
            else:
                r.pop(key, None)
    return q


def poly_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "exact_div":
        return a.exact_div(b)
    raise ValueError(f"unknown operation {op!r}")


# gcd by primitive pseudo-remainder sequences, one variable at a time.
# Polynomials here are plain dicts with nonnegative exponents.


def _deg(p: dict, k: int) -> int:
    return max(e[k] for e in p)


def _coeff(p: dict, k: int, d: int) -> dict:
    return {e[:k] + (0,) + e[k + 1:]: c for e, c in p.items() if e[k] == d}


def _split(p: dict, k: int) -> dict[int, dict]:
    out: dict[int, dict] = {}
    for e, c in p.items():
        out.setdefault(e[k], {})[e[:k] + (0,) + e[k + 1:]] = c
    return out


def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _shift_var(p: dict, k: int, d: int) -> dict:
    return {e[:k] + (e[k] + d,) + e[k + 1:]: c for e, c in p.items()}


def _normalize_sign(p: dict) -> dict:
    if p and p[max(p)] < 0:
        return {e: -c for e, c in p.items()}
    return p


def _exquo(a: dict, b: dict) -> dict:
    q = _poly_divide(a, b)
    if q is None:
        raise InexactDivision("internal gcd division failed")
    return q


def _content(p: dict, k: int, rest: tuple[int, ...]) -> dict:
    g: dict = {}
    for coeff in sorted(_split(p, k).values(), key=len):
        g = _gcd_rec(g, coeff, rest)
        if len(g) == 1 and abs(next(iter(g.values()))) == 1 and not any(next(iter(g))):
            break
    return g


def _prem(a: dict, b: dict, k: int) -> dict:
    db = _deg(b, k)
    lcb = _coeff(b, k, db)
    r = a
    while r:
        dr = _deg(r, k)
        if dr < db:
            break
        lcr = _coeff(r, k, dr)
        r = _sub(_mul_terms(lcb, r), _mul_terms(_shift_var(lcr, k, dr - db), b))
    return r


def _gcd_rec(a: dict, b: dict, order: tuple[int, ...]) -> dict:
    if not a:
        return _normalize_sign(b)
    if not b:
        return _normalize_sign(a)
    if not order:
        (ea, ca), = a.items()
        (_, cb), = b.items()
        return {ea: _igcd(ca, cb)}
    k, rest = order[0], order[1:]
    if all(e[k] == 0 for e in a) and all(e[k] == 0 for e in b):
        return _gcd_rec(a, b, rest)
    ca = _content(a, k, rest)
    cb = _content(b, k, rest)
    g_cont = _gcd_rec(ca, cb, rest)
    pa = _exquo(a, ca)
    pb = _exquo(b, cb)
    if _deg(pa, k) < _deg(pb, k):
        pa, pb = pb, pa
    while True:
        if _deg(pb, k) == 0:
            return _normalize_sign(g_cont)
        r = _prem(pa, pb, k)
        if not r:
            break
        r = _exquo(r, _content(r, k, rest))
        pa, pb = pb, r
    return _normalize_sign(_mul_terms(g_cont, _normalize_sign(pb)))


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd in the Laurent ring, returned in canonical form."""
    if a.variables != b.variables:
        raise ValueError("variable mismatch")
    if a.is_zero():
        return b.canonical()
    if b.is_zero():
        return a.canonical()
    ma, mb = a.min_exponents(), b.min_exponents()
    pa = {_sub_exp(e, ma): c for e, c in a.terms.items()}
    pb = {_sub_exp(e, mb): c for e, c in b.terms.items()}
    # u (variables[0]) is the outermost variable; t's live in the coefficient ring
    order = (0,) + tuple(range(a.nvars - 1, 0, -1)) if a.nvars else ()
    g = _gcd_rec(pa, pb, order)
    return LaurentPoly._raw(a.variables, g).canonical()


def poly_gcd_many(polys: Iterable[LaurentPoly]) -> LaurentPoly | None:
    g = None
    for p in polys:
        g = p.canonical() if g is None else poly_gcd(g, p)
        if g.is_constant() and not g.is_zero():
            break
    return g

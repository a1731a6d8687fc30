"""Sparse Laurent polynomials in x_1..x_n with :class:`Scalar` coefficients."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import flint

from .scalars import DEFAULT_GENERATORS, GeneratorSet, Scalar

__all__ = ["LaurentPoly", "NonExactDivision", "MAX_EXPONENT", "bar", "constant_term", "exact_divide"]

MAX_EXPONENT = 2**40


class NonExactDivision(ArithmeticError):
    """The divisor does not divide the dividend in the Laurent ring."""


def _as_scalar(c, gens: GeneratorSet = DEFAULT_GENERATORS) -> Scalar:
    return c if isinstance(c, Scalar) else Scalar(c, gens=gens)


def _check_exps(e: tuple[int, ...]):
    for a in e:
        if abs(a) > MAX_EXPONENT:
            raise OverflowError(f"exponent {a} exceeds {MAX_EXPONENT}")


class LaurentPoly:
    """Immutable map from exponent vectors to nonzero Scalars."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not have length {n}")
            if not isinstance(c, Scalar):
                c = Scalar(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _trusted(cls, n: int, terms: dict) -> LaurentPoly:
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    # -- constructors ----------------------------------------------------
    @classmethod
    def constant(cls, n: int, c=1) -> LaurentPoly:
        return cls(n, {(0,) * n: _as_scalar(c)})

    @classmethod
    def monomial(cls, n: int, e: Sequence[int], c=1) -> LaurentPoly:
        return cls(n, {tuple(e): _as_scalar(c)})

    @classmethod
    def variable(cls, n: int, i: int) -> LaurentPoly:
        return cls.monomial(n, tuple(int(k == i) for k in range(n)))

    # -- basic queries ---------------------------------------------------
    @property
    def gens(self) -> GeneratorSet:
        g = None
        for c in self.terms.values():
            g = c.gens if g is None else g.merge(c.gens)
        return g or DEFAULT_GENERATORS

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, e) -> Scalar:
        return self.terms.get(tuple(e), Scalar(0, gens=self.gens))

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.terms)

    def items(self):
        return sorted(self.terms.items())

    # -- ring operations -------------------------------------------------
    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.n != self.n:
                raise ValueError(f"rank mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return LaurentPoly.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return LaurentPoly._trusted(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._trusted(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> LaurentPoly:
        c = _as_scalar(c, self.gens)
        if not c:
            return LaurentPoly(self.n)
        return LaurentPoly._trusted(self.n, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                acc[e] = acc[e] + p if e in acc else p
        return LaurentPoly(self.n, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = LaurentPoly.constant(self.n, Scalar(1, gens=self.gens))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            other = LaurentPoly.constant(self.n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and (self - other).is_zero()

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # -- involutions and substitutions ----------------------------------
    def bar(self) -> LaurentPoly:
        return LaurentPoly._trusted(self.n, {tuple(-a for a in e): c for e, c in self.terms.items()})

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.n, Scalar(0, gens=self.gens))

    def substitute_monomial(self, scale: Sequence | None = None, flip: Sequence[int] | None = None,
                            perm: Sequence[int] | None = None) -> LaurentPoly:
        """x_i -> scale_i * x_{perm_i}^{flip_i}; defaults are the identity."""
        n = self.n
        scale = [None if s is None or s == 1 else _as_scalar(s) for s in (scale or [None] * n)]
        for s in scale:
            if s is not None and not s:
                raise ValueError("zero scale in monomial substitution")
        flip = list(flip or [1] * n)
        perm = list(perm or range(n))
        out: dict = {}
        for e, c in self.terms.items():
            new = [0] * n
            coef = c
            for i, a in enumerate(e):
                if a and scale[i] is not None:
                    coef = coef * scale[i] ** a
                new[perm[i]] += flip[i] * a
            new = tuple(new)
            _check_exps(new)
            out[new] = out[new] + coef if new in out else coef
        return LaurentPoly(n, out)

    def map_coeffs(self, fn) -> LaurentPoly:
        return LaurentPoly(self.n, {e: fn(c) for e, c in self.terms.items()})

    def subs(self, mapping: Mapping[str, object]) -> LaurentPoly:
        """Substitute generators inside every coefficient."""
        return self.map_coeffs(lambda c: c.subs(mapping))

    def evaluate(self, values: Sequence) -> Scalar:
        """Substitute x_i = values[i] (Scalars or numbers)."""
        if len(values) != self.n:
            raise ValueError("need one value per variable")
        vals = [_as_scalar(v, self.gens) for v in values]
        cache: dict = {}
        total = Scalar(0, gens=self.gens)
        for e, c in self.terms.items():
            term = c
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    if key not in cache:
                        cache[key] = vals[i] ** a
                    term = term * cache[key]
            total = total + term
        return total

    def principal_specialize(self, base, t=None) -> Scalar:
        """Evaluate at x_i = t^(n-i) * base (t defaults to the generator t = st^2)."""
        if t is None:
            t = DEFAULT_GENERATORS.gen("st") ** 2
        base = _as_scalar(base)
        return self.evaluate([t ** (self.n - 1 - i) * base for i in range(self.n)])

    def exact_divide(self, other: LaurentPoly) -> LaurentPoly:
        return exact_divide(self, other)

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        gens = self.gens
        return {
            "rank": self.n,
            "gens": list(gens.names),
            "terms": [[list(e), c.promote(gens).to_json()] for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> LaurentPoly:
        gens = GeneratorSet(tuple(data["gens"]))
        return cls(data["rank"], {tuple(e): Scalar.from_json(c).promote(gens) for e, c in data["terms"]})

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(0)"
        body = " + ".join(f"({c})*x^{list(e)}" for e, c in self.items())
        return f"LaurentPoly({body})"


def bar(f: LaurentPoly) -> LaurentPoly:
    return f.bar()


def constant_term(f: LaurentPoly) -> Scalar:
    return f.constant_term()


# -- FLINT bridge ---------------------------------------------------------
@lru_cache(maxsize=None)
def xctx(n: int, names: tuple[str, ...]):
    """Integer polynomial ring in x_1..x_n followed by the coefficient generators."""
    return flint.fmpz_mpoly_ctx.get(tuple(f"x{i + 1}" for i in range(n)) + names, "deglex")


def _lcm(a, b):
    return a * (b / a.gcd(b))


def to_flint(f: LaurentPoly, gens: GeneratorSet):
    """Return (poly, shift, den) with f = poly * x^(-shift) / den, poly in Z[x, gens]."""
    n = f.n
    ctx = xctx(n, gens.names)
    if not f.terms:
        return ctx.from_dict({}), (0,) * n, gens.ctx.from_dict({(0,) * len(gens.names): 1})
    shift = tuple(-min(min(e[i] for e in f.terms), 0) for i in range(n))
    coeffs = {e: c.promote(gens) for e, c in f.terms.items()}
    den = None
    for c in coeffs.values():
        den = c.den if den is None else _lcm(den, c.den)
    out = {}
    for e, c in coeffs.items():
        scaled = c.num * (den / c.den)
        xe = tuple(a + s for a, s in zip(e, shift))
        for ge, v in scaled.terms():
            out[xe + tuple(ge)] = int(v)
    return ctx.from_dict(out), shift, den


def from_flint(n: int, gens: GeneratorSet, poly, shift: Sequence[int], den=None,
               sq_shift: int = 0) -> LaurentPoly:
    """Inverse of :func:`to_flint`; ``sq_shift`` divides every coefficient by sq^sq_shift."""
    groups: dict = {}
    for exps, v in poly.terms():
        xe = tuple(a - s for a, s in zip(exps[:n], shift))
        groups.setdefault(xe, {})[tuple(exps[n:])] = int(v)
    if den is None:
        den = gens.ctx.from_dict({(0,) * len(gens.names): 1})
    if sq_shift:
        idx = gens.names.index("sq")
        den = den * gens.ctx.from_dict({tuple(sq_shift if i == idx else 0 for i in range(len(gens.names))): 1})
    out = {}
    for xe, d in groups.items():
        out[xe] = Scalar.from_polys(gens.ctx.from_dict(d), den, gens)
    return LaurentPoly._trusted(n, out)


def x_content(poly, n: int, gens: GeneratorSet):
    """Split poly in Z[x, gens] as content(gens) * primitive part with respect to x."""
    groups: dict = {}
    for exps, v in poly.terms():
        groups.setdefault(tuple(exps[:n]), {})[tuple(exps[n:])] = int(v)
    g = None
    for d in groups.values():
        p = gens.ctx.from_dict(d)
        g = p if g is None else g.gcd(p)
        if g.is_one():
            break
    return g


def _lift(p, n: int, ctx):
    """Embed a polynomial in the generators into Z[x, gens]."""
    return ctx.from_dict({(0,) * n + tuple(e): int(v) for e, v in p.terms()})


def exact_divide(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """h with g*h = f; raises NonExactDivision otherwise."""
    if g.n != f.n:
        raise ValueError("rank mismatch")
    if g.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if f.is_zero():
        return LaurentPoly(f.n)
    n = f.n
    gens = f.gens.merge(g.gens)
    ctx = xctx(n, gens.names)
    pf, sf, df = to_flint(f, gens)
    pg, sg, dg = to_flint(g, gens)
    # Strip the monomial content of g so that Laurent divisibility is polynomial divisibility.
    mono = [min(e[i] for e in pg.monoms()) for i in range(n)]
    if any(mono):
        pg = pg / ctx.from_dict({tuple(mono) + (0,) * len(gens.names): 1})
        sg = tuple(s - m for s, m in zip(sg, mono))
    cont = x_content(pg, n, gens)
    if not cont.is_one():
        pg = pg / _lift(cont, n, ctx)
    try:
        q = pf / pg
    except Exception as exc:  # flint raises DomainError on a nonzero remainder
        raise NonExactDivision(f"{g} does not divide {f}") from exc
    shift = tuple(a - b for a, b in zip(sf, sg))
    # f/g = (q x^-sf / df) / (x^-sg cont / dg) = q * dg / (df * cont) * x^-(sf - sg)
    h = from_flint(n, gens, q, (0,) * n)
    factor = Scalar.from_polys(dg, df * cont, gens)
    out = {tuple(a - s for a, s in zip(e, shift)): c * factor for e, c in h.terms.items()}
    return LaurentPoly(n, out)

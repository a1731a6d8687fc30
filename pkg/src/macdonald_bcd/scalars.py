"""Exact coefficient field: reduced rational functions over Q.

Generators are square roots (``sq`` is q^(1/2), ``st`` is t^(1/2), ...), so
half-integer powers of q, t and T stay polynomial.  Polynomials are backed by
FLINT's multivariate integer polynomials; a :class:`Scalar` is a pair of
coprime integer polynomials whose denominator has a positive leading
coefficient in graded-lexicographic order.  That normal form is unique, so
equality is structural.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import flint

__all__ = [
    "DEFAULT_GENERATORS",
    "DegenerateSample",
    "GeneratorSet",
    "Scalar",
    "eval_rational",
    "poly_record",
    "qpoch",
    "qpoch_multi",
]


class DegenerateSample(ZeroDivisionError):
    """A parameter choice hit a pole; callers resample or reject."""


@lru_cache(maxsize=None)
def _ctx(names: tuple[str, ...]):
    return flint.fmpz_mpoly_ctx.get(names, "deglex")


@lru_cache(maxsize=None)
def _qctx(names: tuple[str, ...]):
    return flint.fmpq_mpoly_ctx.get(names, "deglex")


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered generator names; the order fixes the monomial order."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names in {self.names}")
        if not self.names:
            raise ValueError("a generator set needs at least one name")

    @property
    def ctx(self):
        return _ctx(self.names)

    def extend(self, *extra: str) -> GeneratorSet:
        return GeneratorSet(self.names + tuple(e for e in extra if e not in self.names))

    def merge(self, other: GeneratorSet) -> GeneratorSet:
        if other.names == self.names:
            return self
        return self.extend(*other.names)

    def gen(self, name: str) -> Scalar:
        i = self.names.index(name)
        return Scalar._raw(self, self.ctx.gens()[i], self.ctx.from_dict({(0,) * len(self.names): 1}))

    def gens(self) -> tuple[Scalar, ...]:
        return tuple(self.gen(n) for n in self.names)

    def one(self) -> Scalar:
        return Scalar(1, gens=self)

    def zero(self) -> Scalar:
        return Scalar(0, gens=self)

    def __contains__(self, name: str) -> bool:
        return name in self.names


DEFAULT_GENERATORS = GeneratorSet(("sq", "st", "sT"))

Number = Union[int, Fraction]


def _remap(poly, src: GeneratorSet, dst: GeneratorSet):
    if src.names == dst.names:
        return poly
    idx = [dst.names.index(n) for n in src.names]
    width = len(dst.names)
    out = {}
    for exps, c in poly.terms():
        e = [0] * width
        for i, k in zip(idx, exps):
            e[i] = k
        out[tuple(e)] = c
    return dst.ctx.from_dict(out)


class Scalar:
    """Element of Q(generators) in reduced form.

    Instances are immutable; arithmetic accepts ints and Fractions, and
    promotes across generator sets by merging the name lists.
    """

    __slots__ = ("gens", "num", "den", "_hash")

    def __init__(self, value=0, den=None, gens: GeneratorSet = DEFAULT_GENERATORS):
        ctx = gens.ctx
        if isinstance(value, Scalar):
            value = value.promote(gens)
            num, d = value.num, value.den
        elif isinstance(value, (int, Fraction)) or hasattr(value, "numerator"):
            fr = Fraction(value)
            num = ctx.from_dict({(0,) * len(gens.names): fr.numerator}) if fr else ctx.from_dict({})
            d = ctx.from_dict({(0,) * len(gens.names): fr.denominator})
        else:
            num = value
            d = ctx.from_dict({(0,) * len(gens.names): 1})
        if den is not None:
            den = den.promote(gens) if isinstance(den, Scalar) else Scalar(den, gens=gens)
            num, d = num * den.den, d * den.num
        self.gens = gens
        self.num, self.den = _normalize(num, d)
        self._hash = None

    @classmethod
    def _raw(cls, gens: GeneratorSet, num, den) -> Scalar:
        obj = object.__new__(cls)
        obj.gens = gens
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_polys(cls, num, den, gens: GeneratorSet) -> Scalar:
        n, d = _normalize(num, den)
        return cls._raw(gens, n, d)

    # -- coercion -------------------------------------------------------
    def promote(self, gens: GeneratorSet) -> Scalar:
        if gens.names == self.gens.names:
            return self
        missing = [n for n in self.gens.names if n not in gens.names]
        if missing:
            if self.degrees_in(missing):
                raise ValueError(f"cannot drop generators {missing} occurring in {self}")
            src = self.gens
            keep = [i for i, n in enumerate(src.names) if n in gens.names]
            sub = GeneratorSet(tuple(src.names[i] for i in keep))
            num = sub.ctx.from_dict({tuple(e[i] for i in keep): c for e, c in self.num.terms()})
            den = sub.ctx.from_dict({tuple(e[i] for i in keep): c for e, c in self.den.terms()})
            return Scalar._raw(gens, _remap(num, sub, gens), _remap(den, sub, gens))
        return Scalar._raw(gens, _remap(self.num, self.gens, gens), _remap(self.den, self.gens, gens))

    def degrees_in(self, names: Iterable[str]) -> bool:
        names = set(names)
        idx = [i for i, n in enumerate(self.gens.names) if n in names]
        for poly in (self.num, self.den):
            for e in poly.monoms():
                if any(e[i] for i in idx):
                    return True
        return False

    def _pair(self, other):
        if isinstance(other, Scalar):
            if other.gens.names == self.gens.names:
                return self, other
            g = self.gens.merge(other.gens)
            return self.promote(g), other.promote(g)
        if isinstance(other, (int, Fraction)):
            return self, Scalar(other, gens=self.gens)
        return NotImplemented, NotImplemented

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        n = int(self.num.leading_coefficient()) if not self.num.is_zero() else 0
        return Fraction(n, int(self.den.leading_coefficient()))

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        if b.num.is_zero():
            return a
        if a.num.is_zero():
            return b
        if a.den == b.den:
            if a.den.is_one():
                return Scalar._raw(a.gens, a.num + b.num, a.den)
            return Scalar.from_polys(a.num + b.num, a.den, a.gens)
        return Scalar.from_polys(a.num * b.den + b.num * a.den, a.den * b.den, a.gens)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.gens, -self.num, self.den)

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        if a.num.is_zero() or b.num.is_zero():
            return Scalar._raw(a.gens, a.gens.ctx.from_dict({}), _one(a.gens))
        if a.den.is_one() and b.den.is_one():
            return Scalar._raw(a.gens, a.num * b.num, a.den)
        g1 = a.num.gcd(b.den)
        g2 = b.num.gcd(a.den)
        num = (a.num / g1) * (b.num / g2)
        den = (a.den / g2) * (b.den / g1)
        return Scalar._raw(a.gens, *_sign(num, den))

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if self.num.is_zero():
            raise DegenerateSample("division by zero Scalar")
        return Scalar._raw(self.gens, *_sign(self.den, self.num))

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar._raw(self.gens, self.num**k, self.den**k)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if other.gens.names != self.gens.names:
                a, b = self._pair(other)
                return a.num == b.num and a.den == b.den
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.to_fraction() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((self.gens.names, str(self.num), str(self.den)))
        return self._hash

    # -- substitution and evaluation -------------------------------------
    def subs(self, mapping: Mapping[str, object]) -> Scalar:
        """Substitute generators by Scalars (or numbers); other generators stay."""
        if not mapping:
            return self
        vals = {}
        target = self.gens
        for k, v in mapping.items():
            if k not in self.gens.names:
                continue
            v = v if isinstance(v, Scalar) else Scalar(v, gens=self.gens)
            vals[k] = v
            target = target.merge(v.gens)
        if not vals:
            return self
        images = [vals[n].promote(target) if n in vals else target.gen(n) for n in self.gens.names]
        if all(im.den.is_one() for im in images):
            polys = [im.num for im in images]
            num = self.num.compose(*polys, ctx=target.ctx)
            den = self.den.compose(*polys, ctx=target.ctx)
            if den.is_zero():
                raise DegenerateSample(f"substitution {mapping} annihilates the denominator of {self}")
            return Scalar.from_polys(num, den, target)
        return _eval_terms(self.num, images, target) / _eval_terms(self.den, images, target)

    def evaluate(self, assignment: Mapping[str, Number]) -> Fraction:
        return eval_rational(self, assignment)

    # -- presentation ----------------------------------------------------
    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def to_json(self) -> dict:
        return {"num": poly_record(self.num, self.gens), "den": poly_record(self.den, self.gens)}

    @classmethod
    def from_json(cls, data: dict) -> Scalar:
        gens = GeneratorSet(tuple(data["num"]["gens"]))
        num = _poly_from_record(data["num"], gens)
        den = _poly_from_record(data["den"], gens)
        return cls.from_polys(num, den, gens)

    def __reduce__(self):
        return (Scalar.from_json, (self.to_json(),))


def _one(gens: GeneratorSet):
    return gens.ctx.from_dict({(0,) * len(gens.names): 1})


def _sign(num, den):
    if den.leading_coefficient() < 0:
        return -num, -den
    return num, den


def _normalize(num, den):
    if den.is_zero():
        raise DegenerateSample("zero denominator")
    if num.is_zero():
        return num, den.context().from_dict({(0,) * den.context().nvars(): 1})
    if den.is_one():
        return num, den
    g = num.gcd(den)
    if not g.is_one():
        num = num / g
        den = den / g
    return _sign(num, den)


def _eval_terms(poly, images: list[Scalar], gens: GeneratorSet) -> Scalar:
    total = Scalar(0, gens=gens)
    powers: dict[tuple[int, int], Scalar] = {}
    for exps, c in poly.terms():
        term = Scalar(int(c), gens=gens)
        for i, e in enumerate(exps):
            if e:
                key = (i, e)
                if key not in powers:
                    powers[key] = images[i] ** e
                term = term * powers[key]
        total = total + term
    return total


def poly_record(poly, gens: GeneratorSet) -> dict:
    """Canonical record: generator names plus terms sorted in deglex order."""
    terms = sorted(((tuple(int(a) for a in e), int(c)) for e, c in poly.terms()), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    return {"gens": list(gens.names), "terms": [[list(e), str(c), "1"] for e, c in terms]}


def _poly_from_record(rec: dict, gens: GeneratorSet):
    out = {}
    for e, n, d in rec["terms"]:
        if d != "1":
            raise ValueError("integer polynomial records carry denominator 1")
        out[tuple(e)] = int(n)
    return gens.ctx.from_dict(out)


def eval_rational(s: Scalar, assignment: Mapping[str, Number]) -> Fraction:
    """Evaluate ``s`` at a rational point; a vanishing denominator raises DegenerateSample."""
    names = s.gens.names
    used = [n for n in names if s.degrees_in([n])]
    missing = [n for n in used if n not in assignment]
    if missing:
        raise KeyError(f"assignment misses generators {missing}")
    qctx = _qctx(names)
    vals = []
    for n in names:
        v = Fraction(assignment.get(n, 0))
        vals.append(flint.fmpq(v.numerator, v.denominator))
    den = qctx.from_dict({e: int(c) for e, c in s.den.terms()})(*vals)
    if den == 0:
        raise DegenerateSample(f"denominator of {s} vanishes at {dict(assignment)}")
    num = qctx.from_dict({e: int(c) for e, c in s.num.terms()})(*vals) if not s.num.is_zero() else flint.fmpq(0)
    val = num / den
    return Fraction(int(val.p), int(val.q))


def qpoch(x, q, k: int):
    """(x;q)_k = prod_{i<k} (1 - x q^i) for any field element type."""
    if k < 0:
        raise ValueError("negative Pochhammer length")
    result = x**0
    xi = x
    for _ in range(k):
        result = result * (1 - xi)
        xi = xi * q
    return result


def qpoch_multi(xs, q, k: int):
    """(a_1, ..., a_r; q)_k."""
    result = 1
    for x in xs:
        result = result * qpoch(x, q, k)
    return result

"""Root data for types B, C, D: roots, Weyl group, dominance, orbit sums."""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator

from .laurent import LaurentPoly
from .scalars import DEFAULT_GENERATORS, GeneratorSet, Scalar

__all__ = [
    "READINGS",
    "OrbitExpansion",
    "Root",
    "RootSystem",
    "build",
    "dominance_leq",
    "dominant_representative",
    "is_dominant",
    "lower_dominant_set",
    "minuscule_pi",
    "orbit_sum",
    "rho_vectors",
    "weyl_orbit",
]

SHORT, LONG = "t", "T"

# Readings of the type D condition "sum_{i<n} d_i +/- d_n in 2N".
READINGS = ("both", "some")


@dataclass(frozen=True)
class Root:
    vector: tuple[int, ...]
    length_class: str  # "t" or "T"

    def pair(self, v) -> Fraction:
        return sum((Fraction(a) * b for a, b in zip(self.vector, v)), Fraction(0))

    @property
    def norm2(self) -> int:
        return sum(a * a for a in self.vector)

    @property
    def coroot(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(2 * a, self.norm2) for a in self.vector)


@dataclass(frozen=True)
class RootSystem:
    """Type tag and rank; everything else is derived and cached."""

    type: str
    n: int

    def __str__(self):
        return f"{self.type}{self.n}"

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        n = self.n
        roots = []
        for i in range(n):
            for j in range(i + 1, n):
                for s in (-1, 1):
                    v = [0] * n
                    v[i], v[j] = 1, s
                    roots.append(Root(tuple(v), SHORT))
        if self.type == "C":
            roots += [Root(tuple(2 if k == i else 0 for k in range(n)), LONG) for i in range(n)]
        elif self.type == "B":
            roots += [Root(tuple(1 if k == i else 0 for k in range(n)), LONG) for i in range(n)]
        return tuple(roots)

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        neg = tuple(Root(tuple(-a for a in r.vector), r.length_class) for r in self.positive_roots)
        return self.positive_roots + neg

    @property
    def has_long_parameter(self) -> bool:
        return self.type in ("B", "C")

    @cached_property
    def weyl_order(self) -> int:
        f = 1
        for k in range(2, self.n + 1):
            f *= k
        return f * 2 ** (self.n - (self.type == "D"))

    def weyl_group(self) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Yield (perm, signs): w(v)_i = signs[i] * v[perm[i]]."""
        for perm in itertools.permutations(range(self.n)):
            for signs in itertools.product((1, -1), repeat=self.n):
                if self.type == "D" and signs.count(-1) % 2:
                    continue
                yield perm, signs

    @staticmethod
    def act(w, v):
        perm, signs = w
        return tuple(s * v[p] for s, p in zip(signs, perm))

    @cached_property
    def is_reducible(self) -> bool:
        return self.type == "D" and self.n == 2

    @property
    def id(self) -> str:
        return f"{self.type}{self.n}"


def build(type: str, n: int, allow_rank_one: bool = False) -> RootSystem:
    """Construct the root datum.  Rank one (B1, C1) needs an explicit opt-in."""
    type = type.upper()
    if type not in ("B", "C", "D"):
        raise ValueError(f"unsupported root system type {type!r}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"unsupported rank {n!r}")
    if n == 1 and not (allow_rank_one and type in ("B", "C")):
        raise ValueError(f"rank 1 is not supported for type {type}")
    R = RootSystem(type, n)
    if R.is_reducible:
        warnings.warn("D2 is reducible (A1 x A1); results are smoke tests only", stacklevel=2)
    pi = minuscule_pi(R)[0]
    for a in R.positive_roots:
        if a.pair(pi) not in (0, 1):
            raise AssertionError(f"{pi} is not minuscule for {R}: <pi,{a.vector}> = {a.pair(pi)}")
    return R


def _system(R_or_type, n=None) -> RootSystem:
    if isinstance(R_or_type, RootSystem):
        return R_or_type
    return RootSystem(R_or_type, n)


def is_dominant(R: RootSystem, lam) -> bool:
    lam = tuple(lam)
    if len(lam) != R.n:
        return False
    for i in range(R.n - 1):
        if R.type == "D" and i == R.n - 2:
            if lam[i] < abs(lam[i + 1]):
                return False
        elif lam[i] < lam[i + 1]:
            return False
    if R.type != "D" and lam and lam[-1] < 0:
        return False
    return True


def dominant_representative(R: RootSystem, v) -> tuple[int, ...]:
    """The unique dominant weight in the W-orbit of v."""
    rep = sorted((abs(a) for a in v), reverse=True)
    if R.type == "D" and rep and rep[-1] != 0:
        if sum(1 for a in v if a < 0) % 2:
            rep[-1] = -rep[-1]
    return tuple(rep)


@lru_cache(maxsize=None)
def _orbit(R: RootSystem, lam: tuple) -> tuple[tuple, ...]:
    lam = tuple(lam)
    seen = set()
    for perm in set(itertools.permutations(lam)):
        nz = [i for i, a in enumerate(perm) if a != 0]
        for signs in itertools.product((1, -1), repeat=len(nz)):
            if R.type == "D" and len(nz) == R.n and signs.count(-1) % 2:
                continue
            v = list(perm)
            for i, s in zip(nz, signs):
                v[i] = s * v[i]
            seen.add(tuple(v))
    if R.type == "D":
        # With no zero coordinate, even sign changes relative to lam itself.
        parity = sum(1 for a in lam if a < 0) % 2
        seen = {v for v in seen if 0 in v or sum(1 for a in v if a < 0) % 2 == parity}
    return tuple(sorted(seen, reverse=True))


def weyl_orbit(R: RootSystem, lam) -> frozenset:
    return frozenset(_orbit(R, tuple(lam)))


def orbit_sum(R: RootSystem, lam, gens: GeneratorSet = DEFAULT_GENERATORS) -> LaurentPoly:
    lam = tuple(lam)
    if not is_dominant(R, lam):
        raise ValueError(f"{lam} is not dominant for {R}")
    one = Scalar(1, gens=gens)
    return LaurentPoly(R.n, {mu: one for mu in _orbit(R, lam)})


def dominance_leq(R: RootSystem, mu, lam, reading: str = "both") -> bool:
    """mu <= lam via partial sums of lam - mu, with the type-specific last step."""
    d = [a - b for a, b in zip(lam, mu)]
    n = R.n
    partial = list(itertools.accumulate(d))
    if R.type == "B":
        return all(s >= 0 for s in partial)
    if R.type == "C":
        return all(s >= 0 for s in partial[:-1]) and partial[-1] >= 0 and partial[-1] % 2 == 0
    # type D
    if any(s < 0 for s in partial[: n - 2]):
        return False
    head = partial[n - 2] if n >= 2 else 0
    plus, minus = head + d[-1], head - d[-1]
    ok = [x >= 0 and x % 2 == 0 for x in (plus, minus)]
    if reading not in READINGS:
        raise ValueError(f"unknown dominance reading {reading!r}")
    return all(ok) if reading == "both" else any(ok)


def _candidates(R: RootSystem, r: int) -> Iterator[tuple[int, ...]]:
    n = R.n

    def parts(remaining, maxpart, k):
        if k == 0:
            yield ()
            return
        for a in range(min(remaining, maxpart), -1, -1):
            for rest in parts(remaining - a, a, k - 1):
                yield (a,) + rest

    for total in range(r + 1):
        for p in parts(total, r, n):
            if sum(p) != total:
                continue
            yield p
            if R.type == "D" and p[-1] != 0:
                yield p[:-1] + (-p[-1],)


def _height_key(mu):
    return tuple(itertools.accumulate(mu))


@lru_cache(maxsize=None)
def _lower_dominant_set(R: RootSystem, r: int, reading: str) -> tuple[tuple[int, ...], ...]:
    top = (r,) + (0,) * (R.n - 1)
    found = [mu for mu in set(_candidates(R, r)) if is_dominant(R, mu) and dominance_leq(R, mu, top, reading)]
    # Lexicographically decreasing partial sums is a linear extension of dominance.
    return tuple(sorted(found, key=_height_key, reverse=True))


def lower_dominant_set(R: RootSystem, r: int, reading: str = "both") -> list[tuple[int, ...]]:
    """Dominant integer weights below r*omega_1, larger weights first."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return list(_lower_dominant_set(R, r, reading))


def dominance_ideal(R: RootSystem, lam, reading: str = "both") -> list[tuple[int, ...]]:
    """Dominant weights below an arbitrary dominant lam, larger first."""
    lam = tuple(lam)
    r = sum(abs(a) for a in lam)
    cands = set(_candidates(R, r))
    found = [mu for mu in cands if is_dominant(R, mu) and dominance_leq(R, mu, lam, reading)]
    return sorted(found, key=_height_key, reverse=True)


def rho_vectors(R: RootSystem):
    """(rho_k, rho_k^*) as per-coordinate (t-exponent, T-exponent) pairs.

    rho_k = 1/2 sum k_alpha alpha and rho_k^* = 1/2 sum k_alpha alpha^vee,
    with t = q^k on the t-class and T = q^K on the T-class roots.
    """
    n = R.n
    rho = [[Fraction(0), Fraction(0)] for _ in range(n)]
    rho_star = [[Fraction(0), Fraction(0)] for _ in range(n)]
    for a in R.positive_roots:
        slot = 0 if a.length_class == SHORT else 1
        for i in range(n):
            rho[i][slot] += Fraction(a.vector[i], 2)
            rho_star[i][slot] += a.coroot[i] / 2
    return [tuple(p) for p in rho], [tuple(p) for p in rho_star]


def minuscule_pi(R: RootSystem):
    """The minuscule coweight used for the operator, and its W-orbit."""
    n = R.n
    if R.type == "C":
        pi = tuple(Fraction(1, 2) for _ in range(n))
        orbit = tuple(tuple(Fraction(s, 2) for s in sig) for sig in itertools.product((1, -1), repeat=n))
    else:
        pi = tuple(Fraction(int(i == 0)) for i in range(n))
        orbit = []
        for i in range(n):
            for s in (1, -1):
                orbit.append(tuple(Fraction(s * (k == i)) for k in range(n)))
        orbit = tuple(orbit)
    return pi, orbit


class OrbitExpansion:
    """Element of the invariant algebra in the orbit-sum basis."""

    __slots__ = ("system", "coeffs")

    def __init__(self, system: RootSystem, coeffs: dict | None = None):
        self.system = system
        self.coeffs = {tuple(k): v for k, v in (coeffs or {}).items() if v != 0}
        for k in self.coeffs:
            if not is_dominant(system, k):
                raise ValueError(f"{k} is not dominant for {system}")

    def __getitem__(self, mu):
        return self.coeffs.get(tuple(mu), 0)

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: _height_key(kv[0]), reverse=True)

    def support(self) -> list[tuple[int, ...]]:
        return [k for k, _ in self.items()]

    def _check(self, other):
        if not isinstance(other, OrbitExpansion):
            return NotImplemented
        if other.system != self.system:
            raise ValueError(f"cannot combine expansions over {self.system} and {other.system}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return OrbitExpansion(self.system, out)

    def __neg__(self):
        return OrbitExpansion(self.system, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> OrbitExpansion:
        return OrbitExpansion(self.system, {k: v * c for k, v in self.coeffs.items()})

    __mul__ = scale
    __rmul__ = scale

    def map_coeffs(self, fn) -> OrbitExpansion:
        return OrbitExpansion(self.system, {k: fn(v) for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, OrbitExpansion):
            return NotImplemented
        return self.system == other.system and (self - other).is_zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_laurent(self, gens: GeneratorSet | None = None) -> LaurentPoly:
        acc: dict = {}
        for lam, c in self.coeffs.items():
            for mu in _orbit(self.system, lam):
                acc[mu] = acc[mu] + c if mu in acc else c
        return LaurentPoly(self.system.n, acc)

    @classmethod
    def from_laurent(cls, R: RootSystem, f: LaurentPoly, check: bool = True) -> OrbitExpansion:
        """Read coefficients at dominant weights; with ``check`` the rest must match."""
        if f.n != R.n:
            raise ValueError("rank mismatch")
        coeffs = {mu: c for mu, c in f.terms.items() if is_dominant(R, mu)}
        if check:
            for mu, c in f.terms.items():
                rep = dominant_representative(R, mu)
                if coeffs.get(rep, 0) != c:
                    raise ValueError(f"Laurent polynomial is not W-invariant for {R}: coefficient at {mu}")
        return cls(R, coeffs)

    def restrict(self, R: RootSystem) -> OrbitExpansion:
        """Re-express in the orbit basis of another system of the same rank."""
        if R == self.system:
            return self
        return OrbitExpansion.from_laurent(R, self.to_laurent())

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in self.items())
        return f"OrbitExpansion({self.system}, {{{body}}})"

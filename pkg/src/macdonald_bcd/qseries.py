"""Terminating basic hypergeometric series and the identities built on them.

Every function is written over an abstract field: arguments may be
Fractions (for sampled checks) or Scalars (for symbolic checks).  Whenever
q^(1/2) is needed the caller supplies ``sq`` and q is taken as sq**2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .report import VerificationReport, run_sampled, symbolic_report
from .scalars import DegenerateSample, GeneratorSet, qpoch

__all__ = [
    "PhiSeries",
    "PoleInSeries",
    "SYMBOLIC_GENERATORS",
    "h_closed",
    "h_closed_alt",
    "h_sum",
    "lemma7_check",
    "lemma7_sides",
    "lemma9_check",
    "lemma9_sides",
    "oracle_chu_vandermonde",
    "oracle_q_binomial",
    "oracle_saalschutz",
    "oracle_vwp_6phi5",
    "oracle_watson",
    "phi",
    "phi_eval",
    "symbolic_point",
    "theorem1_check",
    "theorem1_sides",
    "theorem2_H",
    "theorem2_check",
    "oracle_check",
    "q_binomial_check",
    "ORACLES",
    "theorem3_check",
    "theorem3_sides",
]


class PoleInSeries(DegenerateSample):
    """A lower Pochhammer vanished before the series terminated."""


def _is_zero(x) -> bool:
    return x == 0


@dataclass(frozen=True)
class PhiSeries:
    """r+1 phi r [upper; lower; q, z] terminating after ``terminate`` + 1 terms.

    The termination index is an explicit certificate: some upper parameter
    must equal q^(-terminate), and this is validated on evaluation.
    """

    upper: tuple
    lower: tuple
    q: object
    z: object
    terminate: int

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        if len(self.upper) != len(self.lower) + 1:
            raise ValueError("a series r+1 phi r needs one more upper than lower parameter")
        if self.terminate < 0:
            raise ValueError("termination index must be non-negative")

    def certificate_holds(self) -> bool:
        target = self.q ** (-self.terminate) if self.terminate else self.q**0
        return any(a == target for a in self.upper)


def phi_eval(s: PhiSeries):
    """Exact finite sum of the terminating series."""
    if not s.certificate_holds():
        raise ValueError(f"no upper parameter equals q^-{s.terminate}")
    q, z = s.q, s.z
    one = q**0
    term = one
    total = one
    qi = one
    for i in range(s.terminate):
        num = one
        for a in s.upper:
            num = num * (1 - a * qi)
        den = one
        for b in s.lower:
            den = den * (1 - b * qi)
        den = den * (1 - qi * q)
        if _is_zero(den):
            raise PoleInSeries(f"lower Pochhammer vanishes at index {i + 1}")
        term = term * num * z / den
        total = total + term
        qi = qi * q
    return total


def phi(upper: Sequence, lower: Sequence, q, z, terminate: int):
    return phi_eval(PhiSeries(tuple(upper), tuple(lower), q, z, terminate))


def _ratio(xs: Sequence, ys: Sequence, q, k: int):
    num = q**0
    for x in xs:
        num = num * qpoch(x, q, k)
    den = q**0
    for y in ys:
        den = den * qpoch(y, q, k)
    if _is_zero(den):
        raise DegenerateSample("vanishing Pochhammer in a denominator")
    return num / den


# -- classical oracles ------------------------------------------------------
def oracle_q_binomial(t, u=None, q=None, N: int = 12) -> bool:
    """(tu;q)_oo/(u;q)_oo = sum (t;q)_i/(q;q)_i u^i, compared to order u^N.

    ``u`` is the formal series variable; the left side is expanded with
    Euler's two product formulas, independently of the right side.
    """
    if q is None:
        raise TypeError("q is required")
    one = q**0
    # (tu;q)_oo = sum (-t)^k q^(k(k-1)/2) u^k/(q;q)_k and 1/(u;q)_oo = sum u^k/(q;q)_k
    for m in range(N + 1):
        lhs = 0 * one
        for k in range(m + 1):
            lhs = lhs + (-t) ** k * q ** (k * (k - 1) // 2) / qpoch(q, q, k) / qpoch(q, q, m - k)
        rhs = qpoch(t, q, m) / qpoch(q, q, m)
        if lhs != rhs:
            return False
    return True


def oracle_chu_vandermonde(params: Mapping, q) -> bool:
    """2phi1[q^-n, b; c; q, c q^n / b] = (c/b;q)_n/(c;q)_n."""
    n, b, c = params["n"], params["b"], params["c"]
    lhs = phi([q**-n, b], [c], q, c * q**n / b, n)
    return lhs == _ratio([c / b], [c], q, n)


def oracle_saalschutz(params: Mapping, q) -> bool:
    """3phi2[q^-n, a, b; c, a b q^(1-n)/c; q, q] = (c/a, c/b;q)_n/(c, c/ab;q)_n."""
    n, a, b, c = params["n"], params["a"], params["b"], params["c"]
    lhs = phi([q**-n, a, b], [c, a * b * q ** (1 - n) / c], q, q, n)
    return lhs == _ratio([c / a, c / b], [c, c / (a * b)], q, n)


def oracle_vwp_6phi5(params: Mapping, q) -> bool:
    """Terminating very-well-poised 6phi5 summation; ``sa`` is a square root of a."""
    n, sa, b, c = params["n"], params["sa"], params["b"], params["c"]
    a = sa * sa
    upper = [a, q * sa, -q * sa, b, c, q**-n]
    lower = [sa, -sa, a * q / b, a * q / c, a * q ** (n + 1)]
    lhs = phi(upper, lower, q, a * q ** (n + 1) / (b * c), n)
    return lhs == _ratio([a * q, a * q / (b * c)], [a * q / b, a * q / c], q, n)


def oracle_watson(params: Mapping, q) -> bool:
    """Watson's transformation of a terminating 8W7 into a balanced 4phi3."""
    n, sa, b, c, d, e = (params[k] for k in ("n", "sa", "b", "c", "d", "e"))
    a = sa * sa
    f = q**-n
    upper = [a, q * sa, -q * sa, b, c, d, e, f]
    lower = [sa, -sa, a * q / b, a * q / c, a * q / d, a * q / e, a * q / f]
    lhs = phi(upper, lower, q, a * a * q ** (n + 2) / (b * c * d * e), n)
    rhs = _ratio([a * q, a * q / (d * e)], [a * q / d, a * q / e], q, n) * phi(
        [q**-n, d, e, a * q / (b * c)], [a * q / b, a * q / c, d * e * q**-n / a], q, q, n
    )
    return lhs == rhs


# -- the transformation layer ------------------------------------------------
def theorem1_sides(r: int, u, v, x, y, q):
    """Both sides of the 2phi1 transformation with the matrix M as kernel."""
    lhs = _ratio([u], [q], q, r) * phi([q**-r, u * x], [q ** (1 - r) / (u * x)], q, q * v / (u * u * x), r)
    rhs = 0 * lhs
    for i in range(r // 2 + 1):
        k = r - 2 * i
        inner = _ratio([u], [q], q, k) * phi([q**-k, u * y], [q ** (1 - k) / (u * y)], q, q * v / (u * u * y), k)
        coef = (y * v) ** i * _ratio([x / y], [q], q, i) * qpoch(u * q**k, q, 2 * i)
        coef = coef / (qpoch(u * x * q ** (r - i), q, i) * qpoch(u * y * q ** (k + 1), q, i))
        rhs = rhs + inner * coef
    return lhs, rhs


def _two_phi_one(k: int, v, a, q):
    return phi([q**-k, v], [q ** (1 - k) / v], q, q / (v * v * a * a), k)


def h_sum(r: int, u, v, x, a, q):
    """H_r from its defining sum."""
    total = 0 * q
    for i in range(r + 1):
        k = r - i
        term = a**k * _ratio([u], [q], q, k) * _two_phi_one(k, v, a, q)
        term = term * _ratio([x, u * q**k, v * v * q ** (2 * r - i + 1)], [q, v * q ** (k + 1), x * v * v * q ** (2 * r - i)], q, i)
        total = total + term
    return total / _ratio([u], [q], q, r)


def h_closed(r: int, v, x, a, sq):
    """Closed 4phi3 form of H_r (written with single Pochhammers)."""
    q = sq * sq
    pre = (-1 / v) ** r * _ratio([v * sq, -v * sq, -x * v, x * v * v], [], q, r) / qpoch(x * v * v, q, 2 * r)
    series = phi([q**-r, x * v * v * q**r, -a * v, -1 / a], [v * sq, -v * sq, -x * v], q, q, r)
    return pre * series


def h_closed_alt(r: int, v, x, a, sq):
    """The same closed form written with base-q^2 Pochhammers."""
    q = sq * sq
    pre = (-1 / v) ** r * qpoch(x * v * v, q, r) / qpoch(x * v * v, q, 2 * r)
    pre = pre * qpoch(x * x * v * v, q * q, r) * qpoch(v * v * q, q * q, r) / qpoch(x * v, q, r)
    series = phi([q**-r, x * v * v * q**r, -a * v, -1 / a], [v * sq, -v * sq, -x * v], q, q, r)
    return pre * series


def theorem2_H(r: int, sample: Mapping):
    """(H_r from the sum, H_r from the closed form) at ``sample`` = {u, v, x, a, sq}."""
    sq = sample["sq"]
    q = sq * sq
    lhs = h_sum(r, sample["u"], sample["v"], sample["x"], sample["a"], q)
    rhs = h_closed(r, sample["v"], sample["x"], sample["a"], sq)
    return lhs, rhs


def theorem3_sides(r: int, u, v, x, a, sq):
    q = sq * sq
    lhs = a**r * _ratio([u], [q], q, r) * _two_phi_one(r, v, a, q)
    rhs = 0 * lhs
    for i in range(r + 1):
        k = r - i
        term = _ratio([u], [q], q, k) * h_closed(k, v, x, a, sq) * x**i
        term = term * _ratio([1 / x, u * q**k, v * v * q ** (2 * k + 1)], [q, v * q ** (k + 1), x * v * v * q ** (2 * k + 1)], q, i)
        term = term * (1 - v * v * q ** (2 * r)) / (1 - v * v * q ** (2 * r - i))
        rhs = rhs + term
    return lhs, rhs


def lemma7_sides(r: int, v, a, sq):
    q = sq * sq
    lhs = _two_phi_one(r, v, a, q)
    rhs = (a * v) ** (-r) * _ratio([v * v], [v], q, r)
    rhs = rhs * phi([q**-r, v * v * q**r, a * v, 1 / a], [v * sq, -v * sq, -v], q, q, r)
    return lhs, rhs


def lemma9_sides(n: int, a, b, sq):
    q = sq * sq
    lhs = phi([q**-n, a * a, q * a, b], [a, q * a * a / b, q ** (1 + n) * a * a], q, q ** (1 + n) * a / b, n)
    rhs = _ratio([q * a * a, -1 + 0 * q], [sq * a, -sq * a], q, n)
    rhs = rhs * phi([q**-n, -q * a / b, sq * a, -sq * a], [-(q ** (1 - n)), q * a * a / b, -q * a], q, q, n)
    return lhs, rhs


# -- checks -----------------------------------------------------------------
SYMBOLIC_GENERATORS = GeneratorSet(("sq", "u", "v", "x", "y", "a", "b"))


def symbolic_point(names: Sequence[str]) -> dict:
    """Generators of the symbolic field, keyed like a sample."""
    return {name: SYMBOLIC_GENERATORS.gen(name) for name in names}


def _check(suite, r, names, sides, sample, seed, count, symbolic):
    params = {"r": r}
    if symbolic:
        lhs, rhs = sides(symbolic_point(names))
        report = symbolic_report(suite, params, lhs, rhs)
        report.notes.append("symbolic")
        return report
    if sample is not None:
        lhs, rhs = sides(dict(sample))
        return symbolic_report(suite, params, lhs, rhs)
    return run_sampled(suite, params, names, sides, seed, count)


def theorem1_check(r: int, sample: Mapping | None = None, seed: int = 0, count: int = 20,
                   symbolic: bool = False) -> VerificationReport:
    def sides(p):
        q = p["sq"] * p["sq"]
        return theorem1_sides(r, p["u"], p["v"], p["x"], p["y"], q)

    return _check("theorem1", r, ("u", "v", "x", "y", "sq"), sides, sample, seed, count, symbolic)


def theorem2_check(r: int, sample: Mapping | None = None, seed: int = 0, count: int = 20,
                   symbolic: bool = False) -> VerificationReport:
    return _check("theorem2", r, ("u", "v", "x", "a", "sq"), lambda p: theorem2_H(r, p), sample, seed, count, symbolic)


def theorem3_check(r: int, sample: Mapping | None = None, seed: int = 0, count: int = 20,
                   symbolic: bool = False) -> VerificationReport:
    def sides(p):
        return theorem3_sides(r, p["u"], p["v"], p["x"], p["a"], p["sq"])

    return _check("theorem3", r, ("u", "v", "x", "a", "sq"), sides, sample, seed, count, symbolic)


def lemma7_check(r: int, sample: Mapping | None = None, seed: int = 0, count: int = 20,
                 symbolic: bool = False) -> VerificationReport:
    return _check("lemma7", r, ("v", "a", "sq"), lambda p: lemma7_sides(r, p["v"], p["a"], p["sq"]),
                  sample, seed, count, symbolic)


def lemma9_check(n: int, sample: Mapping | None = None, seed: int = 0, count: int = 20,
                 symbolic: bool = False) -> VerificationReport:
    return _check("lemma9", n, ("a", "b", "sq"), lambda p: lemma9_sides(n, p["a"], p["b"], p["sq"]),
                  sample, seed, count, symbolic)


def _oracle_sides(oracle, n, keys):
    def sides(p):
        params = dict(p)
        params["n"] = n
        q = p["sq"] * p["sq"]
        return oracle(params, q), True

    return sides


ORACLES = {
    "chu_vandermonde": (oracle_chu_vandermonde, ("b", "c")),
    "saalschutz": (oracle_saalschutz, ("a", "b", "c")),
    "vwp_6phi5": (oracle_vwp_6phi5, ("sa", "b", "c")),
    "watson": (oracle_watson, ("sa", "b", "c", "d", "e")),
}


def oracle_check(name: str, n: int, seed: int = 0, count: int = 20, symbolic: bool = False) -> VerificationReport:
    oracle, keys = ORACLES[name]
    names = keys + ("sq",)
    if symbolic:
        gens = GeneratorSet(("sq", "sa", "a", "b", "c", "d", "e"))
        p = {k: gens.gen(k) for k in names}
        p["n"] = n
        ok = oracle(p, p["sq"] * p["sq"])
        return symbolic_report(f"oracle_{name}", {"r": n}, ok, True)
    return run_sampled(f"oracle_{name}", {"r": n}, names, _oracle_sides(oracle, n, keys), seed, count)


def q_binomial_check(N: int = 12, seed: int = 0, count: int = 20, symbolic: bool = False) -> VerificationReport:
    if symbolic:
        gens = GeneratorSet(("sq", "st"))
        q, t = gens.gen("sq") ** 2, gens.gen("st") ** 2
        return symbolic_report("oracle_q_binomial", {"r": N}, oracle_q_binomial(t, None, q, N), True)
    return run_sampled(
        "oracle_q_binomial", {"r": N}, ("t", "sq"),
        lambda p: (oracle_q_binomial(p["t"], None, p["sq"] * p["sq"], N), True), seed, count,
    )

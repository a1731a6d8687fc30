from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from macdonald_bcd import qseries as qs
from macdonald_bcd.scalars import DegenerateSample, qpoch

nonzero = st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(lambda x: x not in (0, 1, -1))


def test_phi_matches_explicit_sum():
    a, b, c, q, z = Fraction(2), Fraction(1, 3), Fraction(5, 7), Fraction(1, 2), Fraction(3, 4)
    n = 3
    upper = [q**-n, a, b]
    lower = [c, Fraction(7, 5)]
    direct = sum(qpoch(upper[0], q, k) * qpoch(a, q, k) * qpoch(b, q, k) * z**k
                 / (qpoch(q, q, k) * qpoch(c, q, k) * qpoch(lower[1], q, k)) for k in range(n + 1))
    assert qs.phi(upper, lower, q, z, n) == direct


def test_pole_in_lower_parameter_is_reported():
    q = Fraction(1, 2)
    with pytest.raises(DegenerateSample):
        qs.phi([q**-2, Fraction(3)], [q**-1], q, Fraction(1), 2)


@pytest.mark.parametrize("check", [qs.theorem1_check, qs.theorem2_check, qs.theorem3_check, qs.lemma7_check])
@pytest.mark.parametrize("r", [0, 1, 2, 5])
def test_theorems_sampled(check, r):
    assert check(r, seed=3, count=5).passed


@pytest.mark.parametrize("check", [qs.theorem1_check, qs.theorem2_check, qs.theorem3_check, qs.lemma7_check])
def test_theorems_symbolic_r2(check):
    assert check(2, symbolic=True).passed


@pytest.mark.parametrize("name", sorted(qs.ORACLES))
def test_oracles(name):
    assert qs.oracle_check(name, 4, seed=1, count=5).passed


def test_q_binomial_truncated_series():
    assert qs.q_binomial_check(6, count=5).passed
    assert qs.q_binomial_check(4, symbolic=True).passed


def test_h_closed_forms_agree():
    p = dict(v=Fraction(3, 7), x=Fraction(-2, 5), a=Fraction(5, 3), sq=Fraction(2, 3))
    for r in range(5):
        assert qs.h_closed(r, **p) == qs.h_closed_alt(r, **p)


@settings(max_examples=25, deadline=None)
@given(nonzero, nonzero, nonzero, st.integers(0, 4))
def test_chu_vandermonde_property(b, c, sq, n):
    q = sq * sq
    try:
        assert qs.oracle_chu_vandermonde({"n": n, "b": b, "c": c}, q)
    except ZeroDivisionError:
        pass


def test_sampling_is_seeded():
    a = qs.theorem1_check(3, seed=11, count=3).to_line()
    b = qs.theorem1_check(3, seed=11, count=3).to_line()
    assert a == b

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from macdonald_bcd import transition as tr
from macdonald_bcd.scalars import qpoch

q = Fraction(2, 7)
params = st.fractions(min_value=-9, max_value=9, max_denominator=11).filter(lambda x: x not in (0, 1, -1))


def test_trivial_entries():
    M = tr.MatrixFamily.M(Fraction(3), Fraction(5), Fraction(7), Fraction(11), q)
    assert M.entry(4, 4) == 1
    assert M.entry(4, 3) == 0 and M.entry(3, 4) == 0
    N = tr.MatrixFamily.N(Fraction(3), Fraction(5), Fraction(7), Fraction(11), q)
    assert all(N.entry(i, i) == 1 for i in range(5))
    B = tr.MatrixFamily.B(Fraction(3), Fraction(5), q)
    assert all(B.entry(i, i) == 1 for i in range(5))


def test_m_with_equal_x_y_is_identity():
    M = tr.MatrixFamily.M(Fraction(3), Fraction(5), Fraction(7), Fraction(7), q)
    assert M.entry(4, 2) == 0 and M.entry(6, 0) == 0


def test_a_diagonal_is_not_one():
    u, v = Fraction(3), Fraction(5)
    A = tr.MatrixFamily.A(u, v, q)
    assert A.entry(0, 0) == 1
    assert A.entry(2, 2) == (u / v) ** 2 * qpoch(u, q, 4) / qpoch(v, q, 4)


def test_vanishing_denominator_raises():
    with pytest.raises(tr.DegenerateFamily):
        tr.MatrixFamily.B(1 / q, Fraction(5), q).entry(1, 0)


@pytest.mark.parametrize("tag", tr.FAMILIES)
def test_mutual_inverse(tag):
    assert tr.mutual_inverse_check(tag, 8, count=4).passed


@settings(max_examples=15, deadline=None)
@given(params, params, params, params)
def test_m_inverse_property(u, v, x, y):
    try:
        F = tr.MatrixFamily.M(u, v, x, y, q)
        P = tr.matrix_product(F.truncation(6), F.swapped().truncation(6))
    except ZeroDivisionError:
        return
    assert all(P[i][j] == (1 if i == j else 0) for i in range(6) for j in range(6))


@pytest.mark.parametrize("d", [0, 1])
def test_bressoud_reduction(d):
    assert tr.bressoud_reduction_check(4, d, count=4).passed


def test_lemma1_rescaling_needs_negative_power_of_v():
    assert tr.lemma1_rescaling_check(6, count=4).passed
    u, v, x, y = Fraction(3, 7), Fraction(5, 11), Fraction(2, 13), Fraction(-3, 5)
    d = [v ** (2 * k) * qpoch(v * v * q, q, 2 * k) * qpoch(u, q, k) / qpoch(v * q, q, k) for k in range(3)]
    B = tr.MatrixFamily.B(x * v * v, y * v * v, q)
    N = tr.MatrixFamily.N(u, v, x, y, q)
    assert N.entry(1, 0) != B.entry(1, 0) * d[1] / d[0]


def test_theorems_2_3_as_matrix_pair():
    assert tr.theorem23_matrix_check(6, count=3).passed


def test_conjecture_matrices_compose():
    assert tr.composition_check(6).passed
    for k in (1, 2, 3, 4):
        assert tr.coherence_check(k, 2, 6).passed


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("direction", ["forward", "converse"])
def test_conjectures_small(k, direction):
    n = tr.MIN_RANK[k]
    for r in range(4):
        assert tr.conjecture_check(k, max(n, 2), r, direction).passed


def test_conjecture_rank_guard():
    with pytest.raises(ValueError):
        tr.conjecture_check(2, 1, 1)


@pytest.mark.parametrize("direction", ["forward", "converse"])
def test_conjecture5(direction):
    for r in range(3):
        assert tr.conjecture5_coefficients_check(2, r, direction).passed
        assert tr.conjecture5_check(2, r, direction).passed


@pytest.mark.parametrize("k", [1, 2, 4])
def test_degenerations(k):
    assert tr.degeneration_check(k, 2, 3).passed


def test_lemma5():
    assert tr.lemma5_check(2, 3).passed
    assert tr.lemma5_check(2, 6, mode="sampled", count=5).passed

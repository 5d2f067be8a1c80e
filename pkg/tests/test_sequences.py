from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singwalks import sequences as sq
from singwalks.algebra import TruncSeries
from singwalks.transfer import section_coefficients

F = Fraction


def test_bernoulli_values():
    B = sq.bernoulli(12)
    assert list(B.values[:7]) == [1, F(-1, 2), F(1, 6), 0, F(-1, 30), 0, F(1, 42)]
    assert B[3] == 0
    assert B[12] == F(-691, 2730)
    assert all(B[2 * k + 1] == 0 for k in range(1, 6))


def test_bernoulli_constructions_agree():
    assert sq.bernoulli_closed_form(40) == sq.bernoulli_recurrence(40)


def test_tangent_values():
    T = sq.tangent_numbers(5)
    assert list(T.values) == [1, 2, 16, 272, 7936, 353792]
    assert sq.tangent_from_bernoulli(30) == sq.tangent_from_ode(30)


def test_secant_and_genocchi():
    assert list(sq.euler_secant(5).values) == [1, 1, 5, 61, 1385, 50521]
    M = sq.median_genocchi(5)
    assert list(M.values) == [1, 2, 8, 56, 608, 9440]
    assert sq.genocchi_from_euler(20) == sq.genocchi_from_bernoulli(20)


def test_dellac_integers():
    D = sq.dellac(15)
    assert list(D.values[:7]) == [1, 1, 2, 7, 38, 295, 3098]
    assert all(isinstance(v, int) and v > 0 for v in D.values)


def test_positive_integer_sequences():
    for kind in ("tangent", "euler_secant", "median_genocchi", "dellac"):
        assert all(isinstance(v, int) and v > 0 for v in sq.SEQUENCE_KINDS[kind](12).values)


def test_mismatch_is_reported():
    with pytest.raises(sq.SequenceMismatch, match="index 2"):
        sq._agree("x", [1, 2, 3], [1, 2, 4])


def test_closed_form_lists():
    assert sq.qa_closed_form(11) == [1, 0, F(1, 2), 0, 1, 0, F(17, 4), 0, 31, 0, F(691, 2)]
    assert sq.qd_closed_form(8) == [1, F(1, 3), F(1, 3), F(3, 5), F(5, 3), F(691, 105), 35, F(3617, 15)]
    assert sq.qb_closed_form(7) == [1, 1, 2, 7, 38, 295, 3098]


@pytest.mark.parametrize("mid", ["A", "B", "D"])
def test_closed_forms_equal_enumeration(mid):
    assert sq.CLOSED_FORMS[mid](20) == section_coefficients(mid, 20)


def test_negative_half():
    got = sq.qb_negative_half(12)
    assert got[0] == 1 and got[1] == F(-1, 3)
    assert got == section_coefficients("B", 12, F(-1, 2))
    assert section_coefficients("A", 16, F(-1, 2)) == section_coefficients("A", 16)


def test_recurrences():
    checks = {c.name: c for c in sq.verify_recurrences(25)}
    assert all(c.ok for c in checks.values())
    d = checks["model D quadratic recurrence"]
    assert d.data["smallest_valid_n"] == 1 and d.data["failing_n"] == [0]


def test_recurrence_example_model_a_n3():
    a = sq.qa_closed_form(6)
    assert 2 * a[4] == sum(__import__("math").comb(3, l) * a[l - 1] * a[3 - l] for l in range(1, 4))


def test_recurrences_detect_corruption():
    a = sq.qa_closed_form(12)
    a[6] += 1
    assert sq.model_a_recurrence_failures(a)
    b = sq.qb_closed_form(12)
    b[4] -= 1
    assert sq.model_b_linear_failures(b)
    d = sq.qd_closed_form(12)
    d[3] *= 2
    assert set(sq.model_d_recurrence_failures(d)) - {0}


def test_odes():
    assert sq.ode_residual_a(20).is_zero()
    assert sq.ode_residual_d(20).is_zero()
    assert all(c.ok for c in sq.verify_odes(20))
    a = sq.qa_closed_form(21)
    a[4] += 1
    assert not sq.ode_residual_a(20, a).is_zero()


def test_full_sequence_suite():
    assert all(c.ok for c in sq.verify_sequences(n_terms=16, recurrence_n=16, ode_order=12))


@given(st.integers(2, 40))
@settings(max_examples=15, deadline=None)
def test_euler_recurrence_property(n):
    B = sq.bernoulli(2 * n)
    s = (2 * n + 1) * B[2 * n] + sum(__import__("math").comb(2 * n, 2 * i) * B[2 * i] * B[2 * n - 2 * i]
                                     for i in range(1, n))
    assert s == 0


def test_tangent_functional_equation():
    # odd part of the tangent EGF, T(x) = sum T_n x^(2n+1)/(2n+1)!, satisfies T' = 1 + T^2
    import math
    T = sq.tangent_numbers(8)
    ser = TruncSeries([0] * 18, 18, "x")
    cs = [0] * 18
    for n in range(9):
        cs[2 * n + 1] = F(T[n], math.factorial(2 * n + 1))
    ser = TruncSeries(cs, 18, "x")
    assert ser.derivative() == (1 + ser * ser).truncate(17)

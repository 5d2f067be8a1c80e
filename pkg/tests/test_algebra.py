from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singwalks.algebra import (I, GaussianRational, TruncSeries, first_nonzero, format_scalar,
                               parse_rational, parse_scalar, series_compose, series_inverse, series_mul)
from strategies import gaussians, inner, nonzero_rationals, rationals, series, units

F = Fraction


def S(cs, order, var="s"):
    return TruncSeries(cs, order, var)


# -- examples ------------------------------------------------------------------

def test_difference_of_squares():
    assert series_mul(S([1, 1], 3), S([1, -1], 3)) == S([1, 0, -1], 3)


def test_geometric_telescopes():
    assert series_mul(S([1] * 6, 6), S([1, -1], 6)) == S([1], 6)


def test_multiplicative_identity():
    f = S([3, F(1, 2), -7, 0, 2], 5)
    assert f * S([1], 5) == f
    assert f * 1 == f


def test_inverse_examples():
    assert series_inverse(S([1, -1], 5)) == S([1, 1, 1, 1, 1], 5)
    assert series_inverse(S([F(3, 4)], 4)) == S([F(4, 3)], 4)
    assert series_inverse(S([1, 0, -2], 6, "t")) == S([1, 0, 2, 0, 4, 0], 6, "t")


def test_inverse_needs_unit():
    with pytest.raises(ZeroDivisionError):
        S([0, 1], 4).inverse()


def test_compose_examples():
    f = S([1, 2, 3, 4], 4)
    assert series_compose(f, TruncSeries.identity(4, "s")) == f
    geo = S([1] * 5, 5, "x")
    assert series_compose(geo, S([0, 0, 1], 5)) == S([1, 0, 1, 0, 1], 5)


def test_compose_rejects_constant_term():
    with pytest.raises(ValueError):
        S([1, 1], 4).compose(S([1, 1], 4))


def test_homography_iterates():
    # x/(1+ix) composed with itself n times is x/(1+nix)
    order = 10
    tau = S([0, 1], order) * S([1, I], order).inverse()
    it = tau
    for n in range(2, 6):
        it = it.compose(tau)
        assert it == S([0, 1], order) * S([1, n * I], order).inverse()


def test_variable_mismatch():
    with pytest.raises(ValueError):
        S([1], 3, "s") + S([1], 3, "t")


def test_order_is_min_of_operands():
    assert (S([1, 1], 3) * S([1, 1], 7)).order == 3
    assert (S([1, 1], 3) + S([1, 1], 7)).order == 3


def test_derivative_drops_order():
    d = S([5, 1, 1, 1], 4).derivative()
    assert d == S([1, 2, 3], 3)


def test_getitem_beyond_order():
    with pytest.raises(IndexError):
        S([1], 2)[2]


def test_first_nonzero():
    assert first_nonzero(S([0, 0, 3], 4)) == 2
    assert first_nonzero(S([], 4)) is None


def test_gaussian_basics():
    z = GaussianRational(F(1, 2), -3)
    assert z * z.conjugate() == z.norm() == F(1, 4) + 9
    assert z * z.inverse() == 1
    assert I * I == -1
    assert not GaussianRational(0, 0)
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0, 0).inverse()


def test_rational_serialization():
    assert format_scalar(F(6, 4)) == "3/2"
    assert format_scalar(F(-4, 2)) == "-2"
    assert parse_rational("3/2") == F(3, 2)
    assert parse_rational("0.51") == F(51, 100)
    with pytest.raises(ValueError):
        parse_rational("1/2+1*i")


# -- properties ------------------------------------------------------------------

@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == S([], a.order)


@given(series(scalars=gaussians), series(scalars=gaussians), series(scalars=gaussians))
@settings(max_examples=40)
def test_ring_axioms_gaussian(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(units())
def test_inverse_two_sided(a):
    one = S([1], a.order)
    assert a * a.inverse() == one
    assert a.inverse() * a == one


@given(series(order=7), series(order=7))
def test_leibniz(f, g):
    assert (f * g).derivative() == f.derivative() * g.truncate(6) + f.truncate(6) * g.derivative()


@given(series(order=6, var="x"), inner(), inner())
@settings(max_examples=40)
def test_compose_associative(f, g, h):
    assert f.compose(g).compose(h) == f.compose(g.compose(h))


@given(series(order=6, var="x"), series(order=6, var="x"), inner())
def test_compose_is_ring_map(f, g, h):
    assert (f * g).compose(h) == f.compose(h) * g.compose(h)
    assert (f + g).compose(h) == f.compose(h) + g.compose(h)


@given(rationals)
def test_rational_round_trip(x):
    s = format_scalar(x)
    assert parse_scalar(s) == x
    assert format_scalar(parse_scalar(s)) == s


@given(gaussians)
def test_gaussian_round_trip(z):
    s = format_scalar(z)
    back = parse_scalar(s)
    assert back == z and format_scalar(back) == s


@given(gaussians.filter(bool), gaussians)
def test_gaussian_field(z, w):
    assert (w / z) * z == w
    assert (z * w).norm() == z.norm() * w.norm()
    assert (z * w).conjugate() == z.conjugate() * w.conjugate()


@given(nonzero_rationals)
def test_gaussian_mixes_with_rationals(q):
    z = GaussianRational(q, 1)
    assert z - q == I
    assert q * I / q == I

from fractions import Fraction

import pytest

from singwalks.algebra import I, GaussianRational
from singwalks.models import (all_models, characteristic_poly, degrees, get_model, kernel_poly,
                              poly_eval, poly_mul)

HALF = Fraction(1, 2)


def test_step_sets():
    assert get_model("A").steps == {(-1, 1), (1, 1), (1, -1)}
    assert get_model("B").steps == {(-1, 1), (0, 1), (1, 0), (1, -1)}
    assert get_model("C").steps == {(-1, 1), (0, 1), (1, 1), (1, 0), (1, -1)}
    assert get_model("D").steps == {(-1, 1), (0, 1), (1, -1)}
    assert get_model("E").steps == {(-1, 1), (0, 1), (1, 1), (1, -1)}


def test_unknown_model():
    with pytest.raises(ValueError):
        get_model("F")


@pytest.mark.parametrize("m", all_models(), ids=lambda m: m.id)
def test_levels_and_antidiagonal(m):
    assert all(dx + dy in (0, 1, 2) for dx, dy in m.steps)
    assert set(m.antidiagonal_steps) == {(-1, 1), (1, -1)}


def test_characteristic_examples():
    assert characteristic_poly(get_model("A")) == {(-1, 1): 1, (1, 1): 1, (1, -1): 1}
    assert characteristic_poly(get_model("D")) == {(-1, 1): 1, (0, 1): 1, (1, -1): 1}
    for m in all_models():
        assert poly_eval(characteristic_poly(m), 1, 1) == m.size


def test_kernel_model_a_half():
    assert kernel_poly(get_model("A"), HALF) == {(1, 1): 1, (0, 2): -HALF, (2, 2): -HALF, (2, 0): -HALF}


@pytest.mark.parametrize("m", all_models(), ids=lambda m: m.id)
def test_kernel_shape(m):
    assert {k: v for k, v in kernel_poly(m, 0).items() if v} == {(1, 1): 1}
    dx, dy = degrees(kernel_poly(m, Fraction(1, 3)))
    assert dx <= 2 and dy <= 2


def test_reducible_kernel_at_half():
    f1 = {(1, 0): I, (0, 1): -I, (1, 1): GaussianRational(1)}
    f2 = {(1, 0): I, (0, 1): -I, (1, 1): GaussianRational(-1)}
    prod = {k: v * HALF for k, v in poly_mul(f1, f2).items() if v != 0}
    assert prod == kernel_poly(get_model("A"), HALF)

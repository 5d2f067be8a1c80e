from fractions import Fraction

import pytest

from singwalks.algebra import TruncSeries
from singwalks.models import all_models, get_model
from singwalks.oracle import count_walks
from singwalks.transfer import (compositions12, endpoint_vector, endpoint_vector_formal_t,
                                endpoint_vector_literal, jump_matrix, mire_recurrence_check, q_half,
                                section_coefficients, _FormalEngine)

F = Fraction
HALF = F(1, 2)
A = get_model("A")


def dp_vector(table, k, order):
    return [TruncSeries([table.count(k - b, b, n) for n in range(order)], order) for b in range(k + 1)]


def test_jump_matrices():
    assert jump_matrix("A", 4) == [[0, 1, 0, 0], [0, 0, 1, 0]]
    assert jump_matrix("D", 3) == [[0, 1, 0], [0, 0, 1]]
    assert jump_matrix("B", 3) == [[1, 1, 0], [0, 1, 1]]


def test_compositions_are_fibonacci():
    fib = [1, 1]
    while len(fib) < 15:
        fib.append(fib[-1] + fib[-2])
    for k in range(14):
        comps = list(compositions12(k))
        assert len(comps) == fib[k]
        assert all(sum(c) == k and set(c) <= {1, 2} for c in comps)


def test_model_a_k2():
    assert endpoint_vector(A, 2, F(1, 3)) == [F(1, 7), F(3, 7), F(1, 7)]
    assert endpoint_vector(A, 2, HALF) == [HALF, 1, HALF]
    for k in (1, 3, 5, 7):
        assert all(v == 0 for v in endpoint_vector(A, k, HALF))


@pytest.mark.parametrize("m", all_models(), ids=lambda m: m.id)
def test_formal_matches_dp(m):
    order = 14
    table = count_walks(m, order)
    for k in range(8):
        vec = endpoint_vector_formal_t(m, k, order)
        assert vec == dp_vector(table, k, order)
        if k:
            assert all(s[0] == 0 for s in vec)


def test_model_d_k1():
    vec = endpoint_vector_formal_t(get_model("D"), 1, 4)
    assert vec[1][1] == 1  # the single N step to (0, 1)


@pytest.mark.parametrize("m", all_models(), ids=lambda m: m.id)
@pytest.mark.parametrize("k", range(0, 9))
def test_literal_products_agree(m, k):
    order = 12
    assert endpoint_vector_literal(m, k, order=order) == endpoint_vector_formal_t(m, k, order)
    assert endpoint_vector_literal(m, k, t=F(1, 3)) == endpoint_vector(m, k, F(1, 3))


def test_tridiagonal_b_variant_miscounts():
    """The tridiagonal B_n variant with 1s at (i, i-1), (i, i+1) does not reproduce the walks."""
    def bad_b(n):
        return [[int(c in (r - 1, r + 1)) for c in range(n)] for r in range(n - 1)]

    order = 6
    eng = _FormalEngine(order)
    vec = eng.t_times_f(eng.jump(eng.unit(), bad_b(2)))
    got = [TruncSeries(c, order) for c in vec]
    want = endpoint_vector_formal_t(get_model("B"), 1, order)
    assert got != want


@pytest.mark.parametrize("m", [get_model(c) for c in "ABC"], ids=lambda m: m.id)
def test_diagonal_symmetry(m):
    for k in range(10):
        v = endpoint_vector(m, k, HALF)
        assert v == v[::-1]


def test_section_values():
    assert section_coefficients("A", 11) == [1, 0, HALF, 0, 1, 0, F(17, 4), 0, 31, 0, F(691, 2)]
    assert section_coefficients("B", 7) == [1, 1, 2, 7, 38, 295, 3098]
    assert section_coefficients("D", 8) == [1, F(1, 3), F(1, 3), F(3, 5), F(5, 3), F(691, 105), 35, F(3617, 15)]


@pytest.mark.parametrize("m", all_models(), ids=lambda m: m.id)
def test_half_coefficients_positive_with_small_denominators(m):
    import math
    k_max = 10
    q = q_half(m, k_max)
    L = math.lcm(*range(1, k_max + 3))
    for k in range(k_max + 1):
        for b in range(k + 1):
            c = q[(k - b, b)]
            assert c >= 0
            assert L % c.denominator == 0
    assert q[(0, 0)] == 1
    with pytest.raises(KeyError):
        q[(k_max, 1)]


def test_refuses_beyond_half():
    with pytest.raises(ValueError, match="accumulate at 1/2"):
        q_half(A, 3, F(51, 100))
    with pytest.raises(ValueError):
        endpoint_vector(A, 2, F(-3, 5))
    assert q_half(A, 2, F(-1, 2))[(0, 0)] == 1


def test_q_truncation_json():
    q = q_half(A, 2)
    assert q.to_json() == {"(0,0)": "1", "(1,0)": "0", "(0,1)": "0", "(2,0)": "1/2", "(1,1)": "1", "(0,2)": "1/2"}


@pytest.mark.parametrize("k,order", [(1, 12), (2, 12), (3, 12), (4, 20)])
def test_mire_recurrence(k, order):
    assert mire_recurrence_check(k, order)


@pytest.mark.parametrize("perturb", [(0, 2, 1), (1, 5, F(1, 3)), (2, 7, -1)])
def test_mire_detects_perturbation(perturb):
    assert not mire_recurrence_check(3, 14, perturb=perturb)

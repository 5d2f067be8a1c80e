"""Bernoulli, tangent, secant, median Genocchi and Dellac numbers.

Every sequence is produced by two unrelated formulas which must agree; the
closed forms for the sections ``Q(x, 0, 1/2)`` of models A, B and D are
assembled from them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List

from .algebra import TruncSeries
from .checks import Check


class SequenceMismatch(ArithmeticError):
    """Two independent constructions of a sequence disagree."""


@dataclass(frozen=True)
class SequenceCache:
    kind: str
    values: tuple

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)


def _agree(kind: str, a: list, b: list) -> SequenceCache:
    if a != b:
        n = next(i for i, (x, y) in enumerate(zip(a, b)) if x != y)
        raise SequenceMismatch(f"{kind}: methods disagree first at index {n}: {a[n]} vs {b[n]}")
    return SequenceCache(kind, tuple(a))


# -- Bernoulli -------------------------------------------------------------

def bernoulli_closed_form(n_max: int) -> List[Fraction]:
    """``B_n = sum_k (-1)^k C(n+1, k+1) (0^n + ... + k^n)/(k+1)``, with ``0^0 = 1``."""
    out = []
    for n in range(n_max + 1):
        total, power_sum = Fraction(0), 0
        for k in range(n + 1):
            power_sum += k ** n if (k or n == 0) else 0
            total += (-1) ** k * math.comb(n + 1, k + 1) * Fraction(power_sum, k + 1)
        out.append(total)
    return out


def bernoulli_recurrence(n_max: int) -> List[Fraction]:
    """From ``x/(e^x - 1)``: ``sum_{k<=n} C(n+1, k) B_k = 0`` for ``n >= 1``."""
    out = [Fraction(1)]
    for n in range(1, n_max + 1):
        s = sum(math.comb(n + 1, k) * out[k] for k in range(n))
        out.append(-s / (n + 1))
    return out


@lru_cache(maxsize=None)
def _bernoulli(n_max: int) -> SequenceCache:
    return _agree("bernoulli", bernoulli_closed_form(n_max), bernoulli_recurrence(n_max))


def bernoulli(n_max: int) -> SequenceCache:
    return _bernoulli(n_max)


@lru_cache(maxsize=None)
def _bern(n_max: int) -> tuple:
    # recurrence only; the closed form is quadratic per term and kept for cross-checks
    return tuple(bernoulli_recurrence(n_max))


# -- tangent and secant ------------------------------------------------------

def tangent_from_bernoulli(n_max: int) -> List[int]:
    B = _bern(2 * n_max + 2)
    out = []
    for n in range(n_max + 1):
        v = Fraction(2 ** (2 * n + 1) * (2 ** (2 * n + 2) - 1) * (-1) ** n, n + 1) * B[2 * n + 2]
        out.append(v)
    return out


def tangent_from_ode(n_max: int) -> List[int]:
    """Coefficients of ``tan`` from ``tan' = 1 + tan^2``, rescaled by ``(2n+1)!``."""
    N = 2 * n_max + 2
    c = [Fraction(0)] * (N + 1)
    for m in range(N):
        sq = sum(c[a] * c[m - a] for a in range(m + 1))
        c[m + 1] = (int(m == 0) + sq) / (m + 1)
    return [c[2 * n + 1] * math.factorial(2 * n + 1) for n in range(n_max + 1)]


def tangent_numbers(n_max: int) -> SequenceCache:
    a = [int(v) for v in _integral(tangent_from_bernoulli(n_max))]
    b = [int(v) for v in _integral(tangent_from_ode(n_max))]
    return _agree("tangent", a, b)


def euler_secant(n_max: int) -> SequenceCache:
    """``E_{2n}`` for ``n <= n_max``: from ``1/cos`` and from ``sum C(2n,2k)(-1)^k E_{2n-2k} = 0``."""
    N = 2 * n_max + 1
    cos = TruncSeries([Fraction((-1) ** (m // 2), math.factorial(m)) if m % 2 == 0 else 0
                       for m in range(N)], N, "x")
    sec = cos.inverse()
    via_series = [sec[2 * n] * math.factorial(2 * n) for n in range(n_max + 1)]
    via_rec = [1]
    for n in range(1, n_max + 1):
        s = sum(math.comb(2 * n, 2 * k) * (-1) ** k * via_rec[n - k] for k in range(1, n + 1))
        via_rec.append(-s)
    return _agree("euler_secant", [int(v) for v in _integral(via_series)], via_rec)


def genocchi_from_euler(n_max: int) -> List[Fraction]:
    """``M_{n-1} = 4^{-n} sum_k C(n,k) (2k+1) E_{2k}`` for ``n = 1 .. n_max+1``."""
    E = euler_secant(n_max + 1)
    return [Fraction(sum(math.comb(n, k) * (2 * k + 1) * E[k] for k in range(n + 1)), 4 ** n)
            for n in range(1, n_max + 2)]


def genocchi_from_bernoulli(n_max: int) -> List[Fraction]:
    """``M_{n-1} = 2 (-1)^{n+1} sum_k C(n,k) (2^{n+k+1} - 1) B_{n+k+1}``."""
    B = _bern(2 * n_max + 3)
    out = []
    for n in range(1, n_max + 2):
        s = sum(math.comb(n, k) * (2 ** (n + k + 1) - 1) * B[n + k + 1] for k in range(n + 1))
        out.append(2 * (-1) ** (n + 1) * s)
    return out


def median_genocchi(n_max: int) -> SequenceCache:
    a = [int(v) for v in _integral(genocchi_from_euler(n_max))]
    b = [int(v) for v in _integral(genocchi_from_bernoulli(n_max))]
    return _agree("median_genocchi", a, b)


def dellac(n_max: int) -> SequenceCache:
    """``M_n / 2^n``, which turns out to be integral."""
    M = median_genocchi(n_max)
    vals = [Fraction(M[n], 2 ** n) for n in range(n_max + 1)]
    return SequenceCache("dellac", tuple(int(v) for v in _integral(vals)))


def _integral(vals):
    for v in vals:
        if Fraction(v).denominator != 1:
            raise SequenceMismatch(f"expected an integer, got {v}")
    return vals


SEQUENCE_KINDS = {
    "bernoulli": bernoulli,
    "tangent": tangent_numbers,
    "euler_secant": euler_secant,
    "median_genocchi": median_genocchi,
    "dellac": dellac,
}


# -- closed forms of Q(x, 0, +-1/2) ------------------------------------------

def qa_closed_form(n_terms: int) -> List[Fraction]:
    """``2 sum_n (2^{2n+2} - 1) (-1)^n B_{2n+2}/(n+1) x^{2n}``."""
    B = _bern(n_terms + 2)
    out = []
    for m in range(n_terms):
        if m % 2:
            out.append(Fraction(0))
            continue
        n = m // 2
        out.append(2 * (2 ** (2 * n + 2) - 1) * (-1) ** n * B[2 * n + 2] / (n + 1))
    return out


def qd_closed_form(n_terms: int) -> List[Fraction]:
    """``2 sum_n (2n+3) B_{2n+2} (-x)^n``."""
    B = _bern(2 * n_terms + 2)
    return [2 * (2 * n + 3) * B[2 * n + 2] * (-1) ** n for n in range(n_terms)]


def qb_closed_form(n_terms: int) -> List[Fraction]:
    """``2 sum_n (-x/2)^n sum_{k<=n+1} C(n+1,k) (2^{n+k+2} - 1) B_{n+k+2}``."""
    B = _bern(2 * n_terms + 3)
    out = []
    for n in range(n_terms):
        s = sum(math.comb(n + 1, k) * (2 ** (n + k + 2) - 1) * B[n + k + 2] for k in range(n + 2))
        out.append(2 * Fraction(-1, 2) ** n * s)
    return out


def qb_negative_half(n_terms: int) -> List[Fraction]:
    """``Q_B(x, 0, -1/2) = -2 sum_n B_{n+1} x^n``."""
    B = _bern(n_terms + 1)
    return [-2 * B[n + 1] for n in range(n_terms)]


CLOSED_FORMS = {"A": qa_closed_form, "B": qb_closed_form, "D": qd_closed_form}


# -- recurrences and ODEs ------------------------------------------------------

def model_a_recurrence_failures(a: list) -> list:
    """Indices ``n`` where ``2 a_{n+1} = sum_{l=1}^n C(n,l) a_{l-1} a_{n-l}`` fails."""
    bad = []
    for n in range(len(a) - 1):
        rhs = sum(math.comb(n, l) * a[l - 1] * a[n - l] for l in range(1, n + 1))
        if 2 * a[n + 1] != rhs:
            bad.append(n)
    return bad


def model_d_recurrence_failures(d: list) -> list:
    """Indices ``n`` where ``4(n+2)(2n+3) d_n = sum_{l<n} C(2n+4, 2l+3) d_l d_{n-1-l}`` fails."""
    bad = []
    for n in range(len(d)):
        rhs = sum(math.comb(2 * n + 4, 2 * l + 3) * d[l] * d[n - 1 - l] for l in range(n))
        if 4 * (n + 2) * (2 * n + 3) * d[n] != rhs:
            bad.append(n)
    return bad


def model_b_linear_failures(b: list) -> list:
    """Indices ``n`` where ``sum_{l<=n} (-2)^l C(2n-l+1, l+1) b_l = 1`` fails."""
    bad = []
    for n in range(len(b)):
        s = sum((-2) ** l * math.comb(2 * n - l + 1, l + 1) * b[l] for l in range(n + 1))
        if s != 1:
            bad.append(n)
    return bad


def euler_bernoulli_failures(B: list) -> list:
    """Indices ``n > 1`` where ``(2n+1) B_{2n} + sum_{i=1}^{n-1} C(2n,2i) B_{2i} B_{2n-2i} = 0`` fails."""
    bad = []
    for n in range(2, (len(B) - 1) // 2 + 1):
        s = (2 * n + 1) * B[2 * n] + sum(math.comb(2 * n, 2 * i) * B[2 * i] * B[2 * n - 2 * i]
                                         for i in range(1, n))
        if s != 0:
            bad.append(n)
    return bad


def verify_recurrences(n_max: int, a=None, d=None, b=None) -> List[Check]:
    """Run all quadratic/linear recurrences for ``n <= n_max``.

    The sequences default to the closed forms; callers may pass coefficient
    lists computed some other way.
    """
    a = qa_closed_form(n_max + 2) if a is None else a
    d = qd_closed_form(n_max + 1) if d is None else d
    b = qb_closed_form(n_max + 1) if b is None else b
    B = list(_bern(2 * n_max))
    checks = []

    bad = model_a_recurrence_failures(a)
    checks.append(Check("model A quadratic recurrence", not bad,
                        f"n = 0..{len(a) - 2}" if not bad else f"fails at n = {bad}"))

    bad = model_d_recurrence_failures(d)
    holds = [n for n in range(len(d)) if n not in bad]
    smallest = next((n for n in range(len(d)) if all(m not in bad for m in range(n, len(d)))), None)
    ok = smallest is not None and smallest <= 1
    detail = f"holds for n = {smallest}..{len(d) - 1}"
    if bad:
        detail += f"; fails at n = {bad} (empty right-hand side at n = 0, d_0 = 1)"
    checks.append(Check("model D quadratic recurrence", ok, detail,
                        {"smallest_valid_n": smallest, "failing_n": bad, "holding_n": len(holds)}))

    bad = model_b_linear_failures(b)
    checks.append(Check("model B linear recurrence", not bad,
                        f"n = 0..{len(b) - 1}" if not bad else f"fails at n = {bad}"))

    bad = euler_bernoulli_failures(B)
    checks.append(Check("Euler quadratic Bernoulli recurrence", not bad,
                        f"n = 2..{len(B) // 2}" if not bad else f"fails at n = {bad}"))
    return checks


def ode_residual_a(order: int, a=None) -> TruncSeries:
    """``x^2 F^2 - 4x F' - 4F + 4`` for ``F = sum a_n x^n/(n+1)!``."""
    a = qa_closed_form(order + 1) if a is None else a
    F = TruncSeries([Fraction(a[n], math.factorial(n + 1)) for n in range(order + 1)], order + 1, "x")
    x = TruncSeries.identity(order, "x")
    Ft = F.truncate(order)
    return (x * x * Ft * Ft - 4 * x * F.derivative() - 4 * Ft + 4)


def ode_residual_d(order: int, d=None) -> TruncSeries:
    """``x F^2 - 4x F' - 6F + 1`` for ``F = sum d_n x^n/(2n+3)!``."""
    d = qd_closed_form(order + 1) if d is None else d
    F = TruncSeries([Fraction(d[n], math.factorial(2 * n + 3)) for n in range(order + 1)], order + 1, "x")
    x = TruncSeries.identity(order, "x")
    Ft = F.truncate(order)
    return (x * Ft * Ft - 4 * x * F.derivative() - 6 * Ft + 1)


def verify_odes(order: int) -> List[Check]:
    checks = []
    for name, res in (("F_A ODE", ode_residual_a(order)), ("F_D ODE", ode_residual_d(order))):
        nz = next((n for n, c in enumerate(res.coeffs) if c != 0), None)
        checks.append(Check(f"{name} residual", nz is None,
                            f"zero to order {res.order}" if nz is None else f"first nonzero at x^{nz}"))
    return checks


def _dual(name: str, build, n_max: int) -> Check:
    try:
        build(n_max)
    except SequenceMismatch as exc:
        return Check(name, False, str(exc))
    return Check(name, True, f"two constructions agree for n <= {n_max}")


def verify_sequences(n_terms: int = 30, recurrence_n: int = 30, ode_order: int = 20) -> List[Check]:
    """Dual constructions, section closed forms against exact enumeration, recurrences and ODEs."""
    from .transfer import section_coefficients

    checks = [
        _dual("Bernoulli closed form vs recurrence", bernoulli, 2 * n_terms),
        _dual("tangent numbers via Bernoulli vs tan ODE", tangent_numbers, n_terms),
        _dual("secant numbers via 1/cos vs recurrence", euler_secant, n_terms),
        _dual("median Genocchi via Euler vs Bernoulli", median_genocchi, min(n_terms, 20)),
    ]
    for mid, form in CLOSED_FORMS.items():
        got = section_coefficients(mid, n_terms)
        want = form(n_terms)
        bad = next((n for n, (a, b) in enumerate(zip(got, want)) if a != b), None)
        checks.append(Check(f"Q_{mid}(x,0,1/2) closed form", bad is None,
                            f"{n_terms} terms" if bad is None else f"first mismatch at x^{bad}",
                            {} if bad is None else {"first_nonzero": bad}))
    qb = section_coefficients("B", n_terms)
    checks.append(Check("Q_B(x,0,1/2) integral", all(v.denominator == 1 for v in qb), f"{n_terms} terms"))
    plus = section_coefficients("A", n_terms)
    minus = section_coefficients("A", n_terms, Fraction(-1, 2))
    bad = next((n for n, (a, b) in enumerate(zip(plus, minus)) if a != b), None)
    checks.append(Check("Q_A(x,0,1/2) = Q_A(x,0,-1/2)", bad is None,
                        f"{n_terms} terms" if bad is None else f"first mismatch at x^{bad}"))
    n_neg = min(n_terms, 20)
    got = section_coefficients("B", n_neg, Fraction(-1, 2))
    bad = next((n for n, (a, b) in enumerate(zip(got, qb_negative_half(n_neg))) if a != b), None)
    checks.append(Check("Q_B(x,0,-1/2) = -2 sum B_{n+1} x^n", bad is None,
                        f"{n_neg} terms" if bad is None else f"first mismatch at x^{bad}"))
    checks += verify_recurrences(recurrence_n)
    checks += verify_odes(ode_order)
    return checks

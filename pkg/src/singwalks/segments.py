"""Walks on the antidiagonal segments ``S_k = {(k-i, i)}``.

A walk confined to ``S_k`` moves by NW/SE, i.e. it is a simple walk on the
path graph with ``k + 1`` vertices.  Its generating matrix is ``F_{k+1}``, the
inverse of the tridiagonal matrix ``tridiag(-t, 1, -t)``.

Indices here are 0-based (``P_i = (k - i, i)``) unless a docstring says
otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from .algebra import TruncSeries

Matrix = List[list]


class SingularMatrixError(ValueError):
    """Raised when ``t`` is a pole of ``F_n``."""


@dataclass(frozen=True)
class SegmentIndex:
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("segment index must be nonnegative")

    @property
    def points(self) -> list:
        return [(self.k - i, i) for i in range(self.k + 1)]

    def index_of(self, point) -> int:
        a, b = point
        if a < 0 or b < 0 or a + b != self.k:
            raise ValueError(f"{point} is not on S_{self.k}")
        return b


def chebyshev_u(n: int, z) -> Fraction:
    """``U_n(z)`` from ``U_{n+1} = 2 z U_n - U_{n-1}``."""
    if n < 0:
        return Fraction(0)
    z = Fraction(z)
    prev, cur = Fraction(1), 2 * z
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2 * z * cur - prev
    return cur


def chebyshev_u_values(n: int, z) -> list:
    """``[U_0(z), ..., U_n(z)]``."""
    z = Fraction(z)
    vals = [Fraction(1), 2 * z]
    while len(vals) <= n:
        vals.append(2 * z * vals[-1] - vals[-2])
    return vals[: n + 1]


def tridiagonal(n: int, t) -> Matrix:
    t = Fraction(t)
    return [[Fraction(1) if i == j else (-t if abs(i - j) == 1 else Fraction(0))
             for j in range(n)] for i in range(n)]


def _bareiss(m: list) -> tuple:
    """Fraction-free elimination of an integer matrix (augmented columns allowed).

    Returns ``(rows, sign)``; the last pivot is the determinant of the leading
    square block up to ``sign``, and ``sign == 0`` flags a singular block.
    """
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n):
        p = next((r for r in range(k, n) if a[r][k] != 0), None)
        if p is None:
            return a, 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, len(row_i)):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return a, sign


def _integer_tridiagonal(n: int, t: Fraction) -> list:
    p, q = t.numerator, t.denominator
    return [[q if i == j else (-p if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def tridiagonal_det(n: int, t) -> Fraction:
    """Determinant of ``tridiag(-t, 1, -t)`` of size ``n`` by Bareiss elimination."""
    if n == 0:
        return Fraction(1)
    t = Fraction(t)
    rows, sign = _bareiss(_integer_tridiagonal(n, t))
    if sign == 0:
        return Fraction(0)
    return Fraction(sign * rows[n - 1][n - 1], t.denominator ** n)


def f_matrix_by_inversion(n: int, t) -> Matrix:
    """Exact inverse of ``tridiag(-t, 1, -t)`` (size ``n``)."""
    t = Fraction(t)
    q = t.denominator
    aug = [row + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(_integer_tridiagonal(n, t))]
    rows, sign = _bareiss(aug)
    if sign == 0 or rows[n - 1][n - 1] == 0:
        raise SingularMatrixError(f"tridiag(-t, 1, -t) of size {n} is singular at t = {t}")
    # back substitution on the upper-triangular system, one right-hand side per column
    inv = [[Fraction(0)] * n for _ in range(n)]
    for col in range(n):
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            acc = Fraction(rows[i][n + col])
            for j in range(i + 1, n):
                if rows[i][j]:
                    acc -= rows[i][j] * x[j]
            x[i] = acc / rows[i][i]
        for i in range(n):
            inv[i][col] = x[i] * q
    return inv


def f_matrix_closed_form(n: int, t) -> Matrix:
    """``F_n`` from the Chebyshev product formula, 1-based ``f_ij`` for ``i <= j``.

    ``f_ij = U_{n-j}(z) U_{i-1}(z) / (t U_n(z))`` with ``z = 1/(2t)``.
    """
    t = Fraction(t)
    if t == 0:
        raise ZeroDivisionError("closed form degenerates at t = 0")
    u = chebyshev_u_values(n, 1 / (2 * t))
    if u[n] == 0:
        raise SingularMatrixError(f"t = {t} is a pole of F_{n}")
    scale = 1 / (t * u[n])
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            v = u[n - j] * u[i - 1] * scale
            out[i - 1][j - 1] = v
            out[j - 1][i - 1] = v
    return out


def f_matrix_half(n: int) -> Matrix:
    """``F_n`` at ``t = 1/2``: entry ``2 i (n - j + 1)/(n + 1)`` for 1-based ``i <= j``."""
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            v = Fraction(2 * i * (n - j + 1), n + 1)
            out[i - 1][j - 1] = v
            out[j - 1][i - 1] = v
    return out


def f_matrix(n: int, t) -> Matrix:
    """``F_n`` at rational ``t`` by the cheapest exact route."""
    t = Fraction(t)
    if t == 0:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if t == Fraction(1, 2):
        return f_matrix_half(n)
    return f_matrix_closed_form(n, t)


def w_series(k: int, i: int, j: int, order: int) -> TruncSeries:
    """Generating series of walks on ``S_k`` from ``P_i`` to ``P_j``, by direct DP."""
    if not (0 <= i <= k and 0 <= j <= k):
        raise ValueError(f"indices must lie in 0..{k}")
    layer = [0] * (k + 1)
    layer[i] = 1
    coeffs = []
    for _ in range(order):
        coeffs.append(layer[j])
        nxt = [0] * (k + 1)
        for p, c in enumerate(layer):
            if c:
                if p > 0:
                    nxt[p - 1] += c
                if p < k:
                    nxt[p + 1] += c
        layer = nxt
    return TruncSeries(coeffs, order, "t")


def w_matrix(k: int, order: int) -> list:
    """Matrix of :func:`w_series` truncations for all pairs on ``S_k``."""
    return [[w_series(k, i, j, order) for j in range(k + 1)] for i in range(k + 1)]


def neumann_f(n: int, order: int) -> list:
    """``F_n`` as ``sum_m t**m T**m`` where ``T`` is the path adjacency matrix."""
    power = [[int(i == j) for j in range(n)] for i in range(n)]
    coeffs = [[[0] * order for _ in range(n)] for _ in range(n)]
    for m in range(order):
        for a in range(n):
            for b in range(n):
                coeffs[a][b][m] = power[a][b]
        power = [[(power[a][b - 1] if b > 0 else 0) + (power[a][b + 1] if b < n - 1 else 0)
                  for b in range(n)] for a in range(n)]
    return [[TruncSeries(coeffs[a][b], order, "t") for b in range(n)] for a in range(n)]


def series_matrix_times_tridiagonal(mat: list, order: int) -> list:
    """``mat @ tridiag(-t, 1, -t)`` for a square matrix of t-series."""
    n = len(mat)
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            acc = mat[a][b]
            for c in (b - 1, b + 1):
                if 0 <= c < n:
                    acc = acc - mat[a][c].shift(1).truncate(order)
            row.append(acc)
        out.append(row)
    return out


def pole_and_residue(k: int, i: int, j: int) -> tuple:
    """Dominant pole of ``W_k(P_i, P_j, t)`` and the residue constant there.

    ``c = sin(th)**2 U_{k+1-b}(cos th) U_{a-1}(cos th) / ((k+2) cos th)`` with
    ``th = pi/(k+2)`` and 1-based ``a = min(i,j)+1 <= b = max(i,j)+1``, so that
    ``W ~ c/(pole - t)``.
    """
    if not (0 <= i <= k and 0 <= j <= k):
        raise ValueError(f"indices must lie in 0..{k}")
    theta = math.pi / (k + 2)
    c = math.cos(theta)
    a, b = min(i, j) + 1, max(i, j) + 1
    res = math.sin(theta) ** 2 * _cheb_float(k + 1 - b, c) * _cheb_float(a - 1, c) / ((k + 2) * c)
    return 1 / (2 * c), res


def _cheb_float(n: int, z: float) -> float:
    if n < 0:
        return 0.0
    prev, cur = 1.0, 2 * z
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2 * z * cur - prev
    return cur


def residue_fit(k: int, i: int, j: int, n_coeffs: int = 200) -> tuple:
    """Estimate pole and residue from the DP coefficients of ``W_k``.

    The series is even up to the sign of ``-pole``, so consecutive terms are
    averaged to cancel that contribution.
    """
    w = w_series(k, i, j, n_coeffs + 2).coeffs
    n = n_coeffs - 1
    if n % 2 != (i + j) % 2:
        n -= 1
    pole = math.sqrt(w[n] / w[n + 2])
    m = n - 1
    res = 0.5 * (w[m] * pole ** (m + 1) + w[m + 1] * pole ** (m + 2))
    return pole, res


def verify_segments(n_max: int = 50, det_n: int = 30, ts=None) -> list:
    """Closed form vs exact inversion, the ``t = 1/2`` pattern and the determinant identity."""
    from .checks import Check

    ts = [Fraction(1, 3), Fraction(1, 5), Fraction(2, 7), Fraction(-1, 4), Fraction(3, 8)] if ts is None else ts
    checks = []
    for t in ts:
        bad = next((n for n in range(1, n_max + 1)
                    if f_matrix_closed_form(n, t) != f_matrix_by_inversion(n, t)), None)
        checks.append(Check(f"F_n closed form = inverse at t={t}", bad is None,
                            f"n = 1..{n_max}" if bad is None else f"first mismatch at n = {bad}"))
        bad = next((n for n in range(1, det_n + 1)
                    if tridiagonal_det(n, t) != (-t) ** n * chebyshev_u(n, -1 / (2 * t))), None)
        checks.append(Check(f"det = (-t)^n U_n(-1/(2t)) at t={t}", bad is None,
                            f"n = 1..{det_n}" if bad is None else f"first mismatch at n = {bad}"))
    bad = next((n for n in range(1, n_max + 1)
                if f_matrix_half(n) != f_matrix_by_inversion(n, Fraction(1, 2))), None)
    checks.append(Check("F_n at t=1/2 pattern", bad is None,
                        f"n = 1..{n_max}" if bad is None else f"first mismatch at n = {bad}"))
    return checks

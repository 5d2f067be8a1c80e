"""Exact enumeration by jump-matrix / segment-matrix products.

A walk of a singular model is a sequence of fluctuations on antidiagonal
segments separated by forward jumps (N/E raise ``i + j`` by one, NE by two).
The vector of endpoint generating functions on ``S_k`` is therefore obtained
by pushing the vectors on ``S_{k-1}`` and ``S_{k-2}`` through the jump
matrices, multiplying by ``t`` and then by ``F_{k+1}``.

Two engines share that recursion: exact evaluation at a rational ``t`` and
formal truncated expansion in ``t``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple

from .algebra import TruncSeries, format_scalar
from .models import ModelSpec, get_model
from .segments import f_matrix

HALF = Fraction(1, 2)


# -- jump matrices -------------------------------------------------------

def jump_matrix(kind: str, n: int) -> List[List[int]]:
    """``A_n`` ((n-2) x n), ``B_n`` or ``D_n`` ((n-1) x n) as 0/1 matrices."""
    if kind == "A":
        return [[int(c == r + 1) for c in range(n)] for r in range(n - 2)]
    if kind == "D":
        return [[int(c == r + 1) for c in range(n)] for r in range(n - 1)]
    if kind == "B":
        return [[int(c in (r, r + 1)) for c in range(n)] for r in range(n - 1)]
    raise ValueError(f"unknown jump kind {kind!r}")


def model_jump_matrix(m: ModelSpec, level: int, n: int) -> List[List[int]]:
    """Jump from ``S_{n-1-level}`` to ``S_{n-1}`` using the steps of ``m`` at that level."""
    rows = n - level
    out = [[0] * n for _ in range(rows)]
    for dx, dy in m.steps_by_level(level):
        for r in range(rows):
            out[r][r + dy] += 1
    return out


def compositions12(k: int) -> Iterator[Tuple[int, ...]]:
    """Ordered compositions of ``k`` into parts 1 and 2."""
    if k == 0:
        yield ()
        return
    for first in (1, 2):
        if first <= k:
            for rest in compositions12(k - first):
                yield (first,) + rest


# -- engines -------------------------------------------------------------

class _ExactEngine:
    def __init__(self, t):
        self.t = Fraction(t)
        self._cache: Dict[int, list] = {}

    def unit(self):
        return [Fraction(1)]

    def zero(self, n):
        return [Fraction(0)] * n

    def add(self, a, b):
        return [x + y for x, y in zip(a, b)]

    def jump(self, vec, J):
        n = len(J[0])
        out = [Fraction(0)] * n
        for r, v in enumerate(vec):
            if v:
                for c, e in enumerate(J[r]):
                    if e:
                        out[c] += e * v
        return out

    def t_times_f(self, vec):
        n = len(vec)
        if n not in self._cache:
            self._cache[n] = f_matrix(n, self.t)
        F = self._cache[n]
        out = [Fraction(0)] * n
        for r, v in enumerate(vec):
            if v:
                row = F[r]
                for c in range(n):
                    out[c] += v * row[c]
        return [self.t * x for x in out]


class _FormalEngine:
    """Vectors of coefficient lists; ``F_n`` is applied as its Neumann series."""

    def __init__(self, order: int):
        self.order = order

    def unit(self):
        return [[1] + [0] * (self.order - 1)]

    def zero(self, n):
        return [[0] * self.order for _ in range(n)]

    def add(self, a, b):
        return [[x + y for x, y in zip(u, v)] for u, v in zip(a, b)]

    def jump(self, vec, J):
        n = len(J[0])
        out = self.zero(n)
        for r, v in enumerate(vec):
            for c, e in enumerate(J[r]):
                if e:
                    oc = out[c]
                    for d in range(self.order):
                        oc[d] += e * v[d]
        return out

    def t_times_f(self, vec):
        # w = t*vec*F  <=>  w = t*vec + t*(w T), T the path adjacency
        n, N = len(vec), self.order
        w = [[0] * N for _ in range(n)]
        for d in range(1, N):
            for e in range(n):
                acc = vec[e][d - 1]
                if e > 0:
                    acc += w[e - 1][d - 1]
                if e < n - 1:
                    acc += w[e + 1][d - 1]
                w[e][d] = acc
        return w


def _vectors(m: ModelSpec, k_max: int, engine) -> list:
    """Endpoint vectors on ``S_0 .. S_{k_max}`` by the prefix-merged recursion."""
    vecs = [engine.unit()]
    levels = m.forward_levels
    for k in range(1, k_max + 1):
        acc = engine.zero(k + 1)
        for level in levels:
            if k - level >= 0:
                acc = engine.add(acc, engine.jump(vecs[k - level], model_jump_matrix(m, level, k + 1)))
        vecs.append(engine.t_times_f(acc))
    return vecs


def _check_t(t) -> Fraction:
    t = Fraction(t)
    if abs(t) > HALF:
        raise ValueError(
            f"|t| = {abs(t)} exceeds 1/2: the poles 1/(2cos(pi/(k+2))) of the endpoint "
            "series accumulate at 1/2, so Q(x,y,t) cannot be evaluated beyond it")
    return t


def endpoint_vector(m: ModelSpec, k: int, t) -> list:
    """``[sum_n #{(0,0) -> (k-i, i)} t**n for i in 0..k]`` exactly."""
    return _vectors(m, k, _ExactEngine(_check_t(t)))[k]


def endpoint_vector_formal_t(m: ModelSpec, k: int, order: int) -> list:
    """Endpoint vector as t-series known modulo ``t**order``."""
    vec = _vectors(m, k, _FormalEngine(order))[k]
    return [TruncSeries(c, order, "t") for c in vec]


def all_vectors_formal_t(m: ModelSpec, k_max: int, order: int) -> list:
    return [[TruncSeries(c, order, "t") for c in v] for v in _vectors(m, k_max, _FormalEngine(order))]


# -- literal products, kept as slow reference paths ----------------------

def _literal_product(parts, kinds, engine):
    vec = engine.unit()
    total = 0
    for part, kind in zip(parts, kinds):
        total += part
        vec = engine.t_times_f(engine.jump(vec, jump_matrix(kind, total + 1)))
    return vec


def _literal_terms(m: ModelSpec, k: int):
    one_kind = {"B": "B", "C": "B", "D": "D", "E": "D"}.get(m.id)
    if m.id == "A":
        if k % 2:
            return []
        return [((2,) * (k // 2), ("A",) * (k // 2))]
    if m.id in ("B", "D"):
        return [((1,) * k, (one_kind,) * k)]
    return [(c, tuple("A" if p == 2 else one_kind for p in c)) for c in compositions12(k)]


def endpoint_vector_literal(m: ModelSpec, k: int, t=None, order: int | None = None) -> list:
    """Endpoint vector from the fixed jump matrices A_n, B_n, D_n, summing over compositions for C/E."""
    engine = _FormalEngine(order) if t is None else _ExactEngine(_check_t(t))
    acc = engine.zero(k + 1)
    for parts, kinds in _literal_terms(m, k):
        acc = engine.add(acc, _literal_product(parts, kinds, engine))
    if t is None:
        return [TruncSeries(c, order, "t") for c in acc]
    return acc


# -- coefficients of Q(x, y, t) -------------------------------------------

@dataclass
class QTruncation:
    """Coefficients ``[x^i y^j] Q(x, y, t)`` for ``i + j <= k_max``."""

    model: ModelSpec
    t: Fraction
    k_max: int
    coeffs: Dict[Tuple[int, int], Fraction] = field(repr=False)

    def __getitem__(self, cell) -> Fraction:
        i, j = cell
        if i < 0 or j < 0 or i + j > self.k_max:
            raise KeyError(f"{cell} outside the truncation i + j <= {self.k_max}")
        return self.coeffs[(i, j)]

    def section_x(self) -> list:
        """Coefficients of ``Q(x, 0, t)``."""
        return [self.coeffs[(i, 0)] for i in range(self.k_max + 1)]

    def section_y(self) -> list:
        return [self.coeffs[(0, j)] for j in range(self.k_max + 1)]

    def to_json(self) -> Dict[str, str]:
        return {f"({i},{j})": format_scalar(self.coeffs[(i, j)])
                for k in range(self.k_max + 1) for i, j in ((k - b, b) for b in range(k + 1))}


def q_half(m: ModelSpec, k_max: int, t=HALF) -> QTruncation:
    """All coefficients of ``Q(x, y, t)`` with ``i + j <= k_max`` (default ``t = 1/2``)."""
    t = _check_t(t)
    vecs = _vectors(m, k_max, _ExactEngine(t))
    coeffs = {}
    for k, vec in enumerate(vecs):
        for i, v in enumerate(vec):
            coeffs[(k - i, i)] = v
    return QTruncation(m, t, k_max, coeffs)


def section_coefficients(model_id: str, n_terms: int, t=HALF) -> list:
    """First ``n_terms`` coefficients of ``Q(x, 0, t)``."""
    m = get_model(model_id)
    return q_half(m, n_terms - 1, t).section_x()


# -- Mishna-Rechnitzer recurrence ------------------------------------------

def _t_of_q(order: int) -> TruncSeries:
    return TruncSeries.rational([0, 1], [1, 0, 1], order, "q")


def mire_recurrence_check(k: int, order: int, perturb: tuple | None = None) -> bool:
    """Check the model-A identity between ``D_{2k}`` and ``D_{2k-2}`` as q-series.

    ``(t y^2 - y + t) D_{2k}(y) = t q^2 (y^{2k+2}+1)/(q^{2k+2}+1) D_{2k-2}(q) - t y^2 D_{2k-2}(y)``
    with ``t = q/(1+q^2)``.  ``perturb = (i, n, delta)`` adds ``delta`` to the
    ``t**n`` coefficient of entry ``i`` of ``D_{2k-2}`` (soundness probe).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    m = get_model("A")
    vecs = _vectors(m, 2 * k, _FormalEngine(order))
    hi = [TruncSeries(c, order, "t") for c in vecs[2 * k]]
    lo_raw = [list(c) for c in vecs[2 * k - 2]]
    if perturb is not None:
        i, n, delta = perturb
        lo_raw[i][n] += delta
    lo = [TruncSeries(c, order, "t") for c in lo_raw]

    tq = _t_of_q(order)
    hi_q = [s.compose(tq) for s in hi]
    lo_q = [s.compose(tq) for s in lo]
    q = TruncSeries.identity(order, "q")

    deg = 2 * k + 2
    lhs = [TruncSeries([], order, "q") for _ in range(deg + 1)]
    for i, c in enumerate(hi_q):
        lhs[i] = lhs[i] + tq * c
        lhs[i + 1] = lhs[i + 1] - c
        lhs[i + 2] = lhs[i + 2] + tq * c

    lo_at_q = TruncSeries([], order, "q")
    qpow = TruncSeries.constant(1, order, "q")
    for c in lo_q:
        lo_at_q = lo_at_q + c * qpow
        qpow = qpow * q
    denom = TruncSeries([1] + [0] * (deg - 1) + [1], order, "q")
    corner = tq * (q * q) * lo_at_q * denom.inverse()

    rhs = [TruncSeries([], order, "q") for _ in range(deg + 1)]
    rhs[0] = rhs[0] + corner
    rhs[deg] = rhs[deg] + corner
    for i, c in enumerate(lo_q):
        rhs[i + 2] = rhs[i + 2] - tq * c
    return all(a == b for a, b in zip(lhs, rhs))

"""Kernel functional equation and the difference equations it induces.

``K(x,y) Q(x,y) = xy - t x^2 Q(x,0) - t y^2 Q(0,y)`` is checked directly as a
bivariate truncation.  The kernel curve is then rationally parametrized by
``s``; two points ``(x0, y0)`` and ``(x0~, y0)`` on it with ``x0~ = x0 o sigma``
turn the equation into ``G(sigma(s)) - G(s) = R(s)`` for
``G = t x0^2 Q(x0, 0)``.  Everything is expanded as exact series in ``s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .algebra import I, GaussianRational, TruncSeries, first_nonzero
from .checks import Check
from .models import ModelSpec, get_model, kernel_poly, poly_eval
from .transfer import HALF, q_half


class ParametrizationError(ValueError):
    """A parametrization does not lie on the kernel curve."""


@dataclass
class KernelParam:
    model: ModelSpec
    regime: str  # "generic" or "v1"
    v: Fraction
    t: Fraction
    x0: TruncSeries
    y0: TruncSeries
    x0tilde: TruncSeries
    y0tilde: TruncSeries
    sigma: TruncSeries
    field: str  # "rational" or "gaussian"
    uses_symmetry: bool = False

    @property
    def order(self) -> int:
        return self.x0.order


def _rat(num, den, order):
    return TruncSeries.rational(num, den, order, "s")


def _generic_data(mid: str, v: Fraction, order: int) -> tuple:
    """``(x0, y0, x0tilde)`` for ``v`` in (0, 1)."""
    R = lambda n, d: _rat(n, d, order)
    if mid == "A":
        c = 1 - v * v
        return (R([0, c], [v, 0, v]),
                R([0, c], [1, 0, v * v]),
                R([0, c * v], [1, 0, v ** 4]))
    if mid == "B":
        c = -(v + 1) * (1 - v) ** 2
        return (R([0, c], [v, -v * (1 + v), v * v]),
                R([0, c], [1, -(v + v * v), v ** 3]),
                R([0, c * v], [1, -(v ** 2 + v ** 3), v ** 5]))
    if mid == "C":
        c = (v + 1) * (v - 1) ** 2
        w = v * v - v + 1
        return (R([0, c], [v * w, v * (v + 1), v]),
                R([0, c], [w, v * v + v, v * v]),
                R([0, c * v], [w, v ** 3 + v * v, v ** 4]))
    if mid == "D":
        c = (v - 1) ** 2 * (v + 1) ** 2
        return (R([0, c], [v * v, 2 * v * v, v * v]),
                R([0, c], [v, v * (1 + v * v), v ** 3]),
                R([0, c], [1, 2 * v * v, v ** 4]))
    if mid == "E":
        c = (v - 1) ** 2 * (v + 1) ** 2
        w = v ** 4 - v * v + 1
        return (R([0, c], [v * w, 2 * v * v, v]),
                R([0, c], [w, v ** 3 + v, v * v]),
                R([0, c * v], [w, 2 * v ** 3, v ** 4]))
    raise ValueError(mid)


def _v1_data(mid: str, order: int) -> tuple:
    """``(x1, y1, x1tilde, sigma)`` at ``t = 1/2`` (``v = 1``), models B to E."""
    R = lambda n, d: _rat(n, d, order)
    h = Fraction(1, 2)
    if mid == "B":
        return (R([0, 0, -1], [2, 1]), R([0, 0, -1], [2, 3, 1]),
                R([0, 0, -1], [2, 5, 3]), R([0, 1], [1, 1]))
    if mid == "C":
        return (R([0, 0, -1], [2, -1, h]), R([0, 0, -1], [2, 1, h]),
                R([0, 0, -1], [2, 3, 3 * h]), R([0, 1], [1, 1]))
    if mid == "D":
        return (R([0, 0, -4], [1, -2, 1]), R([0, 0, 4], [-1, 0, 1]),
                R([0, 0, -4], [1, 2, 1]), R([0, 1], [1, 2]))
    if mid == "E":
        return (R([0, 0, -1], [1, 0, 1]), R([0, 0, -1], [1, 1, 1]),
                R([0, 0, -1], [1, 2, 2]), R([0, 1], [1, 1]))
    raise ValueError(mid)


def kernel_at(m: ModelSpec, t, x: TruncSeries, y: TruncSeries) -> TruncSeries:
    return poly_eval(kernel_poly(m, t), x, y) + TruncSeries([], min(x.order, y.order), "s")


def build_param(model: str | ModelSpec, regime: str = "generic", v=None, order: int = 24) -> KernelParam:
    m = get_model(model) if isinstance(model, str) else model
    if order < 4:
        raise ValueError("order must be at least 4")
    if regime == "generic":
        v = Fraction(v)
        if not 0 < v < 1:
            raise ValueError("generic regime needs rational v in (0, 1)")
        t = v / (1 + v * v)
        x0, y0, xt = _generic_data(m.id, v, order)
        sigma = TruncSeries([0, v * v], order, "s")
        p = KernelParam(m, regime, v, t, x0, y0, xt, y0, sigma, "rational")
    elif regime == "v1":
        t = HALF
        if m.id == "A":
            # reducible kernel: y = x/(1 + i x) on the first factor, swapped point on the second
            s = TruncSeries.identity(order, "s")
            tau = s * TruncSeries([1, I], order, "s").inverse()
            p = KernelParam(m, regime, Fraction(1), t, s, tau, tau, s, tau, "gaussian",
                            uses_symmetry=True)
        else:
            x1, y1, xt, sigma = _v1_data(m.id, order)
            p = KernelParam(m, regime, Fraction(1), t, x1, y1, xt, y1, sigma, "rational")
    else:
        raise ValueError(f"unknown regime {regime!r}")
    _validate(p)
    return p


def _validate(p: KernelParam):
    for label, x, y in (("(x0, y0)", p.x0, p.y0), ("(x0~, y0~)", p.x0tilde, p.y0tilde)):
        for name, ser in (("x", x), ("y", y)):
            if ser[0] != 0:
                raise ParametrizationError(f"{p.model.id}: {name} of {label} has a constant term")
        res = kernel_at(p.model, p.t, x, y)
        nz = first_nonzero(res)
        if nz is not None:
            raise ParametrizationError(
                f"model {p.model.id} ({p.regime}): kernel residual at {label} nonzero at s^{nz}")
    if not p.uses_symmetry:
        shifted = p.x0.compose(p.sigma)
        nz = first_nonzero(shifted - p.x0tilde)
        if nz is not None:
            raise ParametrizationError(f"model {p.model.id}: x0~ != x0 o sigma at s^{nz}")


# -- Q sections as series ------------------------------------------------------

def q_sections(m: ModelSpec, t, n_terms: int) -> tuple:
    """``(Q(x,0,t), Q(0,y,t))`` as series known modulo degree ``n_terms``."""
    q = q_half(m, n_terms - 1, t)
    return (TruncSeries(q.section_x(), n_terms, "x"), TruncSeries(q.section_y(), n_terms, "y"))


def g_series(p: KernelParam, qx: TruncSeries, x: Optional[TruncSeries] = None) -> TruncSeries:
    """``t x^2 Q(x, 0)`` along ``x = x0(s)`` (or the given series)."""
    x = p.x0 if x is None else x
    return p.t * x * x * qx.compose(x)


def section_residual(p: KernelParam, qx: TruncSeries, qy: TruncSeries, tilde: bool = False) -> TruncSeries:
    """``t x^2 Q(x,0) + t y^2 Q(0,y) - x y`` at one of the two kernel points."""
    x, y = (p.x0tilde, p.y0tilde) if tilde else (p.x0, p.y0)
    return p.t * x * x * qx.compose(x) + p.t * y * y * qy.compose(y) - x * y


def difference_residual(p: KernelParam, qx: TruncSeries) -> TruncSeries:
    """``G(sigma(s)) - G(s) - R(s)`` with ``R = (x0~ - x0) y0``.

    For model A at ``v = 1`` the symmetric form ``G(tau(s)) + G(s) - s tau(s)``
    is used instead (``Q(x,0) = Q(0,x)``).  The order of the returned series
    is the order up to which the check is meaningful.
    """
    G = g_series(p, qx)
    if p.uses_symmetry:
        return G.compose(p.sigma) + G - p.x0 * p.y0
    R = (p.x0tilde - p.x0) * p.y0
    return G.compose(p.sigma) - G - R


def model_a_partial_fractions(v, order: int) -> TruncSeries:
    """``G(s) - G(v^2 s)`` for model A in partial fractions:

    ``((v^2-1)/v) (1/(s^2+1) - 2/(v^2 s^2+1) + 1/(v^4 s^2+1))``.
    """
    v = Fraction(v)
    R = lambda d: _rat([1], d, order)
    return (v * v - 1) / v * (R([1, 0, 1]) - 2 * R([1, 0, v * v]) + R([1, 0, v ** 4]))


# -- kernel equation on a bivariate triangle -------------------------------------

def kernel_equation_residual(model: str | ModelSpec, t, order: int) -> tuple:
    """Residual coefficients of ``K Q - xy + t x^2 Q(x,0) + t y^2 Q(0,y)``.

    ``Q`` is truncated at total degree ``order``; the residual is exact for
    total degree ``<= order + 2``.  Returns ``(residual_dict, frontier)``.
    """
    m = get_model(model) if isinstance(model, str) else model
    t = Fraction(t)
    q = q_half(m, order, t)
    K = kernel_poly(m, t)
    frontier = order + 2
    res: Dict[tuple, Fraction] = {}
    for (a, b), kc in K.items():
        for (i, j), qc in q.coeffs.items():
            if qc and a + i + b + j <= frontier:
                key = (a + i, b + j)
                res[key] = res.get(key, 0) + kc * qc
    res[(1, 1)] = res.get((1, 1), 0) - 1
    for i in range(order + 1):
        if i + 2 <= frontier:
            res[(i + 2, 0)] = res.get((i + 2, 0), 0) + t * q[(i, 0)]
            res[(0, i + 2)] = res.get((0, i + 2), 0) + t * q[(0, i)]
    return {k: v for k, v in res.items() if v != 0}, frontier


# -- reduced equations for models D and B at t = 1/2 -------------------------------------------------

def w_residual(order: int, perturb: Optional[tuple] = None) -> TruncSeries:
    """``W(x) - W(x/(x+1))/(x+1)^2 - x^3 (x+2)/(x+1)^3`` with ``W = (x^2/2) Q_D(-x^2, 0, 1/2)``.

    ``perturb = (n, delta)`` adds ``delta`` to the ``x^n`` coefficient of ``W``.
    """
    n_terms = order // 2 + 1
    qd, _ = q_sections(get_model("D"), HALF, n_terms)
    x = TruncSeries.identity(order, "x")
    inner = TruncSeries([0, 0, -1], order, "x")
    W = (qd.compose(inner) * HALF).shift(2).truncate(order)
    if perturb is not None:
        n, delta = perturb
        cs = list(W.coeffs)
        cs[n] += delta
        W = TruncSeries(cs, order, "x")
    onep = TruncSeries([1, 1], order, "x")
    moved = W.compose(x * onep.inverse())
    rhs = TruncSeries([0, 0, 0, 2, 1], order, "x") * (onep ** 3).inverse()
    return W - moved * (onep ** 2).inverse() - rhs


def f_residual(order: int, perturb: Optional[tuple] = None) -> TruncSeries:
    """Model-B identity at ``t = 1/2`` for ``f = Q_B(x, 0, 1/2)``.

    ``f(-2s^2/(s+1))/(s+1)^2 + f(-2s^2/(1-s))/(1-s)^2 - 2/(1-s^2)``.
    """
    n_terms = order // 2 + 1
    f, _ = q_sections(get_model("B"), HALF, n_terms)
    if perturb is not None:
        n, delta = perturb
        cs = list(f.coeffs)
        cs[n] += delta
        f = TruncSeries(cs, f.order, "x")
    a = _rat([0, 0, -2], [1, 1], order)
    b = _rat([0, 0, -2], [1, -1], order)
    one_p = TruncSeries([1, 1], order, "s")
    one_m = TruncSeries([1, -1], order, "s")
    return (f.compose(a) * (one_p ** 2).inverse() + f.compose(b) * (one_m ** 2).inverse()
            - _rat([2], [1, 0, -1], order))


def qb_negative_half_residual(order: int) -> TruncSeries:
    """``x^2 f(x) + (x/(1+x))^2 f(-x/(1+x)) - 2x^2/(x+1)`` for ``f = Q_B(x, 0, -1/2)``."""
    f, _ = q_sections(get_model("B"), Fraction(-1, 2), order)
    x = TruncSeries.identity(order, "x")
    onep_inv = TruncSeries([1, 1], order, "x").inverse()
    u = x * onep_inv
    return x * x * f.compose(x) + u * u * f.compose(-u) - 2 * x * x * onep_inv


# -- suite -------------------------------------------------------------------------

def _zero_check(name: str, res: TruncSeries, want: int) -> Check:
    nz = first_nonzero(res)
    if nz is not None:
        return Check(name, False, f"first nonzero coefficient at index {nz}", {"first_nonzero": nz})
    if res.order < want:
        return Check(name, False, f"only verified to order {res.order} < {want}",
                     {"verified_order": res.order})
    return Check(name, True, f"zero to order {res.order}", {"verified_order": res.order})


GENERIC_VS = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))


def verify_funceq(models: str = "ABCDE", vs=GENERIC_VS, order: int = 24,
                  kernel_order: int = 10, kernel_ts=(Fraction(1, 3), HALF),
                  include_v1: bool = True, mire: tuple = (8, 20), reduced: tuple = (20, 16)) -> List[Check]:
    from .transfer import mire_recurrence_check

    checks: List[Check] = []
    for mid in models:
        m = get_model(mid)
        for t in kernel_ts:
            res, frontier = kernel_equation_residual(m, t, kernel_order)
            bad = sorted(res, key=lambda c: (c[0] + c[1], c))
            checks.append(Check(f"kernel equation model {mid} t={t}", not bad,
                                f"zero through total degree {frontier}" if not bad
                                else f"first nonzero at x^{bad[0][0]} y^{bad[0][1]}"))
        regimes = [("generic", v) for v in vs] + ([("v1", None)] if include_v1 else [])
        cache: Dict[Fraction, tuple] = {}
        for regime, v in regimes:
            label = f"v={v}" if regime == "generic" else "v=1"
            try:
                p = build_param(m, regime, v, order)
            except ParametrizationError as exc:
                checks.append(Check(f"parametrization model {mid} {label}", False, str(exc)))
                continue
            if p.t not in cache:
                cache[p.t] = q_sections(m, p.t, order)
            qx, qy = cache[p.t]
            checks.append(_zero_check(f"difference equation model {mid} {label}",
                                      difference_residual(p, qx), order))
            for tilde in (False, True):
                which = "x0~" if tilde else "x0"
                checks.append(_zero_check(f"section identity model {mid} {label} at {which}",
                                          section_residual(p, qx, qy, tilde), order))
    if mire:
        kmax, morder = mire
        for k in range(1, kmax + 1):
            ok = mire_recurrence_check(k, morder)
            checks.append(Check(f"Mishna-Rechnitzer recurrence k={k}", ok, f"q-series to order {morder}"))
    if reduced:
        worder, forder = reduced
        checks.append(_zero_check("model D W-equation", w_residual(worder), worder))
        checks.append(_zero_check("model B f-equation", f_residual(forder), forder))
    return checks

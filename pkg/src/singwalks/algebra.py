"""Exact scalars and truncated power series.

Rationals are :class:`fractions.Fraction`.  :class:`GaussianRational` adjoins
the imaginary unit for the few places where it is needed.  :class:`TruncSeries`
is a power series known modulo ``var**order``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, "GaussianRational"]


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other) -> "GaussianRational | None":
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, _RationalABC)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = GaussianRational(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


I = GaussianRational(0, 1)

_GAUSS_RE = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*([+-])\s*(\d+(?:/\d+)?)\*i\s*$")


def format_scalar(x: Scalar) -> str:
    """Serialize as ``"p/q"`` (``"p"`` when q == 1) or ``"a/b+c/d*i"``."""
    if isinstance(x, GaussianRational):
        return str(x)
    return str(Fraction(x))


def parse_scalar(text: str) -> Fraction | GaussianRational:
    m = _GAUSS_RE.match(text)
    if m:
        im = Fraction(m.group(3))
        return GaussianRational(Fraction(m.group(1)), im if m.group(2) == "+" else -im)
    return Fraction(text.strip())


def parse_rational(text: str) -> Fraction:
    value = parse_scalar(text)
    if isinstance(value, GaussianRational):
        raise ValueError(f"expected a rational, got {text!r}")
    return value


class TruncSeries:
    """Power series in ``var`` known modulo ``var**order``.

    Coefficients beyond the truncation order are dropped on construction.
    Instances are immutable.
    """

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs: Iterable[Scalar], order: int, var: str = "t"):
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = list(coeffs)[:order]
        cs.extend([0] * (order - len(cs)))
        self.coeffs: tuple = tuple(cs)
        self.order = order
        self.var = var

    # -- constructors ---------------------------------------------------
    @classmethod
    def constant(cls, c: Scalar, order: int, var: str = "t") -> "TruncSeries":
        return cls([c], order, var)

    @classmethod
    def identity(cls, order: int, var: str = "t") -> "TruncSeries":
        return cls([0, 1], order, var)

    @classmethod
    def rational(cls, num: Sequence[Scalar], den: Sequence[Scalar], order: int,
                 var: str = "t") -> "TruncSeries":
        """Expansion of ``num(var)/den(var)`` for coefficient lists in increasing degree."""
        return cls(num, order, var) * cls(den, order, var).inverse()

    # -- basic queries --------------------------------------------------
    def __getitem__(self, n: int) -> Scalar:
        if n >= self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def __len__(self):
        return self.order

    def valuation(self) -> int:
        """Index of the first nonzero coefficient; ``order`` if none is known."""
        for n, c in enumerate(self.coeffs):
            if c != 0:
                return n
        return self.order

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncation order")
        return TruncSeries(self.coeffs, order, self.var)

    def _check(self, other: "TruncSeries"):
        if other.var != self.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            n = min(self.order, other.order)
            return TruncSeries([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n, self.var)
        if isinstance(other, (int, Fraction, GaussianRational)):
            if self.order == 0:
                return self
            return TruncSeries((self.coeffs[0] + other,) + self.coeffs[1:], self.order, self.var)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        if isinstance(other, (TruncSeries, int, Fraction, GaussianRational)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            n = min(self.order, other.order)
            return TruncSeries(_convolve(self.coeffs, other.coeffs, n), n, self.var)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return TruncSeries([c * other for c in self.coeffs], self.order, self.var)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        if isinstance(other, (int, Fraction, GaussianRational)):
            inv = Fraction(1) / other
            return self * inv
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = TruncSeries.constant(1, self.order, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.var == other.var and self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.order, self.var))

    def inverse(self) -> "TruncSeries":
        if self.order == 0:
            return self
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series inverse needs a nonzero constant term")
        inv0 = Fraction(1) / c0 if not isinstance(c0, GaussianRational) else c0.inverse()
        out = [inv0]
        a = self.coeffs
        for n in range(1, self.order):
            acc = 0
            for k in range(1, n + 1):
                if a[k]:
                    acc = acc + a[k] * out[n - k]
            out.append(-acc * inv0)
        return TruncSeries(out, self.order, self.var)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by ``var**k``; the known order grows by ``k``."""
        if k < 0:
            raise ValueError("negative valuation is not representable")
        return TruncSeries([0] * k + list(self.coeffs), self.order + k, self.var)

    def derivative(self) -> "TruncSeries":
        n = max(self.order - 1, 0)
        return TruncSeries([k * self.coeffs[k] for k in range(1, self.order)], n, self.var)

    def compose(self, g: "TruncSeries") -> "TruncSeries":
        """``self(g)``; ``g`` must have zero constant term.

        The result is known modulo ``var**min(g.order, self.order * val(g))``.
        The variable of the result is the variable of ``g``.
        """
        if g.order > 0 and g.coeffs[0] != 0:
            raise ValueError("composition needs an inner series with zero constant term")
        nu = g.valuation()
        if nu >= g.order:
            # inner series vanishes to its known order
            return TruncSeries(self.coeffs[:1], g.order if self.order else 0, g.var)
        bound = min(g.order, self.order * nu)
        if bound == 0:
            return TruncSeries([], 0, g.var)
        gc = g.coeffs[:bound]
        nterms = min(self.order, (bound - 1) // nu + 1)
        acc: list = [self.coeffs[nterms - 1]]
        for k in range(nterms - 2, -1, -1):
            acc = _convolve(acc, gc, bound)
            acc[0] = acc[0] + self.coeffs[k]
        return TruncSeries(acc, bound, g.var)

    def evaluate_poly(self, x: Scalar) -> Scalar:
        """Sum of the known coefficients times ``x**n``."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def relabel(self, var: str) -> "TruncSeries":
        return TruncSeries(self.coeffs, self.order, var)

    def __repr__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if c != 0:
                terms.append(f"{format_scalar(c)}*{self.var}^{n}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O({self.var}^{self.order})"


def _convolve(a: Sequence, b: Sequence, n: int) -> list:
    out = [0] * n
    la, lb = min(len(a), n), min(len(b), n)
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(min(lb, n - i)):
            bj = b[j]
            if bj != 0:
                out[i + j] = out[i + j] + ai * bj
    return out


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def series_inverse(a: TruncSeries) -> TruncSeries:
    return a.inverse()


def series_compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    return f.compose(g)


def first_nonzero(series: TruncSeries) -> int | None:
    """Index of the first nonzero known coefficient, or None for a zero truncation."""
    v = series.valuation()
    return None if v >= series.order else v

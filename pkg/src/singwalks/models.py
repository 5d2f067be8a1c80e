"""The five singular small-step models and their kernel polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Tuple

Monomial = Tuple[int, int]
Poly = Dict[Monomial, object]

NW, N, NE, E, SE = (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1)

_STEP_SETS = {
    "A": (NW, NE, SE),
    "B": (NW, N, E, SE),
    "C": (NW, N, NE, E, SE),
    "D": (NW, N, SE),
    "E": (NW, N, NE, SE),
}

SYMMETRIC_MODELS = frozenset("ABC")


@dataclass(frozen=True)
class ModelSpec:
    id: str
    steps: frozenset = field(compare=False)

    @property
    def size(self) -> int:
        return len(self.steps)

    @property
    def symmetric(self) -> bool:
        return self.id in SYMMETRIC_MODELS

    def steps_by_level(self, level: int) -> list:
        """Steps with ``dx + dy == level``, sorted."""
        return sorted(s for s in self.steps if s[0] + s[1] == level)

    @property
    def antidiagonal_steps(self) -> list:
        return self.steps_by_level(0)

    @property
    def forward_levels(self) -> tuple:
        """Levels 1 and/or 2 reachable by the directed steps."""
        return tuple(sorted({s[0] + s[1] for s in self.steps} - {0}))

    def __repr__(self):
        return f"ModelSpec({self.id!r})"


def get_model(name: str) -> ModelSpec:
    key = name.strip().upper()
    if key not in _STEP_SETS:
        raise ValueError(f"unknown model {name!r}; expected one of A, B, C, D, E")
    return ModelSpec(key, frozenset(_STEP_SETS[key]))


def all_models() -> list:
    return [get_model(k) for k in "ABCDE"]


# -- polynomials keyed by exponent pairs ---------------------------------

def poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c != 0}


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (a, b), c in p.items():
        for (d, e), f in q.items():
            key = (a + d, b + e)
            out[key] = out.get(key, 0) + c * f
    return {m: c for m, c in out.items() if c != 0}


def poly_scale(p: Poly, c) -> Poly:
    return {m: v * c for m, v in p.items() if v * c != 0}


def poly_eval(p: Poly, x, y):
    total = 0
    for (a, b), c in p.items():
        total = total + c * _power(x, a) * _power(y, b)
    return total


def _power(x, n: int):
    if n >= 0:
        return x ** n
    return Fraction(1) / (x ** (-n)) if not hasattr(x, "inverse") else x.inverse() ** (-n)


def characteristic_poly(m: ModelSpec) -> Poly:
    """Step inventory: one monomial ``x**dx * y**dy`` per step."""
    return {s: 1 for s in m.steps}


def kernel_poly(m: ModelSpec, t) -> Poly:
    """``x*y*(1 - t*chi(x, y))`` with nonnegative exponents."""
    out: Poly = {(1, 1): Fraction(1)}
    for dx, dy in m.steps:
        key = (1 + dx, 1 + dy)
        out[key] = out.get(key, 0) - t
    return {k: v for k, v in out.items() if v != 0}


def degrees(p: Poly) -> Tuple[int, int]:
    return max(a for a, _ in p), max(b for _, b in p)

"""Brute-force walk counting by dynamic programming over walk length.

This is the ground truth every faster method in the package is checked
against, so it deliberately uses nothing but the step set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .algebra import TruncSeries
from .models import ModelSpec

Cell = Tuple[int, int]


@dataclass
class CountTable:
    model: ModelSpec
    horizon: int
    layers: list  # layers[n] maps (i, j) -> number of walks of length n ending there

    def count(self, i: int, j: int, n: int):
        if n > self.horizon:
            raise ValueError(f"length {n} beyond horizon {self.horizon}")
        return self.layers[n].get((i, j), 0)

    __call__ = count

    def total(self, n: int):
        return sum(self.layers[n].values())

    def endpoints(self) -> set:
        cells = set()
        for layer in self.layers:
            cells.update(layer)
        return cells

    def series(self, i: int, j: int, var: str = "t") -> TruncSeries:
        """``sum_n count(i, j, n) t**n`` known modulo ``t**(horizon+1)``."""
        return TruncSeries([self.count(i, j, n) for n in range(self.horizon + 1)],
                           self.horizon + 1, var)


def _step(layer: Dict[Cell, object], steps, weights=None) -> Dict[Cell, object]:
    nxt: Dict[Cell, object] = {}
    for (i, j), c in layer.items():
        for s in steps:
            a, b = i + s[0], j + s[1]
            if a < 0 or b < 0:
                continue
            w = c if weights is None else c * weights[s]
            nxt[(a, b)] = nxt.get((a, b), 0) + w
    return nxt


def count_walks(m: ModelSpec, n_max: int) -> CountTable:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    steps = sorted(m.steps)
    layers = [{(0, 0): 1}]
    for _ in range(n_max):
        layers.append(_step(layers[-1], steps))
    return CountTable(m, n_max, layers)


def q_formal_t(m: ModelSpec, n_max: int) -> Dict[Cell, TruncSeries]:
    """Per-endpoint t-polynomials ``sum_{n<=n_max} count(i,j,n) t**n``."""
    table = count_walks(m, n_max)
    return {cell: table.series(*cell) for cell in sorted(table.endpoints())}


def weighted_counts(m: ModelSpec, alpha1, alpha2, beta, n_max: int) -> CountTable:
    """Walk table where step ``(dx, dy)`` carries weight ``beta*alpha1**dx*alpha2**dy``."""
    for p in (alpha1, alpha2, beta):
        if p <= 0:
            raise ValueError("weights parameters must be positive")
    alpha1, alpha2, beta = Fraction(alpha1), Fraction(alpha2), Fraction(beta)
    steps = sorted(m.steps)
    weights = {s: beta * alpha1 ** s[0] * alpha2 ** s[1] for s in steps}
    layers = [{(0, 0): Fraction(1)}]
    for _ in range(n_max):
        layers.append(_step(layers[-1], steps, weights))
    return CountTable(m, n_max, layers)


def partial_sum(table: CountTable, i: int, j: int, t, horizon: int | None = None):
    """``sum_{n<=horizon} count(i, j, n) * t**n`` exactly."""
    horizon = table.horizon if horizon is None else horizon
    t = Fraction(t)
    total, tn = Fraction(0), Fraction(1)
    for n in range(horizon + 1):
        c = table.count(i, j, n)
        if c:
            total += c * tn
        tn *= t
    return total

"""Green functions of the killed walk and a branching-walk Monte Carlo.

The uniform walk on the step set, killed when it leaves the quadrant, has
Green function ``G(i,j | t) = sum_n P(Z_n = (i,j), tau > n) t**n``, and
``[x^i y^j] Q(x, y, t) = G(i, j | #S t)``.  At ``t = 1/2`` this is the mean
number of visits to ``(i, j)`` of a branching walk whose offspring law has
mean ``#S / 2``, which :func:`brw_simulate` estimates.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .models import ModelSpec, characteristic_poly, get_model, poly_eval
from .oracle import count_walks, partial_sum, weighted_counts
from .transfer import HALF, q_half

Cell = Tuple[int, int]


# -- exact side ----------------------------------------------------------------

@dataclass(frozen=True)
class GreenQuery:
    model: ModelSpec
    target: Cell
    t: Fraction  # Green-function argument, i.e. #S times the counting variable
    horizon: int = 60

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        if self.horizon < 0:
            raise ValueError("horizon must be nonnegative")
        if not 0 <= self.t <= Fraction(self.model.size, 2):
            raise ValueError(f"Green argument must lie in [0, {self.model.size}/2]")


def green_exact_partial(q: GreenQuery) -> tuple:
    """Exact ``sum_{n <= horizon} P(Z_n = target, tau > n) t**n``.

    Returns ``(lower, note)``; ``note`` carries the exact coefficient of ``Q``
    and the remaining gap, which is nonnegative since every term is.
    """
    table = count_walks(q.model, q.horizon)
    lower = partial_sum(table, *q.target, q.t / q.model.size)
    exact = q_half(q.model, sum(q.target), q.t / q.model.size)[q.target]
    return lower, {"exact": exact, "gap": exact - lower, "horizon": q.horizon}


def green_partial_sums(m: ModelSpec, target: Cell, t, horizon: int) -> List[Fraction]:
    """Partial sums for every horizon ``0..horizon`` (used for monotonicity checks)."""
    table = count_walks(m, horizon)
    x = Fraction(t) / m.size
    out, acc, xn = [], Fraction(0), Fraction(1)
    for n in range(horizon + 1):
        acc += table.count(*target, n) * xn
        out.append(acc)
        xn *= x
    return out


def chi(m: ModelSpec, alpha, beta) -> Fraction:
    return poly_eval(characteristic_poly(m), Fraction(alpha), Fraction(beta))


def cramer_check(model: str | ModelSpec, alpha, beta, n_max: int = 8) -> bool:
    """Exact check of ``P_w(n) = alpha^i beta^j (#S/chi(alpha,beta))^n P(n)`` for ``n <= n_max``.

    ``P_w`` comes from an independent weighted DP whose step probabilities are
    ``alpha^dx beta^dy / chi``; ``P = counts / #S^n``.
    """
    m = get_model(model) if isinstance(model, str) else model
    alpha, beta = Fraction(alpha), Fraction(beta)
    c = chi(m, alpha, beta)
    weighted = weighted_counts(m, alpha, beta, 1 / c, n_max)
    plain = count_walks(m, n_max)
    S = m.size
    for n in range(n_max + 1):
        cells = set(weighted.layers[n]) | set(plain.layers[n])
        for i, j in cells:
            p = Fraction(plain.count(i, j, n), S ** n)
            if weighted.count(i, j, n) != alpha ** i * beta ** j * (Fraction(S) / c) ** n * p:
                return False
    return True


def chi_exceeds_two(model: str | ModelSpec, alphas: Sequence) -> bool:
    """``chi(a, a) > 2`` for each sampled ``a > 0``: the transform never reaches ``t = 1/2``."""
    m = get_model(model) if isinstance(model, str) else model
    return all(chi(m, a, a) > 2 for a in alphas)


def epsilon_probe(model: str | ModelSpec, target: Cell, eps: Sequence, horizon: int = 40) -> List[Fraction]:
    """``G_(e,e)(i, j | chi(e,e)/2) / e^(i+j)`` truncated at ``horizon``, one value per ``e``.

    Each value is an exact rational; they coincide with the partial sum of
    ``[x^i y^j] Q(x, y, 1/2)`` for every ``e``.
    """
    m = get_model(model) if isinstance(model, str) else model
    i, j = target
    out = []
    for e in eps:
        e = Fraction(e)
        c = chi(m, e, e)
        w = weighted_counts(m, e, e, 1 / c, horizon)
        g = partial_sum(w, i, j, c / 2)
        out.append(g / e ** (i + j))
    return out


# -- branching random walk -------------------------------------------------------

@dataclass
class BRWConfig:
    model: ModelSpec
    offspring: Dict[int, Fraction] = field(
        default_factory=lambda: {1: Fraction(1, 2), 2: Fraction(1, 2)})
    cap: int = 10 ** 6
    horizon: int = 60
    seed: int = 0
    ancestors: int = 100_000
    batch: int = 10_000
    threads: int = 1

    def __post_init__(self):
        if isinstance(self.model, str):
            self.model = get_model(self.model)
        self.offspring = {int(k): Fraction(p) for k, p in self.offspring.items()}
        if any(k < 0 or p < 0 for k, p in self.offspring.items()):
            raise ValueError("offspring law must be a pmf on nonnegative integers")
        if sum(self.offspring.values()) != 1:
            raise ValueError("offspring probabilities must sum to 1")
        if self.mean != Fraction(self.model.size, 2):
            raise ValueError(
                f"offspring mean {self.mean} differs from #S/2 = {Fraction(self.model.size, 2)}")
        if self.ancestors < 1 or self.batch < 1:
            raise ValueError("ancestors and batch must be positive")

    @property
    def mean(self) -> Fraction:
        return sum(k * p for k, p in self.offspring.items())


@dataclass
class BRWEstimate:
    target: Cell
    estimate: float
    std_error: float
    exact: Fraction
    horizon_bias: Fraction  # exact value minus its partial sum at the horizon
    censored: int

    @property
    def z_score(self) -> float:
        if self.std_error == 0:
            return 0.0 if self.estimate == float(self.exact) else math.inf
        return (self.estimate - float(self.exact)) / self.std_error

    @property
    def flagged(self) -> bool:
        return self.censored > 0

    def to_json(self) -> dict:
        return {"target": list(self.target), "estimate": self.estimate, "std_error": self.std_error,
                "exact": str(self.exact), "z_score": self.z_score,
                "horizon_bias": str(self.horizon_bias), "censored": self.censored,
                "flagged": self.flagged}


class _Lattice:
    """Sites ``i + j <= level`` and where each step sends them (-1 = killed or pruned)."""

    def __init__(self, m: ModelSpec, level: int):
        self.sites = [(k - b, b) for k in range(level + 1) for b in range(k + 1)]
        index = {s: n for n, s in enumerate(self.sites)}
        self.steps = sorted(m.steps)
        self.dest = np.array([[index.get((i + dx, j + dy), -1) for (dx, dy) in self.steps]
                              for (i, j) in self.sites], dtype=np.int64)
        self.origin = index[(0, 0)]
        self.index = index


def _run_batch(cfg: BRWConfig, lat: _Lattice, tgt: np.ndarray, size: int,
               seed: np.random.SeedSequence) -> tuple:
    rng = np.random.default_rng(seed)
    ks = np.array(sorted(cfg.offspring), dtype=np.int64)
    pk = np.array([float(cfg.offspring[k]) for k in ks])
    n_steps = len(lat.steps)
    step_p = np.full(n_steps, 1.0 / n_steps)
    state = np.zeros((size, len(lat.sites)), dtype=np.int64)
    state[:, lat.origin] = 1
    visits = state[:, tgt].copy()
    censored = np.zeros(size, dtype=bool)
    for _ in range(cfg.horizon):
        if not state.any():
            break
        kids = rng.multinomial(state, pk) @ ks
        moves = rng.multinomial(kids, step_p)
        nxt = np.zeros_like(state)
        for s in range(n_steps):
            d = lat.dest[:, s]
            ok = d >= 0
            nxt[:, d[ok]] += moves[:, ok, s]
        over = nxt.sum(axis=1) > cfg.cap
        if over.any():
            censored |= over
            nxt[over] = 0
        state = nxt
        visits += state[:, tgt]
    # exact integer moments so the reduction is order independent
    return ([int(v) for v in visits.sum(axis=0)], [int(v) for v in (visits * visits).sum(axis=0)],
            int(censored.sum()))


def brw_simulate(cfg: BRWConfig, targets: Sequence[Cell]) -> List[BRWEstimate]:
    """Mean visit counts of the killed branching walk, one estimate per target.

    Ancestors are processed in fixed-size batches, each with its own spawned
    seed, so the output depends on ``seed`` and ``batch`` but not ``threads``.
    """
    targets = [tuple(t) for t in targets]
    level = max(i + j for i, j in targets)
    lat = _Lattice(cfg.model, level)
    tgt = np.array([lat.index[t] for t in targets], dtype=np.int64)
    sizes = [cfg.batch] * (cfg.ancestors // cfg.batch)
    if cfg.ancestors % cfg.batch:
        sizes.append(cfg.ancestors % cfg.batch)
    seeds = np.random.SeedSequence(cfg.seed).spawn(len(sizes))
    jobs = list(zip(sizes, seeds))
    if cfg.threads > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            parts = list(pool.map(lambda job: _run_batch(cfg, lat, tgt, *job), jobs))
    else:
        parts = [_run_batch(cfg, lat, tgt, *job) for job in jobs]

    N = cfg.ancestors
    censored = sum(p[2] for p in parts)
    q = q_half(cfg.model, level)
    sums_n = count_walks(cfg.model, cfg.horizon)
    out = []
    for col, target in enumerate(targets):
        s1 = sum(p[0][col] for p in parts)
        s2 = sum(p[1][col] for p in parts)
        mean = s1 / N
        var = (s2 - s1 * s1 / N) / (N - 1) if N > 1 else 0.0
        se = math.sqrt(max(var, 0.0) / N)
        exact = q[target]
        bias = exact - partial_sum(sums_n, *target, HALF)
        out.append(BRWEstimate(target, mean, se, exact, bias, censored))
    return out


def parse_offspring(text: str) -> Dict[int, Fraction]:
    """``"1:1/2,2:1/2"`` -> ``{1: 1/2, 2: 1/2}``."""
    law: Dict[int, Fraction] = {}
    for part in text.split(","):
        k, p = part.split(":")
        law[int(k)] = law.get(int(k), Fraction(0)) + Fraction(p.strip())
    return law

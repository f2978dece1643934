"""Coordinate-descent search for low-error coefficient sets.

Two modes:

* general -- the d coefficients of the automaton are free variables,
* shallow -- only the m generators of a subset-sum set are optimized
             (t_0 is pinned to 0: the error is translation invariant).

Each coordinate is swept exhaustively over all of [0, p); a move is
accepted only on strict improvement, ties go to the smallest candidate
value, and coordinates cycle in fixed index order, so a run is a pure
function of (p, size, config).  The per-coordinate candidate sweep is
vectorized: for the general mode the exponential sum splits into a
rest-sum plus the candidate's own phase row; for the shallow mode the sum
over subset sums factorizes as e(t_0 x) * prod_i (1 + e(t_i x)).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .analysis import epsilon_of, roots_of_unity
from .coeffsets import CoefficientSet, expand_subset_sums
from .rng import SplitMix64
from .zmod import PrimeModulus


@dataclass(frozen=True)
class DescentConfig:
    seed: int
    max_sweeps: int = 100
    mode: str = "general"  # "general" or "shallow"
    restarts: int = 0

    def __post_init__(self):
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be >= 1")
        if self.mode not in ("general", "shallow"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.restarts < 0:
            raise ValueError("restarts must be nonnegative")


@dataclass
class DescentResult:
    best_set: CoefficientSet
    best_point: tuple[int, ...]  # coefficients (general) or generators (shallow)
    best_epsilon: float
    sweeps_used: int
    evaluations: int
    history: list[tuple[int, float]] = field(default_factory=list)


class _Evaluator:
    """Vectorized eps evaluation for single-coordinate candidate sweeps.

    ``candidate_eps(point, i)`` returns eps for every value of coordinate i
    in [0, p) with the other coordinates fixed; index v of the result is
    the candidate value v, so argmin gives the smallest-value tie-break
    for free.
    """

    def __init__(self, p: int, mode: str):
        self.p = p
        self.mode = mode
        W = roots_of_unity(p)
        xs = np.arange(1, p)
        # E[v, x-1] = e(v x / p); one (p, p-1) table shared by all sweeps
        self.E = W[np.outer(np.arange(p), xs) % p]

    def candidate_eps(self, point: np.ndarray, i: int) -> np.ndarray:
        size = point.size
        if self.mode == "general":
            rest = self.E[point].sum(axis=0) - self.E[point[i]]
            sums = rest[None, :] + self.E
            d = size
        else:
            ones = 1.0 + self.E[point]
            rest = np.prod(np.concatenate([ones[:i], ones[i + 1:]]), axis=0)
            sums = rest[None, :] * (1.0 + self.E)
            d = 1 << size
        mags = np.abs(sums)
        np.square(mags, out=mags)
        return mags.max(axis=1) / (d * d)

    def point_eps(self, point: np.ndarray) -> float:
        # consistent with candidate_eps(point, i)[point[i]] up to rounding
        return float(self.candidate_eps(point, 0)[point[0]])


def _descend(evaluator: _Evaluator, start: np.ndarray, cfg: DescentConfig
             ) -> tuple[np.ndarray, float, int, int, list[tuple[int, float]]]:
    point = start.copy()
    size = point.size
    p = evaluator.p
    cur = evaluator.point_eps(point)
    history: list[tuple[int, float]] = [(0, cur)]
    evaluations = size  # point_eps sweeps one coordinate's worth of work; count once
    sweeps = 0
    for sweep in range(1, cfg.max_sweeps + 1):
        sweeps = sweep
        improved = False
        for i in range(size):
            eps = evaluator.candidate_eps(point, i)
            evaluations += p
            best_v = int(np.argmin(eps))  # first occurrence = smallest value
            if eps[best_v] < eps[point[i]]:
                point[i] = best_v
                cur = min(cur, float(eps[best_v]))
                improved = True
        history.append((sweep, cur))
        if not improved:
            break
    return point, cur, sweeps, evaluations, history


def _expand_point(p: int, point: np.ndarray, mode: str) -> CoefficientSet:
    if mode == "general":
        return CoefficientSet(PrimeModulus(p), tuple(int(v) for v in point),
                              "optimized", {"mode": "general"})
    expanded = expand_subset_sums(0, [int(v) for v in point], p)
    return CoefficientSet(expanded.p, expanded.coefficients, "optimized",
                          {"mode": "shallow", "t0": 0,
                           "T": tuple(int(v) for v in point)})


def coordinate_descent(p: int, size: int, cfg: DescentConfig,
                       initial: tuple[int, ...] | None = None) -> DescentResult:
    """Seeded coordinate descent; with restarts > 0 the best of several
    independent starts is kept.  ``initial`` overrides the first start
    point (used by exhaustive-start experiments)."""
    p = int(PrimeModulus(p))
    if size < 1:
        raise ValueError("size must be positive")
    if cfg.mode == "shallow" and (1 << size) > 4 * p:
        raise ValueError(f"2^{size} far exceeds p={p}; shallow search is pointless")
    evaluator = _Evaluator(p, cfg.mode)
    rng = SplitMix64(cfg.seed)

    def draw_start() -> np.ndarray:
        lo = 1 if p > 2 else 0
        return np.array([rng.in_range(lo, p) if p > 2 else 1 for _ in range(size)],
                        dtype=np.int64)

    best = None
    total_evals = 0
    for run in range(cfg.restarts + 1):
        if run == 0 and initial is not None:
            start = np.asarray(initial, dtype=np.int64) % p
        else:
            start = draw_start()
        point, cur, sweeps, evals, history = _descend(evaluator, start, cfg)
        total_evals += evals
        if best is None or cur < best[1]:
            best = (point, cur, sweeps, history)
    point, _, sweeps, history = best
    best_set = _expand_point(p, point, cfg.mode)
    # final value re-measured through the canonical eps path
    best_eps, _ = epsilon_of(best_set)
    return DescentResult(best_set, tuple(int(v) for v in point), best_eps,
                         sweeps, total_evals, history)


def audit_local_optimality(result: DescentResult, p: int, cfg: DescentConfig) -> bool:
    """Post-hoc check: no single-coordinate change strictly improves eps."""
    evaluator = _Evaluator(int(p), cfg.mode)
    point = np.asarray(result.best_point, dtype=np.int64)
    for i in range(point.size):
        eps = evaluator.candidate_eps(point, i)
        if eps.min() < eps[point[i]]:
            return False
    return True


@dataclass(frozen=True)
class ComparisonRecord:
    p: int
    m: int
    eps_general: float
    eps_shallow: float
    ratio: float
    general: DescentResult
    shallow: DescentResult


def compare_experiment(primes: list[int], m: int, cfg: DescentConfig,
                       progress=None) -> list[ComparisonRecord]:
    """For each prime: optimize d = 2^m free coefficients and m generators,
    and record the shallow/general error ratio."""
    records = []
    for p in primes:
        p = int(PrimeModulus(p))
        gen_res = coordinate_descent(
            p, 1 << m, DescentConfig(cfg.seed, cfg.max_sweeps, "general", cfg.restarts))
        sh_res = coordinate_descent(
            p, m, DescentConfig(cfg.seed, cfg.max_sweeps, "shallow", cfg.restarts))
        ratio = sh_res.best_epsilon / max(gen_res.best_epsilon, 1e-15)
        records.append(ComparisonRecord(p, m, gen_res.best_epsilon,
                                        sh_res.best_epsilon, ratio, gen_res, sh_res))
        if progress is not None:
            progress(records[-1])
    return records

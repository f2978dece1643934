"""State-vector simulation of the 2d-state MOD_p automaton.

The automaton keeps d independent 2-dimensional blocks; reading one letter
rotates block i by 2 pi k_i / p.  All rotations are real orthogonal, so
amplitudes stay real: a state is a (d, 2) float array.  Acceptance after
the end-marker is the squared overlap with the initial state; the final
unitary is never materialized since the measured probability only depends
on that single row.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import error_prob
from .coeffsets import CoefficientSet


@dataclass(frozen=True)
class QfaState:
    coefficients: CoefficientSet
    amplitudes: np.ndarray  # shape (d, 2): columns are the q_{i,0}, q_{i,1} amplitudes
    letters_read: int = 0

    @property
    def p(self) -> int:
        return int(self.coefficients.p)

    def norm(self) -> float:
        return float(np.sum(self.amplitudes ** 2))


def initial_state(K: CoefficientSet) -> QfaState:
    """Uniform superposition 1/sqrt(d) over the q_{i,0} states."""
    amps = np.zeros((K.d, 2))
    amps[:, 0] = 1.0 / math.sqrt(K.d)
    return QfaState(K, amps, 0)


def _rotation_columns(K: CoefficientSet) -> tuple[np.ndarray, np.ndarray]:
    p = int(K.p)
    theta = 2.0 * np.pi * (np.asarray(K.coefficients, dtype=np.int64) % p) / p
    return np.cos(theta), np.sin(theta)


def step(state: QfaState, inverse: bool = False) -> QfaState:
    """Apply the one-letter transition: block i rotates by 2 pi k_i / p."""
    cos, sin = _rotation_columns(state.coefficients)
    if inverse:
        sin = -sin
    a0 = state.amplitudes[:, 0]
    a1 = state.amplitudes[:, 1]
    out = np.stack([a0 * cos - a1 * sin, a0 * sin + a1 * cos], axis=1)
    return QfaState(state.coefficients, out, state.letters_read + 1)


def accept_probability(state: QfaState) -> float:
    """|<psi_0|psi>|^2: probability of measuring the accepting state."""
    d = state.coefficients.d
    return float(np.sum(state.amplitudes[:, 0]) / math.sqrt(d)) ** 2


def run_word(K: CoefficientSet, j: int, method: str = "closed") -> float:
    """Acceptance probability on the unary word a^j.

    method="closed" evaluates ((1/d) sum_i cos(2 pi k_i j / p))^2;
    method="steps" iterates the transition j mod p times.  The two paths
    agree within 1e-10 and the tests hold them to that.
    """
    if j < 0:
        raise ValueError("word length must be nonnegative")
    p = int(K.p)
    if method == "closed":
        return error_prob(K, j % p)
    if method == "steps":
        s = initial_state(K)
        for _ in range(j % p):
            s = step(s)
        return accept_probability(s)
    raise ValueError(f"unknown method {method!r}")


def acceptance_sweep(K: CoefficientSet, j_max: int | None = None) -> np.ndarray:
    """Accept probabilities for j = 0 .. j_max (default p-1), one step at a time."""
    p = int(K.p)
    if j_max is None:
        j_max = p - 1
    out = np.empty(j_max + 1)
    s = initial_state(K)
    out[0] = accept_probability(s)
    for j in range(1, j_max + 1):
        s = step(s)
        out[j] = accept_probability(s)
    return out


def max_error_sweep(K: CoefficientSet) -> tuple[float, int]:
    """Largest acceptance probability over j in [1, p-1]; smallest worst j."""
    p = int(K.p)
    if p > 1 << 20:
        raise ValueError("sweep capped at p <= 2^20")
    ks = np.asarray(K.coefficients, dtype=np.int64)
    worst = -1.0
    worst_j = 1
    chunk = max(1, (1 << 22) // max(1, K.d))
    for lo in range(1, p, chunk):
        js = np.arange(lo, min(p, lo + chunk), dtype=np.int64)
        cosines = np.cos(2.0 * np.pi * ((js[:, None] * ks[None, :]) % p) / p)
        vals = (cosines.sum(axis=1) / K.d) ** 2
        i = int(np.argmax(vals))
        if vals[i] > worst:
            worst = float(vals[i])
            worst_j = int(js[i])
    return worst, worst_j

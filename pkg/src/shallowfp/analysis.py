"""Exact spectral and combinatorial analysis of coefficient sets.

The worst-case error

    eps(K) = max_{x != 0} |sum_j e(k_j x / p)|^2 / d^2

is evaluated by a direct sweep over x in [1, p-1]; phases are looked up in
a precomputed table of the p-th roots of unity, so every angle stays in
[0, 2 pi) regardless of the size of k * x.  Additive energy and
representation counts are exact integer arithmetic throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coeffsets import CoefficientSet

# x-chunk size for the sweep; keeps the (chunk x d) phase matrix small.
_CHUNK_ELEMS = 1 << 22


@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: float
    rhs: float
    holds: bool


@dataclass(frozen=True)
class AnalysisReport:
    p: int
    d: int
    epsilon: float
    argmax_x: int
    additive_energy: int
    fourier_bias: float
    density: float
    bound_checks: tuple[BoundCheck, ...] = field(default_factory=tuple)

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "epsilon": self.epsilon,
            "argmax_x": self.argmax_x,
            "energy": self.additive_energy,
            "bias": self.fourier_bias,
            "density": self.density,
            "bounds": [
                {"name": b.name, "lhs": b.lhs, "rhs": b.rhs, "holds": b.holds}
                for b in self.bound_checks
            ],
        }


def roots_of_unity(p: int) -> np.ndarray:
    """Table W[r] = e(r / p) = exp(2 pi i r / p) for r in [0, p)."""
    return np.exp(2j * np.pi * np.arange(p) / p)


def _abs_sums(K: CoefficientSet) -> np.ndarray:
    """|sum_j e(k_j x / p)| for x = 1 .. p-1, multiplicity respected."""
    p = int(K.p)
    ks = np.asarray(K.coefficients, dtype=np.int64)
    W = roots_of_unity(p)
    xs = np.arange(1, p, dtype=np.int64)
    out = np.empty(p - 1)
    step = max(1, _CHUNK_ELEMS // max(1, K.d))
    for lo in range(0, p - 1, step):
        chunk = xs[lo:lo + step]
        idx = (chunk[:, None] * ks[None, :]) % p
        out[lo:lo + step] = np.abs(W[idx].sum(axis=1))
    return out


def exp_sum(K: CoefficientSet, x: int) -> complex:
    """sum_j e(k_j x / p) with compensated (fsum) accumulation."""
    p = int(K.p)
    re = math.fsum(math.cos(2.0 * math.pi * (k * x % p) / p) for k in K.coefficients)
    im = math.fsum(math.sin(2.0 * math.pi * (k * x % p) / p) for k in K.coefficients)
    return complex(re, im)


def epsilon_of(K: CoefficientSet) -> tuple[float, int]:
    """Worst-case error eps(K) and the smallest maximizing x in [1, p-1].

    x = 0 is excluded: there the sum is trivially d for every K, while the
    quantity's role is bounding the acceptance probability on words whose
    length is not divisible by p.
    """
    p = int(K.p)
    if p < 2:
        raise ValueError("need p >= 2")
    vals = (_abs_sums(K) / K.d) ** 2
    arg = int(np.argmax(vals))  # first occurrence = smallest x
    return float(vals[arg]), arg + 1


def error_prob(K: CoefficientSet, x: int) -> float:
    """P_e = ((1/d) sum_j cos(2 pi k_j x / p))^2."""
    p = int(K.p)
    if not (0 <= x < p):
        raise ValueError("x must lie in [0, p)")
    s = math.fsum(math.cos(2.0 * math.pi * (k * x % p) / p) for k in K.coefficients)
    return (s / K.d) ** 2


def _multiplicity_vector(A: CoefficientSet) -> np.ndarray:
    return np.bincount(np.asarray(A.coefficients, dtype=np.int64), minlength=int(A.p))


def _rep_count_vector(A: CoefficientSet, B: CoefficientSet) -> np.ndarray:
    """R_n(A, B) = #{(a, b) in A x B : a + b = n mod p}, as a length-p vector."""
    if int(A.p) != int(B.p):
        raise ValueError("A and B must share the same modulus")
    p = int(A.p)
    if A.d > 1 << 16 or B.d > 1 << 16:
        raise ValueError("set too large for quadratic enumeration (cap 2^16)")
    conv = np.convolve(_multiplicity_vector(A), _multiplicity_vector(B))
    out = np.zeros(p, dtype=np.int64)
    for lo in range(0, conv.size, p):
        seg = conv[lo:lo + p]
        out[: seg.size] += seg
    return out


def representation_counts(A: CoefficientSet) -> dict[int, int]:
    """Map n -> R_n(A) over Z_p, zero entries omitted; sums to d^2."""
    vec = _rep_count_vector(A, A)
    return {int(n): int(c) for n, c in enumerate(vec) if c}


def additive_energy(A: CoefficientSet, B: CoefficientSet | None = None) -> int:
    """E(A, B) = sum_n R_n(A, B)^2; quadruple count with a + b = a' + b'."""
    vec = _rep_count_vector(A, A if B is None else B)
    return int(sum(int(c) ** 2 for c in vec))


def fourier_coefficient(A: CoefficientSet, xi: int) -> complex:
    """hat(1_A)(xi) = (1/p) sum_a e(-xi a / p), multiplicity respected."""
    p = int(A.p)
    s = exp_sum(A, (-xi) % p)
    return s / p


def fourier_bias(A: CoefficientSet) -> float:
    """max over xi in [1, p-1] of |hat(1_A)(xi)|."""
    p = int(A.p)
    if p < 2:
        raise ValueError("need p >= 2")
    return float(_abs_sums(A).max()) / p


def check_bias_energy_chain(A: CoefficientSet, slack: float = 1e-9) -> list[BoundCheck]:
    """Both inequalities of the bias-energy sandwich for a genuine set A:

        ||A||_U^4  <=  E(A,A)/p^3 - (|A|/p)^4  <=  ||A||_U^2 * |A|/p
    """
    if len(set(A.coefficients)) != A.d:
        raise ValueError("bias-energy chain applies to sets; multiset has repeats")
    p = int(A.p)
    bias = fourier_bias(A)
    energy = additive_energy(A)
    prob = A.d / p
    mid = energy / p ** 3 - prob ** 4
    lower = BoundCheck("bias^4 <= E/p^3 - density^4", bias ** 4, mid,
                       bias ** 4 <= mid + slack)
    upper = BoundCheck("E/p^3 - density^4 <= bias^2 * density", mid, bias ** 2 * prob,
                       mid <= bias ** 2 * prob + slack)
    return [lower, upper]


def gap_epsilon_bound(p: int, m: int) -> float:
    """sqrt(p / 2^m): the claimed ceiling on eps for a proper subset-sum set.

    Reported for comparison only; often vacuous (> 1) at desk scale.
    """
    if m < 1:
        raise ValueError("m must be positive")
    return math.sqrt(p / 2 ** m)


def analyze(K: CoefficientSet) -> AnalysisReport:
    """Full report: eps, argmax, energy, bias, density, bound checks."""
    p = int(K.p)
    eps, argmax = epsilon_of(K)
    bias = fourier_bias(K)
    energy = additive_energy(K)
    checks: list[BoundCheck] = []
    if len(set(K.coefficients)) == K.d:
        checks.extend(check_bias_energy_chain(K))
    if K.method == "gap" and "T" in K.params:
        bound = gap_epsilon_bound(p, len(K.params["T"]))
        # informational only; the bound is not asserted anywhere
        checks.append(BoundCheck("eps <= sqrt(p/d) [reported only]", eps, bound, eps <= bound))
    return AnalysisReport(p, K.d, eps, argmax, energy, bias, K.d / p, tuple(checks))


def spectrum_rows(K: CoefficientSet):
    """Yield (x, re, im, magnitude2, error_prob) for every x in [0, p)."""
    p = int(K.p)
    for x in range(p):
        s = exp_sum(K, x)
        yield x, s.real, s.imag, abs(s) ** 2, (s.real / K.d) ** 2

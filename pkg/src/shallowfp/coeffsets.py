"""Construction and serialization of rotation-coefficient sets.

A coefficient set K = (k_1, ..., k_d) over Z_p drives the d two-dimensional
rotations of the MOD_p automaton.  Supported constructions:

* cyclic     -- powers of the smallest primitive root,
* aikps      -- products s * r^{-1} for small primes r and small s,
* gap        -- subset sums of m generators, searched until the associated
                3^m-point progression is proper,
* random     -- seeded uniform draws from [1, p-1],
* explicit   -- caller-supplied coefficients.

All generators are deterministic functions of (p, parameters, seed); the
seeded ones use the SplitMix64 stream documented in rng.py.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import EmptyAikpsRangeError, GapSearchExhaustedError, GapUnsatisfiableError
from .rng import SplitMix64
from .zmod import PrimeModulus, is_prime, mod_inverse, primitive_root

_MAX_GAP_DIM = 16


@dataclass(frozen=True)
class CoefficientSet:
    """An ordered multiset of rotation coefficients with its provenance."""

    p: PrimeModulus
    coefficients: tuple[int, ...]
    method: str = "explicit"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.coefficients) == 0:
            raise ValueError("coefficient set must be non-empty")
        if any(not (0 <= k < self.p) for k in self.coefficients):
            raise ValueError("coefficients must lie in [0, p)")

    @property
    def d(self) -> int:
        return len(self.coefficients)

    def translated(self, c: int) -> "CoefficientSet":
        return CoefficientSet(self.p, tuple((k + c) % self.p for k in self.coefficients),
                              "explicit", {"from": self.method, "shift": c % self.p})

    def dilated(self, c: int) -> "CoefficientSet":
        if math.gcd(c, self.p) != 1:
            raise ValueError("dilation factor must be coprime to p")
        return CoefficientSet(self.p, tuple(k * c % self.p for k in self.coefficients),
                              "explicit", {"from": self.method, "dilation": c % self.p})

    def to_json_dict(self) -> dict:
        # Field order fixed: p, method, params, coefficients, then optional
        # t0 / generators for subset-sum sets.
        out = {
            "p": int(self.p),
            "method": self.method,
            "params": {k: v for k, v in self.params.items() if k not in ("t0", "T")},
            "coefficients": [int(k) for k in self.coefficients],
        }
        if "t0" in self.params:
            out["t0"] = int(self.params["t0"])
        if "T" in self.params:
            out["generators"] = [int(t) for t in self.params["T"]]
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "CoefficientSet":
        params = dict(data.get("params", {}))
        if "t0" in data:
            params["t0"] = int(data["t0"])
        if "generators" in data:
            params["T"] = tuple(int(t) for t in data["generators"])
        return cls(PrimeModulus(data["p"]), tuple(int(k) for k in data["coefficients"]),
                   data.get("method", "explicit"), params)


@dataclass(frozen=True)
class GapFingerprint:
    """A subset-sum coefficient set together with its properness certificate.

    ``expanded`` holds A = { t_0 + sum(S) mod p | S subseteq T } in
    subset-bitmask order; ``proper`` certifies that the 3^m progression
    B = { 2 t_0 + sum n_i t_i | n_i in {0,1,2} } has pairwise-distinct
    elements in the chosen ambient group.
    """

    p: PrimeModulus
    t0: int
    generators: tuple[int, ...]
    expanded: CoefficientSet
    proper: bool
    tries: int = 1

    @property
    def m(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class AikpsSet:
    """AIKPS construction: coefficients s * r^{-1} mod p.

    r runs over the primes strictly inside ((log2 p)^{1+eps} / 2,
    (log2 p)^{1+eps}) and s over 1 .. floor((log2 p)^{1+2 eps}).
    """

    p: PrimeModulus
    eps: float
    r_primes: tuple[int, ...]
    s_max: int
    coefficients: CoefficientSet

    @property
    def d(self) -> int:
        return self.coefficients.d


def gen_cyclic(p: int, d: int) -> CoefficientSet:
    """k_i = g^i mod p for i = 1..d, g the smallest primitive root."""
    p = PrimeModulus(p)
    if not (1 <= d <= p - 1):
        raise ValueError(f"cyclic set needs 1 <= d <= p-1, got d={d}, p={p}")
    g = primitive_root(p)
    coeffs = []
    v = 1
    for _ in range(d):
        v = v * g % p
        coeffs.append(v)
    return CoefficientSet(p, tuple(coeffs), "cyclic", {"g": g})


def gen_aikps(p: int, eps: float) -> AikpsSet:
    """AIKPS set for the given eps > 0.  Logarithms are base 2."""
    p = PrimeModulus(p)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if p < 5:
        raise ValueError("AIKPS construction needs p >= 5")
    log2p = math.log2(p)
    hi = log2p ** (1.0 + eps)
    lo = hi / 2.0
    r_primes = tuple(r for r in range(2, math.floor(hi) + 1) if lo < r < hi and is_prime(r))
    if not r_primes:
        raise EmptyAikpsRangeError(
            f"no prime in the AIKPS interval ({lo:.6g}, {hi:.6g}) for p={int(p)}, eps={eps}")
    s_max = math.floor(log2p ** (1.0 + 2.0 * eps))
    coeffs = []
    for r in r_primes:
        r_inv = mod_inverse(r, p)
        coeffs.extend(s * r_inv % p for s in range(1, s_max + 1))
    cs = CoefficientSet(p, tuple(coeffs), "aikps",
                        {"eps": eps, "R": list(r_primes), "s_max": s_max})
    return AikpsSet(p, eps, r_primes, s_max, cs)


def is_proper_gap(t0: int, generators: Sequence[int], p: int, ambient: str = "mod_p") -> bool:
    """True iff all 3^m values 2 t_0 + sum n_i t_i (n_i in {0,1,2}) are distinct.

    ``ambient`` chooses where distinctness is checked: "mod_p" reduces the
    values modulo p, "integers" compares them as plain integers.
    """
    m = len(generators)
    if m < 1:
        raise ValueError("need at least one generator")
    if m > _MAX_GAP_DIM:
        raise ValueError(f"GAP dimension capped at {_MAX_GAP_DIM}, got {m}")
    if ambient not in ("mod_p", "integers"):
        raise ValueError(f"unknown ambient group {ambient!r}")
    seen = set()
    for digits in itertools.product((0, 1, 2), repeat=m):
        v = 2 * t0 + sum(n * t for n, t in zip(digits, generators))
        if ambient == "mod_p":
            v %= p
        if v in seen:
            return False
        seen.add(v)
    return True


def expand_subset_sums(t0: int, generators: Sequence[int], p: int) -> CoefficientSet:
    """All 2^|T| sums t_0 + sum(S) mod p, in subset-bitmask order.

    Bit i of the mask selects generator t_{i+1}.
    """
    m = len(generators)
    if m > _MAX_GAP_DIM:
        raise ValueError(f"generator list capped at {_MAX_GAP_DIM}, got {m}")
    sums = [t0 % p]
    for t in generators:  # doubling trick keeps bitmask order: bit i appended at stage i
        sums = sums + [(v + t) % p for v in sums]
    return CoefficientSet(PrimeModulus(p), tuple(sums), "gap",
                          {"t0": t0 % p, "T": tuple(t % p for t in generators)})


def make_gap_fingerprint(p: int, t0: int, generators: Sequence[int],
                         tries: int = 1) -> GapFingerprint:
    """Bundle an explicit (t_0, T) with its expansion and properness check."""
    p = PrimeModulus(p)
    gens = tuple(t % p for t in generators)
    expanded = expand_subset_sums(t0 % p, gens, p)
    proper = is_proper_gap(t0 % p, gens, p)
    return GapFingerprint(p, t0 % p, gens, expanded, proper, tries)


def gen_gap(p: int, m: int, seed: int, max_tries: int = 1000) -> GapFingerprint:
    """Seeded rejection search for a proper GAP of dimension m in Z_p.

    t_0 is drawn uniformly from [0, p), each generator from [1, p); the
    first draw whose progression B is proper (mod p) is kept.
    """
    p = PrimeModulus(p)
    if not (1 <= m <= _MAX_GAP_DIM):
        raise ValueError(f"need 1 <= m <= {_MAX_GAP_DIM}, got {m}")
    if 3 ** m > p:
        raise GapUnsatisfiableError(
            f"hypothesis unsatisfiable in Z_p: 3^{m} = {3 ** m} > p = {int(p)}")
    if max_tries < 1:
        raise ValueError("max_tries must be positive")
    rng = SplitMix64(seed)
    for attempt in range(1, max_tries + 1):
        t0 = rng.below(p)
        gens = tuple(rng.in_range(1, p) for _ in range(m))
        if is_proper_gap(t0, gens, p):
            fp = make_gap_fingerprint(p, t0, gens, tries=attempt)
            fp.expanded.params["seed"] = seed
            return fp
    raise GapSearchExhaustedError(
        f"no proper GAP found for p={int(p)}, m={m} in {max_tries} tries (seed {seed})")


def gen_random(p: int, d: int, seed: int) -> CoefficientSet:
    """d seeded uniform draws from [1, p-1]; duplicates allowed."""
    p = PrimeModulus(p)
    if d < 1:
        raise ValueError("d must be positive")
    rng = SplitMix64(seed)
    if p == 2:
        coeffs = tuple(1 for _ in range(d))
    else:
        coeffs = tuple(rng.in_range(1, p) for _ in range(d))
    return CoefficientSet(p, coeffs, "random", {"seed": seed})


def explicit_set(p: int, coefficients: Iterable[int]) -> CoefficientSet:
    """Wrap caller-supplied coefficients (reduced mod p) as a CoefficientSet."""
    p = PrimeModulus(p)
    return CoefficientSet(p, tuple(k % p for k in coefficients), "explicit", {})

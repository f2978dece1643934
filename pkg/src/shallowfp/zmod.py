"""Exact modular number theory over Z_p.

Everything here is deterministic integer arithmetic: primality testing,
modular exponentiation and inverses, multiplicative orders and primitive
roots.  Moduli are limited to 64 bits; Python integers make the 128-bit
intermediate products exact for free.
"""
from __future__ import annotations

from .errors import CompositeModulusError

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24
# (in particular for every n < 2^63).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2^63."""
    if n < 0:
        raise ValueError("is_prime expects a nonnegative integer")
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    # n is odd and coprime to the small primes; run Miller-Rabin.
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeModulus(int):
    """A validated prime modulus.  Behaves like a plain int everywhere."""

    def __new__(cls, p: int) -> "PrimeModulus":
        if not is_prime(p):
            raise CompositeModulusError(f"{p} is not prime")
        return super().__new__(cls, p)

    def __repr__(self) -> str:
        return f"PrimeModulus({int(self)})"


def mod_pow(base: int, exp: int, p: int) -> int:
    """base^exp mod p by square-and-multiply (stdlib pow)."""
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(base, exp, p)


def mod_inverse(a: int, p: int) -> int:
    """Multiplicative inverse of a modulo prime p."""
    if a % p == 0:
        raise ValueError("0 has no inverse modulo p")
    return pow(a, p - 2, p)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division: {prime: exponent}."""
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def element_order(a: int, p: int) -> int:
    """Least t >= 1 with a^t = 1 mod p, via divisors of p-1."""
    if a % p == 0:
        raise ValueError("0 has no multiplicative order")
    order = p - 1
    for q in factorize(p - 1):
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod p.

    Verified by checking g^((p-1)/q) != 1 for every prime q | p-1.
    For p = 2 the group is trivial and 1 is returned.
    """
    if p == 2:
        return 1
    prime_factors = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in prime_factors):
            return g
    raise ArithmeticError(f"no primitive root found modulo {p}")  # unreachable for prime p

"""Exact integer arithmetic: primality, p-adic valuations, CRT.

Rationals are plain :class:`fractions.Fraction` values, which are always
kept in lowest terms with a positive denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, prod
from typing import Iterable

Rat = Fraction

# Miller-Rabin with these bases is deterministic below this bound
# (Sorenson & Webster 2015); the bound exceeds 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DETERMINISTIC_PRIME_BOUND = 318665857834031151167461


def is_prime(n: int) -> bool:
    """Deterministic primality test, valid for ``n < DETERMINISTIC_PRIME_BOUND``."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= DETERMINISTIC_PRIME_BOUND:
        raise ValueError(f"{n} is outside the deterministic primality range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _sieve(hi: int) -> list[bool]:
    flags = [True] * (hi + 1)
    flags[0:2] = [False] * min(2, hi + 1)
    for p in range(2, isqrt(hi) + 1):
        if flags[p]:
            flags[p * p :: p] = [False] * len(range(p * p, hi + 1, p))
    return flags


def primes_in_range(lo: int, hi: int, excluded: Iterable[int] = ()) -> list[int]:
    """Ascending primes ``q`` with ``lo <= q <= hi`` and ``q`` not in *excluded*."""
    if lo > hi:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    excluded = set(excluded)
    if hi <= 10**7:
        flags = _sieve(hi)
        return [q for q in range(max(lo, 2), hi + 1) if flags[q] and q not in excluded]
    return [q for q in range(max(lo, 2), hi + 1) if q not in excluded and is_prime(q)]


def primes_up_to(hi: int) -> list[int]:
    return primes_in_range(2, hi) if hi >= 2 else []


def next_prime(n: int, excluded: Iterable[int] = ()) -> int:
    """Smallest prime strictly greater than *n* that is not in *excluded*."""
    excluded = set(excluded)
    q = max(n + 1, 2)
    while not is_prime(q) or q in excluded:
        q += 1
    return q


def padic_val(a: int, p: int) -> int:
    """Largest ``e`` with ``p**e`` dividing ``a``."""
    if a == 0:
        raise ValueError("valuation of zero is undefined (infinite)")
    if p < 2:
        raise ValueError(f"p must be prime, got {p}")
    a = abs(a)
    e = 0
    while a % p == 0:
        a //= p
        e += 1
    return e


def factor_over(n: int, primes: Iterable[int]) -> tuple[dict[int, int], int]:
    """Trial-divide ``n`` by the supplied primes.

    Returns the exponent map and the unfactored cofactor.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    n = abs(n)
    exps = {}
    for p in primes:
        if n % p == 0:
            e = padic_val(n, p)
            exps[p] = e
            n //= p**e
    return exps, n


@dataclass(frozen=True)
class Congruence:
    """``x ≡ residue (mod modulus)``, residue normalized into ``[0, modulus)``."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def holds(self, x: int) -> bool:
        return (x - self.residue) % self.modulus == 0


def crt_solve(congruences: Iterable[Congruence]) -> int:
    """Smallest nonnegative ``x`` satisfying every congruence.

    Moduli must be pairwise coprime.
    """
    congruences = list(congruences)
    if not congruences:
        raise ValueError("no congruences given")
    mods = [c.modulus for c in congruences]
    for i, m in enumerate(mods):
        for n in mods[i + 1 :]:
            if gcd(m, n) != 1:
                raise ValueError(f"CRT moduli not coprime: {m}, {n}")
    x, m = 0, 1
    for c in congruences:
        # x + m*t ≡ r (mod n)
        t = (c.residue - x) * pow(m, -1, c.modulus) % c.modulus
        x += m * t
        m *= c.modulus
    return x % m


def crt_modulus(congruences: Iterable[Congruence]) -> int:
    return prod(c.modulus for c in congruences)

"""Fixed divisors of subset products via per-prime valuation tables.

For monic parts ``f_0..f_{n-1}`` of total degree ``D``, the fixed divisor
of any subset product is determined by the values at ``a = 0..D`` and
only involves primes ``q <= D``.  Each prime gets a table of
``v_q(f_i(a))`` and the subset exponent is a min of row sums, which is
what :mod:`intfact.kernels` computes.
"""

from __future__ import annotations

from array import array
from math import prod
from typing import Sequence

from intfact import kernels
from intfact.arith import padic_val
from intfact.poly import ZPoly

# stands in for v_q(0); larger than any real valuation sum
SENTINEL = 1 << 40


def valuation_table(parts: Sequence[ZPoly], q: int, npts: int) -> array:
    flat = array("q")
    for f in parts:
        for a in range(npts):
            v = f(a)
            flat.append(SENTINEL if v == 0 else padic_val(v, q))
    return flat


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


class SubsetFixdiv:
    """Memoized ``fixed_divisor(prod_{i in mask} parts[i])`` restricted to *primes*.

    *primes* must contain every prime that can divide a subset fixed
    divisor (for example the primes of ``c`` when the full product has
    fixed divisor ``c``, or all primes up to the total degree).
    """

    def __init__(self, parts: Sequence[ZPoly], primes: Sequence[int]):
        if any(not f.is_monic() for f in parts):
            raise ValueError("subset fixed divisors need monic parts")
        self.parts = list(parts)
        self.n = len(parts)
        self.primes = list(primes)
        self.npts = sum(f.degree for f in parts) + 1
        self.tables = {q: valuation_table(parts, q, self.npts) for q in self.primes}
        self._memo: dict[int, int] = {}
        self._all: list[int] | None = None

    def exponent(self, q: int, mask: int) -> int:
        return kernels.mask_min_sum(self.tables[q], self.n, self.npts, mask)

    def __call__(self, mask: int) -> int:
        if self._all is not None:
            return self._all[mask]
        if mask not in self._memo:
            self._memo[mask] = prod(q ** self.exponent(q, mask) for q in self.primes)
        return self._memo[mask]

    def all(self) -> list[int]:
        """Fixed divisors for every mask in ``range(2**n)``."""
        if self._all is None:
            if self.n > 20:
                raise ValueError(f"too many parts ({self.n}) for a full subset table")
            out = [1] * (1 << self.n)
            for q in self.primes:
                for m, e in enumerate(kernels.subset_min_sums(self.tables[q], self.n, self.npts)):
                    if e:
                        out[m] *= q**e
            self._all = out
        return self._all

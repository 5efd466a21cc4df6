"""Factorizations in Int(ZZ) of ``f = (prod_{i in I} f_i) / c``.

The parts ``f_i`` are monic integer polynomials, each assumed irreducible
over Q, and the fixed divisor of their product is exactly ``c >= 2``.  Any
factorization of ``f`` then groups the parts into blocks ``(d, J)``
standing for ``prod_{i in J} f_i / d`` with ``prod d = c`` (units of
Int(ZZ) are ``±1``, so a block is determined up to association by
``(d, J)``).

Two independent enumerations are provided:

* :func:`enumerate_factorizations` uses indispensable parts.  If some part
  is indispensable for every prime of ``c`` (or the "shares an
  indispensable part" graph on those primes is connected), the
  factorizations are exactly ``(c, Λ ∪ J1)`` plus singletons, one for each
  inclusion-minimal ``J1``.
* :func:`enumerate_factorizations_bruteforce` tries every set partition and
  every denominator assignment and keeps the all-irreducible ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Sequence

from intfact.arith import factor_over, primes_up_to
from intfact.poly import ZPoly, fixed_divisor, poly_product
from intfact.subsets import SubsetFixdiv, indices_of, mask_of

BRUTEFORCE_MAX_PARTS = 12


@dataclass(frozen=True, order=True)
class Block:
    den: int
    indices: tuple[int, ...]

    def to_json(self) -> dict:
        return {"den": self.den, "indices": list(self.indices)}


@dataclass(frozen=True)
class Factorization:
    blocks: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks)))

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, Iterable[int]]]) -> Factorization:
        return cls(tuple(Block(d, tuple(sorted(J))) for d, J in pairs))

    @property
    def length(self) -> int:
        return len(self.blocks)

    def to_json(self) -> dict:
        return {"blocks": [b.to_json() for b in self.blocks]}

    @classmethod
    def from_json(cls, data: dict) -> Factorization:
        return cls.of((b["den"], b["indices"]) for b in data["blocks"])


def canonical_key(fact: Factorization, parts: Sequence[ZPoly]) -> tuple:
    """Association-class key: the multiset of ``(d, multiset of part polynomials)``."""
    return tuple(
        sorted((b.den, tuple(sorted(parts[i].coeffs for i in b.indices))) for b in fact.blocks)
    )


def factorization_keys(facts: Iterable[Factorization], parts: Sequence[ZPoly]) -> set:
    return {canonical_key(f, parts) for f in facts}


def _dedup(facts: Iterable[Factorization], parts: Sequence[ZPoly]) -> set[Factorization]:
    out = {}
    for f in sorted(facts, key=lambda f: f.blocks):
        out.setdefault(canonical_key(f, parts), f)
    return set(out.values())


@dataclass
class FactoredInput:
    parts: list[ZPoly]
    c: int
    c_factors: dict[int, int] = field(init=False)
    fd: SubsetFixdiv = field(init=False, repr=False)

    def __post_init__(self):
        self.parts = list(self.parts)
        if self.c < 2:
            raise ValueError(f"c must be >= 2, got {self.c}")
        if not self.parts:
            raise ValueError("need at least one part")
        for f in self.parts:
            if f.degree < 1 or not f.is_monic():
                raise ValueError(f"part {f} must be monic of degree >= 1")
        d = fixed_divisor(poly_product(self.parts))
        if d != self.c:
            raise ValueError(f"fixed divisor of the product is {d}, not c = {self.c}")
        total = sum(f.degree for f in self.parts)
        self.c_factors, rest = factor_over(self.c, primes_up_to(total))
        assert rest == 1  # primes of a monic fixed divisor are <= degree
        self.fd = SubsetFixdiv(self.parts, sorted(self.c_factors))

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def primes(self) -> list[int]:
        return sorted(self.c_factors)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def divisors(self, d: int) -> list[int]:
        exps = [(q, e) for q, e in factor_over(d, self.primes)[0].items()]
        out = [1]
        for q, e in exps:
            out = [x * q**k for x in out for k in range(e + 1)]
        return sorted(out)


# -- indispensable parts -----------------------------------------------------


def find_indispensable_witness(inp: FactoredInput, i: int, P: int) -> int | None:
    """Smallest-residue ``z`` with ``P | f_i(z) != 0`` and ``P ∤ f_j(z)`` for ``j != i``.

    Divisibility by ``P`` depends only on ``z mod P``, so scanning residues
    is complete; the residue is then shifted by multiples of ``P`` until
    ``f_i(z)`` is nonzero (at most ``deg f_i`` shifts).
    """
    parts = inp.parts
    for r in range(P):
        if parts[i](r) % P:
            continue
        if any(parts[j](r) % P == 0 for j in range(len(parts)) if j != i):
            continue
        z = r
        while parts[i](z) == 0:
            z += P
        return z
    return None


@dataclass
class IndispensableMap:
    witnesses: dict[int, dict[int, int]]  # P -> {i: z}

    def lam(self, P: int) -> set[int]:
        return set(self.witnesses[P])

    def union(self) -> set[int]:
        return set().union(*(self.lam(P) for P in self.witnesses))

    def intersection(self) -> set[int]:
        sets = [self.lam(P) for P in self.witnesses]
        return set.intersection(*sets) if sets else set()

    def graph_connected(self) -> bool:
        primes = list(self.witnesses)
        if not primes:
            return False
        seen, todo = {primes[0]}, [primes[0]]
        while todo:
            P = todo.pop()
            for Q in primes:
                if Q not in seen and self.lam(P) & self.lam(Q):
                    seen.add(Q)
                    todo.append(Q)
        return len(seen) == len(primes) and all(self.lam(P) for P in primes)

    def basis(self) -> str | None:
        """``"intersection"``, ``"connected-graph"`` or ``None`` if neither hypothesis holds."""
        if self.intersection():
            return "intersection"
        if len(self.witnesses) > 1 and self.graph_connected():
            return "connected-graph"
        return None


def indispensable_map(inp: FactoredInput) -> IndispensableMap:
    out = {}
    for P in inp.primes:
        out[P] = {}
        for i in range(inp.n):
            z = find_indispensable_witness(inp, i, P)
            if z is not None:
                out[P][i] = z
    return IndispensableMap(out)


# -- enumeration ---------------------------------------------------------------


class HypothesisError(ValueError):
    pass


def minimal_completions(inp: FactoredInput, base: int) -> list[int]:
    """Inclusion-minimal masks ``J1`` outside *base* with ``fd(base | J1) == c``."""
    rest = [i for i in range(inp.n) if not base >> i & 1]
    found: list[int] = []
    for k in range(len(rest) + 1):
        for combo in itertools.combinations(rest, k):
            m = mask_of(combo)
            if any(f & m == f for f in found):
                continue
            if inp.fd(base | m) == inp.c:
                found.append(m)
    return found


def enumerate_factorizations(inp: FactoredInput) -> set[Factorization]:
    imap = indispensable_map(inp)
    if imap.basis() is None:
        raise HypothesisError("indispensability hypothesis not satisfied; use brute-force oracle")
    lam = mask_of(imap.union())
    out = []
    for j1 in minimal_completions(inp, lam):
        big = lam | j1
        singles = [(1, (j,)) for j in range(inp.n) if not big >> j & 1]
        out.append(Factorization.of([(inp.c, indices_of(big))] + singles))
    return _dedup(out, inp.parts)


def is_irreducible_block(d: int, J: Iterable[int] | int, inp: FactoredInput) -> bool:
    """Whether ``prod_{i in J} f_i / d`` is irreducible in Int(ZZ).

    A block whose fixed divisor exceeds ``d`` sheds an integer constant;
    otherwise every split is ``(d', J') * (d'', J'')`` with ``d' d'' = d``.
    """
    mask = J if isinstance(J, int) else mask_of(J)
    if mask == 0:
        raise ValueError("block must contain at least one part")
    return _irreducible(inp, d, mask)


def _irreducible(inp: FactoredInput, d: int, mask: int) -> bool:
    fd = inp.fd
    full = fd(mask)
    if full % d:
        raise ValueError(f"block ({d}, {indices_of(mask)}) is not integer-valued")
    if full != d:
        return False
    divs = inp.divisors(d)
    sub = (mask - 1) & mask
    while sub:
        rest = mask ^ sub
        a, b = fd(sub), fd(rest)
        for d1 in divs:
            if a % d1 == 0 and b % (d // d1) == 0:
                return False
        sub = (sub - 1) & mask
    return True


def enumerate_factorizations_bruteforce(
    inp: FactoredInput, max_parts: int = BRUTEFORCE_MAX_PARTS
) -> set[Factorization]:
    """All factorizations by exhaustive set-partition and denominator search."""
    if inp.n > max_parts:
        raise ValueError(f"size bound exceeded: {inp.n} parts > {max_parts}")
    fdv = inp.fd.all()
    irred: dict[tuple[int, int], bool] = {}

    def ok(d: int, m: int) -> bool:
        if (d, m) not in irred:
            irred[(d, m)] = _irreducible(inp, d, m)
        return irred[(d, m)]

    out = []

    def extend(remaining: int, c_left: int, blocks: list[tuple[int, int]]):
        if remaining == 0:
            if c_left == 1:
                out.append(Factorization.of((d, indices_of(m)) for d, m in blocks))
            return
        low = remaining & -remaining
        others = remaining ^ low
        sub = others
        while True:
            m = sub | low
            for d in inp.divisors(gcd(c_left, fdv[m])):
                if ok(d, m):
                    blocks.append((d, m))
                    extend(remaining ^ m, c_left // d, blocks)
                    blocks.pop()
            if sub == 0:
                break
            sub = (sub - 1) & others

    extend(inp.full, inp.c, [])
    return _dedup(out, inp.parts)


def lengths_set(factorizations: Iterable[Factorization]) -> list[int]:
    return sorted({f.length for f in factorizations})


def lengths_multiset(factorizations: Iterable[Factorization]) -> list[int]:
    return sorted(f.length for f in factorizations)


def block_poly(inp: FactoredInput, block: Block) -> tuple[ZPoly, int]:
    return poly_product(inp.parts[i] for i in block.indices), block.den


def check_factorization(inp: FactoredInput, fact: Factorization) -> str | None:
    """Reason the factorization is invalid, or ``None``."""
    seen = sorted(i for b in fact.blocks for i in b.indices)
    if seen != list(range(inp.n)):
        return "blocks do not partition the parts"
    if prod(b.den for b in fact.blocks) != inp.c:
        return "denominators do not multiply to c"
    for b in fact.blocks:
        m = mask_of(b.indices)
        if not b.indices or inp.fd(m) % b.den:
            return f"block {b} is not integer-valued"
        if not _irreducible(inp, b.den, m):
            return f"block {b} is reducible"
    return None

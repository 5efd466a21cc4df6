"""Residue designs for the prescribed-lengths construction.

A design fixes a prime ``p`` and ``c = p * prod q_i^e_i`` (all odd), a set
``R`` of ``N = (sum m)^2 - sum m^2`` integers indexed by ``(k, i, h, j)``
with ``k != h``, and a list ``S = s_0..s_{sigma-1}``, subject to six
congruence conditions:

1. ``s_0 ≡ 0 (mod p)`` and ``{s_0..s_{tau-1}} ∪ R`` is a complete residue
   system mod ``p``;
2. ``s_i ≡ 0 (mod p)`` for ``i >= tau``;
3. for each ``q_i``, ``S`` holds ``e_i`` disjoint complete systems mod
   ``q_i`` whose same-class representatives agree mod ``q_i^2``;
4. at most ``e_i`` elements of ``S`` are ``≡ 1 (mod q_i)``;
5. every ``r`` in ``R`` is ``≡ 0 (mod q_i)`` for all ``i``;
6. ``R ∪ S`` misses some residue class for every other prime.

Entries of ``R`` are pictured in a square matrix whose rows and columns
are indexed by ``I = {(k, i)}``; ``B[k, i]`` collects row ``(k, i)`` and
column ``(k, i)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

from intfact.arith import Congruence, crt_solve, is_prime, next_prime, padic_val, primes_up_to
from intfact.poly import ZPoly, fixed_divisor
from intfact.report import Report

Index4 = tuple[int, int, int, int]


@dataclass(frozen=True)
class LengthSpec:
    """Sorted multiset ``m_1 <= ... <= m_n``; factorization lengths are ``m_i + 1``."""

    ms: tuple[int, ...]

    def __post_init__(self):
        ms = tuple(sorted(int(m) for m in self.ms))
        if not ms:
            raise ValueError("length spec must be non-empty")
        if ms[0] < 1:
            raise ValueError("every m_i must be >= 1 (length 1 cannot be prescribed)")
        object.__setattr__(self, "ms", ms)

    @classmethod
    def from_lengths(cls, lengths: Iterable[int]) -> LengthSpec:
        lengths = list(lengths)
        if any(k < 2 for k in lengths):
            raise ValueError("prescribed lengths must all be >= 2")
        return cls(tuple(k - 1 for k in lengths))

    @property
    def n(self) -> int:
        return len(self.ms)

    @property
    def total(self) -> int:
        return sum(self.ms)


def compute_N(spec: LengthSpec) -> int:
    return spec.total**2 - sum(m * m for m in spec.ms)


def index_set(ms: Sequence[int]) -> list[tuple[int, int]]:
    """``I = {(k, i)}``, 1-based, in lexicographic order."""
    return [(k, i) for k, m in enumerate(ms, 1) for i in range(1, m + 1)]


def r_indices(ms: Sequence[int]) -> list[Index4]:
    I = index_set(ms)
    return [(k, i, h, j) for (k, i) in I for (h, j) in I if k != h]


@dataclass(frozen=True)
class Params:
    p: int
    c: int
    tau: int
    sigma: int
    factors: tuple[tuple[int, int], ...] = ()


def choose_parameters(
    spec: LengthSpec, prime: int | None = None, c_extra: Iterable[tuple[int, int]] = ()
) -> Params:
    """Smallest odd prime ``p > N + 1`` (or *prime*), ``c = p * prod q^e``."""
    if spec.n < 2:
        raise ValueError("n >= 2 required; n = 1 handled in constructions")
    N = compute_N(spec)
    if prime is None:
        p = next_prime(N + 1, excluded={2})
    else:
        p = prime
        if not is_prime(p) or p == 2:
            raise ValueError(f"p={p} must be an odd prime")
        if p <= N + 1:
            raise ValueError(f"p={p} must exceed N + 1 = {N + 1}")
    factors = []
    seen = {p}
    for q, e in c_extra:
        if q == 2:
            raise ValueError("c must be odd (no maximal ideal of index 2)")
        if not is_prime(q):
            raise ValueError(f"extra factor {q} is not prime")
        if q in seen:
            raise ValueError(f"extra factor {q} repeats p or another factor")
        if e < 1:
            raise ValueError(f"exponent for {q} must be >= 1")
        seen.add(q)
        factors.append((q, e))
    tau = p - N
    sigma = max([tau] + [e * q for q, e in factors])
    c = p * prod(q**e for q, e in factors)
    return Params(p, c, tau, sigma, tuple(sorted(factors)))


@dataclass
class ResidueDesign:
    ms: tuple[int, ...]
    p: int
    c: int
    factors: tuple[tuple[int, int], ...]
    N: int
    tau: int
    sigma: int
    S: list[int]
    R: dict[Index4, int]
    avoided_primes: list[int] = field(default_factory=list)

    @property
    def I(self) -> list[tuple[int, int]]:
        return index_set(self.ms)

    def R_list(self) -> list[int]:
        return [self.R[key] for key in r_indices(self.ms)]

    def T(self) -> list[int]:
        """The root multiset ``R ⊎ R ⊎ S`` of ``s * prod f_i^(k)``."""
        r = self.R_list()
        return r + r + list(self.S)

    def to_json(self) -> dict:
        return {
            "ms": list(self.ms),
            "p": self.p,
            "c": self.c,
            "factors": [[q, e] for q, e in self.factors],
            "N": self.N,
            "tau": self.tau,
            "sigma": self.sigma,
            "S": list(self.S),
            "R": {",".join(map(str, key)): v for key, v in self.R.items()},
            "avoided_primes": list(self.avoided_primes),
        }

    @classmethod
    def from_json(cls, data: dict) -> ResidueDesign:
        return cls(
            ms=tuple(data["ms"]),
            p=data["p"],
            c=data["c"],
            factors=tuple((q, e) for q, e in data["factors"]),
            N=data["N"],
            tau=data["tau"],
            sigma=data["sigma"],
            S=list(data["S"]),
            R={tuple(int(t) for t in key.split(",")): v for key, v in data["R"].items()},
            avoided_primes=list(data["avoided_primes"]),
        )


def build_design(spec: LengthSpec, params: Params) -> ResidueDesign:
    if spec.n < 2:
        raise ValueError("n >= 2 required; n = 1 handled in constructions")
    p, tau, sigma = params.p, params.tau, params.sigma
    N = compute_N(spec)
    if tau != p - N or tau < 2:
        raise ValueError(f"inconsistent parameters: tau={tau}, p={p}, N={N}")
    extra = {q for q, _ in params.factors}
    avoided = [q for q in primes_up_to(N + sigma) if q != p and q not in extra]
    modulus = p * prod(q * q for q in extra) * prod(avoided)

    def solve(mod_p: int, mod_q: dict[int, int]) -> int:
        congs = [Congruence(mod_p, p)]
        congs += [Congruence(mod_q[q], q * q) for q, _ in params.factors]
        congs += [Congruence(0, q) for q in avoided]
        return crt_solve(congs)

    seen: set[int] = set()

    def place(x: int) -> int:
        while x in seen:
            x += modulus
        seen.add(x)
        return x

    S = []
    for j in range(sigma):
        mod_p = 0 if j == 0 or j >= tau else N + j
        # the first e*q entries form e complete systems mod q; the rest sit in class 0
        mod_q = {q: (j % q if j < e * q else 0) for q, e in params.factors}
        S.append(place(solve(mod_p, mod_q)))
    R = {}
    for t, key in enumerate(r_indices(spec.ms)):
        R[key] = place(solve(t + 1, {q: 0 for q in extra}))
    return ResidueDesign(
        ms=spec.ms,
        p=p,
        c=params.c,
        factors=params.factors,
        N=N,
        tau=tau,
        sigma=sigma,
        S=S,
        R=R,
        avoided_primes=avoided,
    )


def _complete_mod(values: Sequence[int], q: int) -> bool:
    return len({v % q for v in values}) == q


def _systems_exist(values: Sequence[int], q: int, e: int) -> tuple[bool, str]:
    """``e`` disjoint complete systems mod q with same-class representatives congruent mod q^2."""
    counts = Counter(v % (q * q) for v in values)
    for r in range(q):
        best = max((counts[r + q * t] for t in range(q)), default=0)
        if best < e:
            return False, f"class {r} mod {q} has only {best} representatives in one class mod {q * q}"
    return True, ""


def verify_design(d: ResidueDesign) -> Report:
    rep = Report(f"residue design p={d.p} c={d.c} ms={list(d.ms)}")
    p = d.p
    spec_N = sum(d.ms) ** 2 - sum(m * m for m in d.ms)
    keys = r_indices(d.ms)
    rep.add(
        "index_set",
        set(d.R) == set(keys) and len(d.R) == d.N == spec_N,
        f"|R|={len(d.R)} N={d.N} expected {spec_N}",
    )
    sigma = max([d.tau] + [e * q for q, e in d.factors])
    rep.add(
        "parameters",
        is_prime(p)
        and p != 2
        and d.tau == p - spec_N
        and d.tau >= 2
        and d.sigma == sigma == len(d.S)
        and d.c == p * prod(q**e for q, e in d.factors),
        f"p={p} tau={d.tau} sigma={d.sigma} |S|={len(d.S)} c={d.c}",
    )
    R = list(d.R.values())
    S = list(d.S)
    rep.add("distinct", len(set(R + S)) == len(R) + len(S), "R and S must be distinct integers")

    head = S[: d.tau] + R
    ok1 = bool(S) and S[0] % p == 0 and len(head) == p and _complete_mod(head, p)
    detail = ""
    if not ok1:
        if not S or S[0] % p:
            detail = "s_0 is not ≡ 0 mod p"
        else:
            seen = Counter(v % p for v in head)
            missing = [r for r in range(p) if not seen[r]]
            detail = f"residues mod {p} missing {missing}, repeated {[r for r, k in seen.items() if k > 1]}"
    rep.add("cond1_complete_mod_p", ok1, detail)

    bad2 = [(i, s) for i, s in enumerate(S) if i >= d.tau and s % p]
    rep.add("cond2_tail_zero_mod_p", not bad2, f"witness s_{bad2[0][0]}={bad2[0][1]}" if bad2 else "")

    for q, e in d.factors:
        ok, why = _systems_exist(S, q, e)
        rep.add(f"cond3_systems_mod_{q}", ok, why)
        ones = sum(1 for s in S if s % q == 1)
        rep.add(f"cond4_class1_mod_{q}", ones <= e, f"{ones} elements ≡ 1 mod {q} (max {e})")
        badr = [r for r in R if r % q]
        rep.add(f"cond5_R_zero_mod_{q}", not badr, f"witness r={badr[0]}" if badr else "")

    excluded = {p} | {q for q, _ in d.factors}
    fails = []
    for q in primes_up_to(len(R) + len(S)):
        if q in excluded:
            continue
        hit = {v % q for v in R + S}
        missed = [r for r in range(q) if r not in hit]
        if not missed:
            fails.append(q)
    rep.add(
        "cond6_no_other_complete_system",
        not fails,
        f"complete residue system mod {fails}" if fails else "",
    )
    return rep


def B_set(d: ResidueDesign, k: int, i: int) -> list[int]:
    if (k, i) not in d.I:
        raise ValueError(f"invalid index (k, i) = {(k, i)}")
    row = [d.R[(k, i, h, j)] for (h, j) in d.I if h != k]
    col = [d.R[(h, j, k, i)] for (h, j) in d.I if h != k]
    return row + col


def block_poly(d: ResidueDesign, k: int, i: int) -> ZPoly:
    """``f_i^(k) = prod_{r in B[k, i]} (x - r)``."""
    return ZPoly.from_roots(B_set(d, k, i))


def s_poly(d: ResidueDesign) -> ZPoly:
    return ZPoly.from_roots(d.S)


def split_polys(d: ResidueDesign) -> list[ZPoly]:
    """``[s, f^(k)_i for (k, i) in I]``, the family that gets lifted jointly."""
    return [s_poly(d)] + [block_poly(d, k, i) for (k, i) in d.I]


# -- split polynomials with prescribed fixed-divisor valuation -------------


@dataclass
class SplitCertificate:
    """Decomposition ``T = T0 ⊎ T_1 ⊎ ... ⊎ T_e`` witnessing ``v_q(d(prod (x - t))) = e``."""

    q: int
    e: int
    systems: list[list[int]]
    T0: list[int]
    z: int

    def to_json(self) -> dict:
        return {"q": self.q, "e": self.e, "systems": self.systems, "T0": self.T0, "z": self.z}


def split_fixdiv_valuation(T: Sequence[int], q: int) -> int:
    if not T:
        raise ValueError("T must be non-empty")
    return padic_val(fixed_divisor(ZPoly.from_roots(T)), q)


def check_split_certificate(T: Sequence[int], q: int, cert: SplitCertificate) -> Report:
    if cert.q != q or len(cert.systems) != cert.e:
        raise ValueError("malformed certificate: prime or system count mismatch")
    parts = list(cert.T0) + [t for sysm in cert.systems for t in sysm]
    if Counter(parts) != Counter(T):
        raise ValueError("malformed certificate: T0 and systems do not partition T")
    rep = Report(f"split certificate q={q} e={cert.e}")
    ok1, why = True, ""
    for n, sysm in enumerate(cert.systems):
        if len(sysm) != q or not _complete_mod(sysm, q):
            ok1, why = False, f"system {n} is not a complete residue system mod {q}"
            break
    if ok1 and cert.systems:
        for r in range(q):
            reps = {t % (q * q) for sysm in cert.systems for t in sysm if t % q == r}
            if len(reps) > 1:
                ok1, why = False, f"class {r} representatives differ mod {q * q}"
                break
    rep.add("systems", ok1, why)
    clash = [t for t in cert.T0 if (t - cert.z) % q == 0]
    rep.add("z_avoided", not clash, f"T0 element {clash[0]} ≡ z mod {q}" if clash else "")
    v = split_fixdiv_valuation(T, q)
    rep.add("valuation", v == cert.e, f"v_{q}(d) = {v}, certified {cert.e}")
    return rep


def certify_split_valuation(T: Sequence[int], q: int, cert: SplitCertificate) -> bool:
    return check_split_certificate(T, q, cert).ok


def design_certificates(d: ResidueDesign) -> list[SplitCertificate]:
    """Certificates for ``T = R ⊎ R ⊎ S``: ``e = 1`` at ``p`` (z = s_1), ``e_i`` at each ``q_i`` (z = 1)."""
    R = d.R_list()
    S = list(d.S)
    certs = [SplitCertificate(d.p, 1, [S[: d.tau] + R], R + S[d.tau :], S[1])]
    for q, e in d.factors:
        systems = [S[u * q : (u + 1) * q] for u in range(e)]
        certs.append(SplitCertificate(q, e, systems, R + R + S[e * q :], 1))
    return certs

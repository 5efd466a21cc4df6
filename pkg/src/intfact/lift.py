"""Replace split monic polynomials by Q-irreducible ones with the same fixed divisors.

Each monic ``f_i`` becomes ``F_i = f_i + sum_k g_ik x^k`` where every
offset ``g_ik`` is divisible by ``M = prod_{q <= deg} q^(e_q + 1)`` (``e_q``
the q-exponent of the fixed divisor of the joint product) and ``F_i`` is
Eisenstein at an auxiliary prime ``Q`` larger than the total degree.  Since
``F_i ≡ f_i (mod M)``, any product mixing ``f``'s and ``F``'s has the same
fixed divisor as the all-``f`` product.
"""

from __future__ import annotations

import itertools
import random
from array import array
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from intfact import kernels
from intfact.arith import Congruence, crt_solve, is_prime, next_prime, padic_val, primes_up_to
from intfact.poly import ZPoly, fixed_divisor, poly_product
from intfact.report import Report
from intfact.subsets import valuation_table

EXHAUSTIVE_LIMIT = 12


def fixdiv_profile(fs: Sequence[ZPoly]) -> dict[int, int]:
    """``{q: v_q(d(prod fs))}`` for every prime ``q <= deg(prod fs)``, zeros included."""
    if not fs:
        raise ValueError("need at least one polynomial")
    g = poly_product(fs)
    d = fixed_divisor(g)
    return {q: padic_val(d, q) for q in primes_up_to(g.degree)}


def choose_aux_prime(total_degree: int, excluded=()) -> int:
    return next_prime(total_degree, excluded=excluded)


@dataclass
class LiftCertificate:
    aux_prime: int
    modulus: int
    profile: dict[int, int]
    originals: list[ZPoly]
    lifted: list[ZPoly]
    offsets: list[list[int]]
    companions: list[ZPoly] = field(default_factory=list)

    @property
    def total_degree(self) -> int:
        return sum(f.degree for f in self.originals + self.companions)

    def to_json(self) -> dict:
        return {
            "aux_prime": self.aux_prime,
            "modulus": self.modulus,
            "profile": {str(q): e for q, e in sorted(self.profile.items())},
            "originals": [f.to_json() for f in self.originals],
            "lifted": [f.to_json() for f in self.lifted],
            "offsets": self.offsets,
            "companions": [f.to_json() for f in self.companions],
        }

    @classmethod
    def from_json(cls, data: dict) -> LiftCertificate:
        return cls(
            aux_prime=data["aux_prime"],
            modulus=data["modulus"],
            profile={int(q): e for q, e in data["profile"].items()},
            originals=[ZPoly.from_json(f) for f in data["originals"]],
            lifted=[ZPoly.from_json(f) for f in data["lifted"]],
            offsets=[list(o) for o in data["offsets"]],
            companions=[ZPoly.from_json(f) for f in data.get("companions", [])],
        )


def _solve(pairs: list[tuple[int, int]]) -> int:
    return crt_solve(Congruence(r, m) for r, m in pairs if m > 1)


def lift(
    fs: Sequence[ZPoly],
    extra_profile: dict[int, int] | None = None,
    companions: Sequence[ZPoly] = (),
) -> tuple[list[ZPoly], LiftCertificate]:
    """Lift *fs* jointly.

    *companions* take part in the fixed-divisor profile and in the
    mixed-product guarantee but are left unchanged.  *extra_profile*
    exponents are merged in by maximum.
    """
    fs = list(fs)
    companions = list(companions)
    for f in fs:
        if f.degree < 1:
            raise ValueError("cannot lift a constant polynomial (Eisenstein needs degree >= 1)")
        if not f.is_monic():
            raise ValueError(f"polynomial {f} is not monic")
    profile = fixdiv_profile(fs + companions)
    for q, e in (extra_profile or {}).items():
        profile[q] = max(profile.get(q, 0), e)
    total = max([sum(f.degree for f in fs + companions)] + list(profile))
    Q = choose_aux_prime(total, excluded=set(profile))
    M = prod(q ** (e + 1) for q, e in profile.items())
    step = Q * Q * M

    lifted, offsets, used = [], [], set()
    for f in fs:
        g = []
        for k in range(f.degree):
            if k == 0:
                # F_0 ≡ Q (mod Q^2): divisible by Q, not by Q^2
                g.append(_solve([(Q - f.coeffs[0], Q * Q), (0, M)]))
            else:
                g.append(_solve([(-f.coeffs[k], Q), (0, M)]))
        while f.coeffs[0] + g[0] in used:
            g[0] += step
        used.add(f.coeffs[0] + g[0])
        offsets.append(g)
        lifted.append(f + ZPoly(g))
    cert = LiftCertificate(Q, M, profile, fs, lifted, offsets, companions)
    return lifted, cert


def is_eisenstein(f: ZPoly, q: int) -> bool:
    c = f.coeffs
    if not c or c[-1] % q == 0:
        return False
    return all(a % q == 0 for a in c[:-1]) and c[0] % (q * q) != 0


def verify_lift(cert: LiftCertificate, samples: int = 4000, seed: int = 0) -> Report:
    rep = Report(f"lift certificate Q={cert.aux_prime}")
    orig, lifted, comp = cert.originals, cert.lifted, cert.companions
    Q, M = cert.aux_prime, cert.modulus

    shape_ok, why = len(orig) == len(lifted) == len(cert.offsets), ""
    if shape_ok:
        for n, (f, F, g) in enumerate(zip(orig, lifted, cert.offsets)):
            if not (F.is_monic() and F.degree == f.degree and len(g) == f.degree):
                shape_ok, why = False, f"poly {n}: not monic of degree {f.degree}"
            elif F - f != ZPoly(g):
                shape_ok, why = False, f"poly {n}: lifted minus original differs from offsets"
            if not shape_ok:
                break
    else:
        why = "length mismatch between originals, lifted and offsets"
    rep.add("shape", shape_ok, why)

    total = sum(f.degree for f in orig + comp)
    actual = fixdiv_profile(orig + comp)
    prof_ok = all(cert.profile.get(q, -1) >= e for q, e in actual.items())
    rep.add(
        "profile",
        prof_ok and M == prod(q ** (e + 1) for q, e in cert.profile.items()),
        f"modulus {M} vs profile {cert.profile}",
    )
    bad_off = [(n, k) for n, g in enumerate(cert.offsets) for k, a in enumerate(g) if a % M]
    rep.add("offsets_mod_M", not bad_off, f"offset {bad_off[0]} not ≡ 0 mod M" if bad_off else "")
    rep.add(
        "aux_prime",
        is_prime(Q) and Q > total and Q not in cert.profile,
        f"Q={Q}, total degree {total}",
    )
    non_eis = [n for n, F in enumerate(lifted) if not is_eisenstein(F, Q)]
    rep.add("eisenstein", not non_eis, f"not Eisenstein at {Q}: {non_eis}" if non_eis else "")
    consts = [F.coeffs[0] if F.coeffs else 0 for F in lifted]
    rep.add("distinct", len(set(consts)) == len(consts) and len(set(lifted)) == len(lifted))

    if shape_ok:
        ok, detail = _mixed_products(orig, lifted, comp, samples, seed)
    else:
        ok, detail = False, "skipped: shape check failed"
    rep.add("mixed_products", ok, detail)
    return rep


def _mixed_products(orig, lifted, comp, samples, seed) -> tuple[bool, str]:
    family_o = list(orig) + list(comp)
    family_l = list(lifted) + list(comp)
    n = len(family_o)
    npts = sum(f.degree for f in family_o) + 1
    primes = primes_up_to(npts - 1)
    tables = [(valuation_table(family_o, q, npts), valuation_table(family_l, q, npts)) for q in primes]
    if n <= EXHAUSTIVE_LIMIT:
        for q, (to, tl) in zip(primes, tables):
            bad = kernels.mixed_mismatches(to, tl, n, npts)
            if bad:
                m1, m2 = bad[0]
                return False, f"prime {q}: originals {m1:b} + lifted {m2:b} changes the fixed divisor"
        return True, f"all {3**n} (subset, split) pairs checked exhaustively"
    rng = random.Random(seed)
    for _ in range(samples):
        states = [rng.randrange(3) for _ in range(n)]
        m1 = sum(1 << i for i, s in enumerate(states) if s == 1)
        m2 = sum(1 << i for i, s in enumerate(states) if s == 2)
        for q, (to, tl) in zip(primes, tables):
            both = array("q", itertools.chain(to, tl))
            mixed = kernels.mask_min_sum(both, 2 * n, npts, m1 | (m2 << n))
            if mixed != kernels.mask_min_sum(to, n, npts, m1 | m2):
                return False, f"prime {q}: originals {m1:b} + lifted {m2:b} changes the fixed divisor"
    return True, f"{samples} sampled (subset, split) pairs checked"

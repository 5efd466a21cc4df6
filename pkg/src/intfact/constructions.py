"""End-to-end constructions and their independent verification.

``construct_prescribed`` builds ``H = S * prod F_i^(k) / c`` whose
factorizations in Int(ZZ) have lengths exactly ``m_1 + 1, ..., m_n + 1``.
``construct_transfer`` builds irreducible ``H, G`` with
``x * H = G * (x - a_1) * ... * (x - a_n)``, so products of the fixed
irreducible ``x`` with an irreducible have unbounded lengths.

Artifacts hold raw integers only and round-trip through JSON; the
``verify_*`` functions recompute everything from those integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from intfact.arith import Congruence, crt_solve, is_prime, primes_up_to
from intfact.design import (
    LengthSpec,
    ResidueDesign,
    build_design,
    certify_split_valuation,
    check_split_certificate,
    choose_parameters,
    design_certificates,
    split_polys,
    verify_design,
)
from intfact.engine import (
    FactoredInput,
    Factorization,
    check_factorization,
    enumerate_factorizations,
    enumerate_factorizations_bruteforce,
    factorization_keys,
    indispensable_map,
    lengths_multiset,
    lengths_set,
)
from intfact.lift import LiftCertificate, fixdiv_profile, lift, verify_lift
from intfact.poly import RationalPoly, ZPoly, fixed_divisor, is_image_primitive, poly_product
from intfact.report import Report

SCHEMA_VERSION = 1


# -- prescribed sets of lengths ---------------------------------------------


@dataclass
class PrescribedLengthsArtifact:
    spec: LengthSpec
    design: ResidueDesign | None
    lift: LiftCertificate | None
    H: RationalPoly
    parts: list[ZPoly]
    factorizations: list[Factorization]
    lengths: list[int]

    @property
    def c(self) -> int:
        return self.H.den

    def to_json(self) -> dict:
        return {
            "kind": "prescribed",
            "version": SCHEMA_VERSION,
            "spec": {"ms": list(self.spec.ms)},
            "design": self.design.to_json() if self.design else None,
            "lift": self.lift.to_json() if self.lift else None,
            "H": self.H.to_json(),
            "parts": [f.to_json() for f in self.parts],
            "factorizations": [f.to_json() for f in self.factorizations],
            "lengths": list(self.lengths),
        }

    @classmethod
    def from_json(cls, data: dict) -> PrescribedLengthsArtifact:
        return cls(
            spec=LengthSpec(tuple(data["spec"]["ms"])),
            design=ResidueDesign.from_json(data["design"]) if data.get("design") else None,
            lift=LiftCertificate.from_json(data["lift"]) if data.get("lift") else None,
            H=RationalPoly.from_json(data["H"]),
            parts=[ZPoly.from_json(f) for f in data["parts"]],
            factorizations=[Factorization.from_json(f) for f in data["factorizations"]],
            lengths=list(data["lengths"]),
        )


def _sorted_facts(facts) -> list[Factorization]:
    return sorted(facts, key=lambda f: (f.length, f.blocks))


def construct_prescribed(
    spec: LengthSpec, prime: int | None = None, c_extra: Sequence[tuple[int, int]] = ()
) -> PrescribedLengthsArtifact:
    if spec.n == 1:
        m = spec.ms[0]
        x = ZPoly.x()
        parts = [x] * (m + 1)
        fact = Factorization.of((1, (j,)) for j in range(m + 1))
        return PrescribedLengthsArtifact(
            spec, None, None, RationalPoly(x ** (m + 1)), parts, [fact], [m + 1]
        )

    params = choose_parameters(spec, prime=prime, c_extra=c_extra)
    design = build_design(spec, params)
    lifted, cert = lift(split_polys(design))
    G = poly_product(lifted)
    H = RationalPoly(G, params.c)
    inp = FactoredInput(lifted, params.c)
    facts = _sorted_facts(enumerate_factorizations(inp))
    art = PrescribedLengthsArtifact(
        spec, design, cert, H, lifted, facts, lengths_multiset(facts)
    )

    assert fixed_divisor(G) == params.c and H.den == params.c
    assert is_image_primitive(H)
    assert len(facts) == spec.n
    assert art.lengths == sorted(m + 1 for m in spec.ms)
    return art


def verify_prescribed(a: PrescribedLengthsArtifact) -> Report:
    rep = Report(f"prescribed lengths artifact ms={list(a.spec.ms)}")
    if a.spec.n == 1:
        return _verify_degenerate(a, rep)
    if a.design is None or a.lift is None:
        rep.add("structure", False, "design and lift certificate are required for n >= 2")
        return rep
    d = a.design
    c = a.H.den
    rep.add("spec_matches_design", tuple(d.ms) == a.spec.ms, f"design ms={list(d.ms)}")
    rep.extend(verify_design(d), "design.")

    rep.extend(verify_lift(a.lift), "lift.")
    rep.add(
        "lift_originals_from_design",
        a.lift.originals == split_polys(d),
        "lift originals must be s and f_i^(k) rebuilt from the design",
    )
    rep.add("parts_are_lifted", a.parts == a.lift.lifted)
    rep.add("numerator_is_product", a.H.num == poly_product(a.parts))
    rep.add("c_matches_design", c == d.c, f"H denominator {c}, design c {d.c}")

    G = a.H.num
    fd = fixed_divisor(G) if not G.is_zero() else 0
    rep.add("fixdiv_gcd_equals_c", fd == c, f"d(numerator) = {fd}, c = {c}")

    # split-certificate route: v_p = 1, v_{q_i} = e_i, nothing else, then lift preservation
    T = d.T()
    certified = 1
    cert_ok = True
    for sc in design_certificates(d):
        try:
            good = certify_split_valuation(T, sc.q, sc)
        except ValueError:
            good = False
        cert_ok &= good
        certified *= sc.q**sc.e
    cert_ok &= verify_design(d)["cond6_no_other_complete_system"].passed
    rep.add(
        "fixdiv_split_certificates_equal_c",
        cert_ok and certified == c,
        f"certified {certified}, c = {c}",
    )
    rep.add("image_primitive", fd != 0 and fd % c == 0 and fd // c == 1)

    try:
        inp = FactoredInput(a.parts, c)
    except ValueError as exc:
        rep.add("factor_input", False, str(exc))
        return rep
    bad = [(f, why) for f in a.factorizations if (why := check_factorization(inp, f))]
    rep.add("factorizations_valid", not bad, f"{bad[0][0].to_json()}: {bad[0][1]}" if bad else "")
    oracle = enumerate_factorizations_bruteforce(inp)
    stored = factorization_keys(a.factorizations, a.parts)
    rep.add(
        "factorizations_complete_vs_oracle",
        stored == factorization_keys(oracle, a.parts) and len(stored) == len(a.factorizations),
        f"stored {len(a.factorizations)}, oracle {len(oracle)}",
    )
    rep.add("count_equals_n", len(a.factorizations) == a.spec.n, f"{len(a.factorizations)} vs n={a.spec.n}")
    want = sorted(m + 1 for m in a.spec.ms)
    rep.add(
        "lengths",
        a.lengths == lengths_multiset(a.factorizations) == lengths_multiset(oracle) == want,
        f"stored {a.lengths}, expected {want}",
    )
    return rep


def _verify_degenerate(a: PrescribedLengthsArtifact, rep: Report) -> Report:
    m = a.spec.ms[0]
    x = ZPoly.x()
    rep.add("H_is_power_of_x", a.H == RationalPoly(x ** (m + 1)))
    rep.add("x_irreducible", fixed_divisor(x) == 1, "x is linear with fixed divisor 1")
    want = Factorization.of((1, (j,)) for j in range(m + 1))
    rep.add(
        "unique_factorization",
        a.parts == [x] * (m + 1) and a.factorizations == [want],
        "x^k factors only as x * ... * x",
    )
    rep.add("lengths", a.lengths == [m + 1], f"{a.lengths}")
    return rep


# -- unbounded lengths of x * (irreducible) ------------------------------------


@dataclass
class TransferArtifact:
    n: int
    primes: list[int]
    c_extra: list[tuple[int, int]]
    c: int
    N: int
    R: list[int]  # R[0] is r_0
    a: list[int]
    lift: LiftCertificate
    H: RationalPoly
    G: RationalPoly
    P2: list[int] = field(default_factory=list)

    @property
    def B(self) -> list[int]:
        return self.R[1:]

    @property
    def F(self) -> ZPoly:
        return self.lift.lifted[0]

    def to_json(self) -> dict:
        return {
            "kind": "transfer",
            "version": SCHEMA_VERSION,
            "n": self.n,
            "primes": self.primes,
            "c_extra": [[q, e] for q, e in self.c_extra],
            "c": self.c,
            "N": self.N,
            "R": self.R,
            "r0": self.R[0],
            "a": self.a,
            "P2": self.P2,
            "lift": self.lift.to_json(),
            "H": self.H.to_json(),
            "G": self.G.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> TransferArtifact:
        return cls(
            n=data["n"],
            primes=list(data["primes"]),
            c_extra=[(q, e) for q, e in data["c_extra"]],
            c=data["c"],
            N=data["N"],
            R=list(data["R"]),
            a=list(data["a"]),
            lift=LiftCertificate.from_json(data["lift"]),
            H=RationalPoly.from_json(data["H"]),
            G=RationalPoly.from_json(data["G"]),
            P2=list(data.get("P2", [])),
        )


def _first_odd_primes(n: int) -> list[int]:
    out, q = [], 3
    while len(out) < n:
        if is_prime(q):
            out.append(q)
        q += 2
    return out


def construct_transfer(
    n: int, primes: Sequence[int] | None = None, c_extra: Sequence[tuple[int, int]] = ()
) -> TransferArtifact:
    if n < 1:
        raise ValueError("n must be >= 1")
    ps = list(primes) if primes is not None else _first_odd_primes(n)
    if len(ps) != n or len(set(ps)) != n:
        raise ValueError(f"need {n} distinct primes, got {ps}")
    for q in ps:
        if q == 2:
            raise ValueError("none of the primes may be 2 (no maximal ideal of index 2)")
        if not is_prime(q):
            raise ValueError(f"{q} is not prime")
    extra = []
    for q, e in c_extra:
        if q == 2 or not is_prime(q) or q in ps or q in {x for x, _ in extra} or e < 1:
            raise ValueError(f"invalid extra factor {q}^{e}")
        extra.append((q, e))
    c = prod(ps) * prod(q**e for q, e in extra)
    N = max(ps + [e * q for q, e in extra])
    P1 = [q for q, _ in extra]
    P2 = [q for q in primes_up_to(N + n) if q not in ps and q not in P1]
    modulus = prod(ps) * prod(q * q for q in P1) * prod(P2)

    def solve(mod_p: dict[int, int], mod_q2: dict[int, int]) -> int:
        congs = [Congruence(mod_p[q], q) for q in ps]
        congs += [Congruence(mod_q2[q], q * q) for q in P1]
        congs += [Congruence(0, q) for q in P2]
        return crt_solve(congs)

    R: list[int] = []
    for t in range(N):
        # element t is ≡ t mod p_i when t < p_i, else ≡ 1; r_0 (t = 0) lies in every P_i
        mod_p = {q: (t if t < q else 1) for q in ps}
        mod_q2 = {q: (t % q if t < e * q else 1) for q, e in extra}
        x = solve(mod_p, mod_q2)
        while x in R:
            x += modulus
        R.append(x)

    a: list[int] = []
    for i, pi in enumerate(ps):
        mod_p = {q: (0 if q == pi else 1) for q in ps}
        mod_q2 = {q: (0 if i == n - 1 else 1) for q in P1}
        x = solve(mod_p, mod_q2)
        while x == 0 or x in a:
            x += modulus
        a.append(x)

    x = ZPoly.x()
    f = ZPoly.from_roots(R[1:])
    linears = [ZPoly.linear(ai) for ai in a]
    (F,), cert = lift([f], companions=[x] + linears)
    H = RationalPoly(F * poly_product(linears), c)
    G = RationalPoly(x * F, c)
    art = TransferArtifact(n, ps, extra, c, N, R, a, cert, H, G, P2)

    assert fixed_divisor(x * F) == c and fixed_divisor(F * poly_product(linears)) == c
    assert x * H == G * RationalPoly(poly_product(linears))
    return art


def xH_input(a: TransferArtifact) -> FactoredInput:
    """``x * H`` as parts ``[x, F, x - a_1, ..., x - a_n]`` over ``c``."""
    return FactoredInput([ZPoly.x(), a.F] + [ZPoly.linear(ai) for ai in a.a], a.c)


def verify_transfer(a: TransferArtifact) -> Report:
    rep = Report(f"transfer artifact n={a.n}")
    x = ZPoly.x()
    ps = a.primes
    rep.add(
        "parameters",
        len(ps) == a.n == len(a.a)
        and len(set(ps)) == a.n
        and all(q != 2 and is_prime(q) for q in ps)
        and a.c == prod(ps) * prod(q**e for q, e in a.c_extra),
        f"primes={ps} c={a.c}",
    )
    F = a.F
    linears = [ZPoly.linear(ai) for ai in a.a]
    rep.extend(verify_lift(a.lift), "lift.")
    rep.add(
        "lift_family",
        len(a.lift.originals) == 1
        and a.lift.originals[0] == ZPoly.from_roots(a.B)
        and a.lift.companions == [x] + linears,
        "lift must be of f = prod (x - b) with companions x, x - a_i",
    )
    lhs = RationalPoly(x) * a.H
    rhs = a.G * RationalPoly(poly_product(linears))
    rep.add("identity_xH_eq_G_prod_linears", lhs == rhs)
    rep.add("H_structure", a.H == RationalPoly(F * poly_product(linears), a.c))
    rep.add("G_structure", a.G == RationalPoly(x * F, a.c))

    d_g = fixed_divisor(x * F)
    d_h = fixed_divisor(F * poly_product(linears))
    rep.add("fixdiv_xF_equals_c", d_g == a.c, f"d(xF) = {d_g}")
    rep.add("fixdiv_F_linears_equals_c", d_h == a.c, f"d(F prod(x - a_i)) = {d_h}")
    rep.add("image_primitive", d_g == d_h == a.c and is_image_primitive(a.H) and is_image_primitive(a.G))
    rep.add(
        "linear_factors_irreducible",
        all(fixed_divisor(g) == 1 for g in [x] + linears) and len({0, *a.a}) == a.n + 1,
        "x and x - a_i are linear with fixed divisor 1 and pairwise distinct",
    )
    if not rep.ok:
        return rep

    g_inp = FactoredInput([x, F], a.c)
    gmap = indispensable_map(g_inp)
    P1 = [q for q, _ in a.c_extra]
    rep.add(
        "indispensable_structure",
        all(0 in gmap.lam(P) and 1 in gmap.lam(P) for P in ps)
        and all(1 in gmap.lam(Q) for Q in P1),
        "x indispensable for every p_i; F for every p_i and every extra prime",
    )
    g_facts = enumerate_factorizations(g_inp)
    rep.add("G_irreducible", lengths_set(g_facts) == [1] and len(g_facts) == 1)
    h_facts = enumerate_factorizations(FactoredInput([F] + linears, a.c))
    rep.add("H_irreducible", lengths_set(h_facts) == [1] and len(h_facts) == 1)

    xh = xH_input(a)
    lemma = enumerate_factorizations(xh)
    oracle = enumerate_factorizations_bruteforce(xh)
    rep.add(
        "xH_factorizations_match_oracle",
        factorization_keys(lemma, xh.parts) == factorization_keys(oracle, xh.parts),
        f"lemma {len(lemma)}, oracle {len(oracle)}",
    )
    want = sorted({2, a.n + 1})
    rep.add("xH_lengths", lengths_set(oracle) == want, f"{lengths_set(oracle)} vs {want}")
    return rep


# -- JSON dispatch -----------------------------------------------------------


def artifact_from_json(data: dict):
    kind = data.get("kind")
    if data.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported artifact version {data.get('version')!r}")
    if kind == "prescribed":
        return PrescribedLengthsArtifact.from_json(data)
    if kind == "transfer":
        return TransferArtifact.from_json(data)
    raise ValueError(f"unknown artifact kind {kind!r}")


def verify_artifact(art) -> Report:
    if isinstance(art, PrescribedLengthsArtifact):
        return verify_prescribed(art)
    return verify_transfer(art)


__all__ = [
    "PrescribedLengthsArtifact",
    "TransferArtifact",
    "artifact_from_json",
    "check_split_certificate",
    "construct_prescribed",
    "construct_transfer",
    "fixdiv_profile",
    "verify_artifact",
    "verify_prescribed",
    "verify_transfer",
    "xH_input",
]

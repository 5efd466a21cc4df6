import dataclasses
import itertools
from math import gcd
from functools import reduce

import pytest
from hypothesis import given, settings, strategies as st

from intfact.design import LengthSpec, build_design, choose_parameters, split_polys
from intfact.lift import (
    LiftCertificate,
    choose_aux_prime,
    fixdiv_profile,
    is_eisenstein,
    lift,
    verify_lift,
)
from intfact.poly import ZPoly, fixed_divisor, poly_product

x = ZPoly.x()
one = ZPoly.const(1)


def gcd_fixdiv(g):
    return reduce(gcd, (g(a) for a in range(-60, 61)), 0)


@pytest.mark.parametrize(
    "fs,want",
    [([x, x - one], {2: 1}), ([x], {}), ([x, x - one, x - ZPoly.const(2)], {2: 1, 3: 1})],
)
def test_fixdiv_profile(fs, want):
    assert fixdiv_profile(fs) == want


def test_fixdiv_profile_keeps_zero_exponents():
    assert fixdiv_profile([x * x + one]) == {2: 0}


@pytest.mark.parametrize("deg,excl,want", [(7, set(), 11), (1, {2}, 3), (10, {11}, 13)])
def test_choose_aux_prime(deg, excl, want):
    assert choose_aux_prime(deg, excl) == want


def test_lift_linear_pair():
    (F1, F2), cert = lift([x, x - one])
    assert F1.degree == F2.degree == 1 and F1.is_monic() and F2.is_monic()
    M = cert.modulus
    assert M == 4
    assert F1.coeffs[0] % M == 0 and (F2.coeffs[0] + 1) % M == 0
    assert verify_lift(cert).ok
    assert fixed_divisor(F1 * F2) == 2 == gcd_fixdiv(F1 * F2)


def test_lift_quadratic_is_eisenstein_and_congruent():
    (F,), cert = lift([x * x - x])
    Q, M = cert.aux_prime, cert.modulus
    assert M == 4  # d(x^2 - x) = 2, so M = 2^(1+1)
    assert all((a - b) % M == 0 for a, b in zip(F.coeffs, (0, -1, 1)))
    assert is_eisenstein(F, Q)
    assert F.coeffs[1] % Q == 0 and F.coeffs[0] % Q == 0 and F.coeffs[0] % (Q * Q) != 0


def test_lift_design_family_distinct_constants():
    spec = LengthSpec((1, 1))
    d = build_design(spec, choose_parameters(spec))
    fs = split_polys(d)
    lifted, cert = lift(fs)
    assert len({F.coeffs[0] for F in lifted}) == len(lifted)
    assert fixed_divisor(poly_product(lifted)) == fixed_divisor(poly_product(fs)) == d.c
    rep = verify_lift(cert)
    assert rep.ok, str(rep)


def test_lift_errors():
    with pytest.raises(ValueError, match="constant"):
        lift([ZPoly.const(3)])
    with pytest.raises(ValueError, match="monic"):
        lift([ZPoly((0, 2))])


def test_eisenstein_examples():
    assert is_eisenstein(ZPoly((2, 0, 1)), 2)
    assert not is_eisenstein(ZPoly((4, 0, 1)), 2)
    assert not is_eisenstein(ZPoly((2, 1, 1)), 2)
    assert not is_eisenstein(ZPoly(()), 2)


def test_empty_subset_product():
    assert fixed_divisor(poly_product([])) == 1


def test_certificate_json_round_trip():
    _, cert = lift([x, x - one], companions=[x - ZPoly.const(2)])
    back = LiftCertificate.from_json(cert.to_json())
    assert back == cert
    assert verify_lift(back).ok


def test_mutation_constant_plus_one():
    lifted, cert = lift([x * x - x, x - ZPoly.const(3)])
    F = lifted[0]
    bad = ZPoly((F.coeffs[0] + 1,) + F.coeffs[1:])
    mutated = dataclasses.replace(cert, lifted=[bad] + lifted[1:])
    failed = verify_lift(mutated).failed()
    assert "shape" in failed and "eisenstein" in failed


def test_mutation_consistent_offsets_still_caught():
    lifted, cert = lift([x * x - x, x - ZPoly.const(3)])
    F = lifted[0]
    bad = ZPoly((F.coeffs[0] + 1,) + F.coeffs[1:])
    offs = [list(o) for o in cert.offsets]
    offs[0][0] += 1
    mutated = dataclasses.replace(cert, lifted=[bad] + lifted[1:], offsets=offs)
    failed = verify_lift(mutated).failed()
    assert "offsets_mod_M" in failed and "eisenstein" in failed


def test_mutation_unlifted():
    fs = [x * x - x, x - ZPoly.const(3)]
    _, cert = lift(fs)
    mutated = dataclasses.replace(cert, lifted=list(fs), offsets=[[0] * f.degree for f in fs])
    assert "eisenstein" in verify_lift(mutated).failed()


def test_sampled_mixed_products_path():
    roots = [[i, i + 13] for i in range(13)]
    fs = [ZPoly.from_roots(r) for r in roots]
    _, cert = lift(fs)
    rep = verify_lift(cert, samples=200)
    assert rep.ok and "sampled" in rep["mixed_products"].detail


def brute_mixed(orig, lifted):
    n = len(orig)
    for states in itertools.product(range(3), repeat=n):
        mixed = poly_product([orig[i] if s == 1 else lifted[i] for i, s in enumerate(states) if s])
        plain = poly_product([orig[i] for i, s in enumerate(states) if s])
        if gcd_fixdiv(mixed) != gcd_fixdiv(plain):
            return False
    return True


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=1, max_size=2), min_size=1, max_size=4))
def test_lift_properties(groups):
    fs = [ZPoly.from_roots(g) for g in groups]
    lifted, cert = lift(fs)
    for f, F in zip(fs, lifted):
        assert F.is_monic() and F.degree == f.degree
        assert (F - f).degree < f.degree
        assert all(a % cert.modulus == 0 for a in (F - f).coeffs)
        assert is_eisenstein(F, cert.aux_prime)
    assert len(set(lifted)) == len(lifted)
    assert verify_lift(cert).ok
    assert brute_mixed(fs, lifted)

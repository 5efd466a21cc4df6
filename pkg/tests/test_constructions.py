import copy
import json

import pytest

from intfact.constructions import (
    PrescribedLengthsArtifact,
    TransferArtifact,
    artifact_from_json,
    construct_prescribed,
    construct_transfer,
    verify_artifact,
    verify_prescribed,
    verify_transfer,
)
from intfact.design import B_set, LengthSpec
from intfact.engine import FactoredInput, enumerate_factorizations_bruteforce, lengths_set
from intfact.poly import RationalPoly, ZPoly, fixed_divisor, poly_product


@pytest.fixture(scope="module")
def art11():
    return construct_prescribed(LengthSpec((1, 1)))


@pytest.fixture(scope="module")
def tr2():
    return construct_transfer(2)


def reload(art):
    return artifact_from_json(json.loads(json.dumps(art.to_json())))


def test_prescribed_11(art11):
    assert art11.H.degree == 7
    assert art11.lengths == [2, 2] and len(art11.factorizations) == 2
    assert art11.c == 5
    rep = verify_prescribed(art11)
    assert rep.ok, str(rep)


@pytest.mark.parametrize(
    "ms,deg,lengths",
    [((1, 2), 11, [2, 3]), ((1, 1, 2), 23, [2, 2, 3]), ((2, 2), None, [3, 3]), ((1, 3), None, [2, 4])],
)
def test_prescribed_specs(ms, deg, lengths):
    art = construct_prescribed(LengthSpec(ms))
    if deg is not None:
        assert art.H.degree == deg
    assert art.lengths == lengths
    assert len(art.factorizations) == len(ms)
    rep = verify_artifact(reload(art))
    assert rep.ok, str(rep)


def test_prescribed_degenerate():
    art = construct_prescribed(LengthSpec((1,)))
    assert art.H == RationalPoly(ZPoly((0, 0, 1)))
    assert art.lengths == [2]
    assert verify_artifact(reload(art)).ok
    art3 = construct_prescribed(LengthSpec((3,)))
    assert art3.lengths == [4] and verify_prescribed(art3).ok


def test_prescribed_composite_c():
    art = construct_prescribed(LengthSpec((1, 1)), c_extra=[(3, 2)])
    assert art.c == 45
    rep = verify_prescribed(art)
    assert rep.ok, str(rep)
    assert "fixdiv_split_certificates_equal_c" in [c.name for c in rep.checks]


def test_prescribed_prime_override():
    art = construct_prescribed(LengthSpec((1, 1)), prime=7)
    assert art.c == 7 and verify_prescribed(art).ok


def test_length_one_rejected():
    with pytest.raises(ValueError):
        construct_prescribed(LengthSpec((0, 1)))


def test_minimal_J_characterization(art11):
    # d(S * prod_J F) = c  iff  R is covered by B_J  iff  J contains some I \ I_h
    d = art11.design
    I = d.I
    parts = art11.parts
    allR = set(d.R.values())
    for mask in range(1 << len(I)):
        J = [I[t] for t in range(len(I)) if mask >> t & 1]
        fd = fixed_divisor(poly_product([parts[0]] + [parts[1 + t] for t in range(len(I)) if mask >> t & 1]))
        covered = set().union(*(B_set(d, *ix) for ix in J)) if J else set()
        by_rows = any(all(ix in J for ix in I if ix[0] != h) for h in range(1, len(d.ms) + 1))
        assert (fd == d.c) == (covered >= allR) == by_rows


def test_json_round_trip_is_stable(art11):
    data = art11.to_json()
    again = reload(art11).to_json()
    assert json.dumps(data, sort_keys=True) == json.dumps(again, sort_keys=True)
    assert data["kind"] == "prescribed" and data["version"] == 1


def test_artifact_from_json_errors(art11):
    data = art11.to_json()
    with pytest.raises(ValueError):
        artifact_from_json(dict(data, version=99))
    with pytest.raises(ValueError):
        artifact_from_json(dict(data, kind="other"))


def test_mutation_wrong_c(art11):
    data = copy.deepcopy(art11.to_json())
    data["H"]["den"] = art11.c * art11.design.p
    failed = verify_artifact(artifact_from_json(data)).failed()
    assert "fixdiv_gcd_equals_c" in failed


def test_mutation_deleted_factorization(art11):
    data = copy.deepcopy(art11.to_json())
    del data["factorizations"][0]
    failed = verify_artifact(artifact_from_json(data)).failed()
    assert "factorizations_complete_vs_oracle" in failed


def test_mutation_broken_cond2():
    art = construct_prescribed(LengthSpec((1, 1)), c_extra=[(3, 2)])
    data = copy.deepcopy(art.to_json())
    data["design"]["S"][art.design.tau] += 9
    failed = verify_artifact(artifact_from_json(data)).failed()
    assert "design.cond2_tail_zero_mod_p" in failed


def test_mutation_altered_lift_constant(art11):
    data = copy.deepcopy(art11.to_json())
    data["lift"]["lifted"][1][0] += 1
    failed = verify_artifact(artifact_from_json(data)).failed()
    assert "lift.eisenstein" in failed


@pytest.mark.parametrize("n,c,lengths,deg", [(1, 3, [2], 3), (2, 15, [2, 3], 6), (3, 105, [2, 4], None)])
def test_transfer(n, c, lengths, deg):
    art = construct_transfer(n)
    assert art.c == c
    assert len(art.B) == art.N - 1
    if deg is not None:
        assert art.H.degree == deg
    rep = verify_transfer(reload(art))
    assert rep.ok, str(rep)
    xh = FactoredInput([ZPoly.x(), art.F] + [ZPoly.linear(a) for a in art.a], art.c)
    assert lengths_set(enumerate_factorizations_bruteforce(xh)) == lengths


def test_transfer_n1_shape():
    art = construct_transfer(1)
    assert art.primes == [3] and art.N == 3 and len(art.B) == 2
    assert all(a != 0 for a in art.a)


def test_transfer_identity(tr2):
    x = RationalPoly(ZPoly.x())
    rhs = tr2.G * RationalPoly(poly_product(ZPoly.linear(a) for a in tr2.a))
    assert x * tr2.H == rhs


def test_transfer_options():
    assert verify_transfer(construct_transfer(2, primes=[5, 7], c_extra=[(3, 2)])).ok
    assert verify_transfer(construct_transfer(1, c_extra=[(7, 1)])).ok


@pytest.mark.parametrize("kwargs", [{"n": 0}, {"n": 1, "primes": [2]}, {"n": 2, "primes": [3, 3]}, {"n": 1, "primes": [9]}, {"n": 1, "c_extra": [(3, 1)]}])
def test_transfer_errors(kwargs):
    with pytest.raises(ValueError):
        construct_transfer(**kwargs)


def test_mutation_perturbed_a1(tr2):
    data = copy.deepcopy(tr2.to_json())
    data["a"][0] += 1
    failed = verify_artifact(artifact_from_json(data)).failed()
    assert "identity_xH_eq_G_prod_linears" in failed


def test_mutation_unlifted_F(tr2):
    data = copy.deepcopy(tr2.to_json())
    f = data["lift"]["originals"][0]
    data["lift"]["lifted"][0] = f
    data["lift"]["offsets"][0] = [0] * (len(f) - 1)
    x = ZPoly.x()
    fz = ZPoly(f)
    lin = poly_product(ZPoly.linear(a) for a in tr2.a)
    data["H"] = RationalPoly(fz * lin, tr2.c).to_json()
    data["G"] = RationalPoly(x * fz, tr2.c).to_json()
    failed = verify_artifact(artifact_from_json(data)).failed()
    assert "lift.eisenstein" in failed


def test_transfer_lengths_grow():
    # x times an irreducible has a factorization of length n + 1 for every n tried
    for n in (1, 2, 3):
        rep = verify_transfer(construct_transfer(n))
        assert rep["xH_lengths"].passed
        assert rep["xH_lengths"].detail.startswith(str(sorted({2, n + 1})))

"""Integer-valued polynomials over ZZ with prescribed sets of factorization lengths."""

from intfact.constructions import (
    PrescribedLengthsArtifact,
    TransferArtifact,
    construct_prescribed,
    construct_transfer,
    verify_prescribed,
    verify_transfer,
)
from intfact.design import LengthSpec
from intfact.engine import FactoredInput, enumerate_factorizations, enumerate_factorizations_bruteforce
from intfact.poly import RationalPoly, ZPoly, fixed_divisor, is_int_valued, parse_poly

__version__ = "0.1.0"

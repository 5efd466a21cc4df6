"""Integer polynomials, polynomials ``g/b`` over Q, and fixed divisors.

A :class:`ZPoly` stores its integer coefficients in ascending degree with
no trailing zeros, so ``ZPoly((0, -1, 1))`` is ``x^2 - x``.  A
:class:`RationalPoly` is ``num/den`` with ``den >= 1`` and
``gcd(content(num), den) == 1``.

Text format (CLI and JSON): ``"[0,-1,1]/2"`` is ``(x^2 - x)/2``; the
denominator is omitted when it equals 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class ZPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def x(cls) -> ZPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> ZPoly:
        return cls((c,))

    @classmethod
    def linear(cls, root: int) -> ZPoly:
        """``x - root``."""
        return cls((-root, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> ZPoly:
        return poly_product(cls.linear(r) for r in roots)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def __call__(self, a: int) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * a + c
        return v

    def __add__(self, other: ZPoly) -> ZPoly:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return ZPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> ZPoly:
        return ZPoly(-c for c in self.coeffs)

    def __sub__(self, other: ZPoly) -> ZPoly:
        return self + (-other)

    def __mul__(self, other: ZPoly | int) -> ZPoly:
        if isinstance(other, int):
            return ZPoly(c * other for c in self.coeffs)
        if not isinstance(other, ZPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return ZPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> ZPoly:
        return poly_product([self] * k)

    def __str__(self) -> str:
        return format_coeffs(self.coeffs)

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> ZPoly:
        return cls(tuple(int(c) for c in data))


def poly_product(fs: Iterable[ZPoly]) -> ZPoly:
    """Exact product; the empty product is 1."""
    out = ZPoly.const(1)
    for f in fs:
        out = out * f
    return out


def _require_nonzero(g: ZPoly) -> None:
    if g.is_zero():
        raise ValueError("fixed divisor of the zero polynomial is not defined")


def fixed_divisor(g: ZPoly) -> int:
    """Positive generator of the ideal of ZZ spanned by all values ``g(a)``.

    Any ``deg(g) + 1`` consecutive values generate this ideal, since the
    finite differences at 0 are integer combinations of ``g(0..deg)`` and
    conversely every value is an integer combination of them.
    """
    _require_nonzero(g)
    return reduce(gcd, (g(a) for a in range(g.degree + 1)), 0)


def fixed_divisor_bruteforce(g: ZPoly, limit: int) -> int:
    """gcd of ``g(a)`` for ``a`` in ``[0, limit]``; an independent check of :func:`fixed_divisor`."""
    _require_nonzero(g)
    if limit < g.degree + 1:
        raise ValueError(f"limit {limit} must be at least deg(g) + 1 = {g.degree + 1}")
    return reduce(gcd, (g(a) for a in range(limit + 1)), 0)


@dataclass(frozen=True)
class RationalPoly:
    """``num/den``, reduced at construction so equality is structural."""

    num: ZPoly
    den: int = 1

    def __post_init__(self):
        num, den = self.num, int(self.den)
        if not isinstance(num, ZPoly):
            num = ZPoly(num)
        if den == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        g = gcd(num.content(), den)
        if num.is_zero():
            g = den
        if g > 1:
            num = ZPoly(c // g for c in num.coeffs)
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def degree(self) -> int:
        return self.num.degree

    def __call__(self, a: int) -> Fraction:
        return Fraction(self.num(a), self.den)

    def __mul__(self, other: RationalPoly | ZPoly) -> RationalPoly:
        if isinstance(other, ZPoly):
            other = RationalPoly(other)
        return RationalPoly(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return to_text(self)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den}

    @classmethod
    def from_json(cls, data: dict) -> RationalPoly:
        return cls(ZPoly.from_json(data["num"]), int(data.get("den", 1)))


def eval_at(f: RationalPoly, a: int) -> Fraction:
    return f(a)


def is_int_valued(f: RationalPoly) -> bool:
    """Membership in Int(ZZ): ``den`` divides the fixed divisor of ``num``."""
    if f.num.is_zero():
        return True
    return fixed_divisor(f.num) % f.den == 0


def image_fixed_divisor(f: RationalPoly) -> int:
    """gcd of the (integer) values of an integer-valued ``f``."""
    if not is_int_valued(f):
        raise ValueError(f"{to_text(f)} is not integer-valued")
    return fixed_divisor(f.num) // f.den


def is_image_primitive(f: RationalPoly) -> bool:
    return image_fixed_divisor(f) == 1


# -- text format ---------------------------------------------------------

_TEXT_RE = re.compile(r"^\s*\[([^\]]*)\]\s*(?:/\s*([+-]?\d+))?\s*$")


def format_coeffs(coeffs: Sequence[int]) -> str:
    return "[" + ",".join(str(c) for c in coeffs) + "]"


def to_text(f: RationalPoly | ZPoly) -> str:
    if isinstance(f, ZPoly):
        return format_coeffs(f.coeffs or (0,))
    body = format_coeffs(f.num.coeffs or (0,))
    return body if f.den == 1 else f"{body}/{f.den}"


def parse_poly(text: str) -> RationalPoly:
    """Parse ``"[c0,c1,...]"`` or ``"[c0,c1,...]/b"``."""
    m = _TEXT_RE.match(text)
    if not m:
        raise ValueError(f"bad polynomial text {text!r}; expected e.g. '[0,-1,1]/2'")
    body, den = m.groups()
    try:
        coeffs = [int(tok) for tok in body.split(",")] if body.strip() else []
    except ValueError:
        raise ValueError(f"bad coefficient in {text!r}") from None
    if den is not None and int(den) == 0:
        raise ValueError("denominator must be nonzero")
    return RationalPoly(ZPoly(coeffs), int(den) if den is not None else 1)

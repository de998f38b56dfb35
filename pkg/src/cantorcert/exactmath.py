"""Exact scalars, integer polynomials in lambda, and bisection root isolation.

Every scalar in the package is a :class:`fractions.Fraction`.  Endpoints of
basic intervals and every threshold condition are :class:`LambdaPoly`
objects: polynomials with integer coefficients in the contraction ratio.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence, Union

Scalar = Union[int, Fraction]


class InvalidBracket(ValueError):
    """Raised when a bracket does not carry a strict sign change."""


def to_rational(value) -> Fraction:
    """Parse ``value`` as an exact fraction.

    Accepts ints, Fractions, and strings such as ``"47/100"``, ``"0.4302"``
    or ``"1e-6"``.  Floats are rejected on purpose: thresholds sit within
    1e-4 of the values being checked and binary rounding is not acceptable.

    >>> to_rational("0.4302")
    Fraction(2151, 5000)
    """
    if isinstance(value, float):
        raise TypeError("binary floats are not accepted; pass a string or Fraction")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_fraction(x: Fraction) -> str:
    """``"p/q"`` form used in every serialized report (``"3"`` stays ``"3/1"``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, x: Fraction) -> "Sign":
        return cls((x > 0) - (x < 0))


@dataclass(frozen=True)
class LambdaPoly:
    """Integer-coefficient polynomial, coefficients in ascending degree."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        cs = [int(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c: int) -> "LambdaPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "LambdaPoly":
        return cls((0,) * degree + (c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Scalar) -> Fraction:
        return poly_eval(self, x)

    def _coerce(self, other) -> "LambdaPoly":
        if isinstance(other, LambdaPoly):
            return other
        if isinstance(other, int):
            return LambdaPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return LambdaPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return LambdaPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return LambdaPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LambdaPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = LambdaPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                var = "λ" if d == 1 else f"λ^{d}"
                body = var if mag == 1 else f"{mag}{var}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


LAM = LambdaPoly((0, 1))
ONE = LambdaPoly((1,))


def poly_eval(p: LambdaPoly, x: Scalar) -> Fraction:
    """Exact Horner evaluation."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def sign_at(p: LambdaPoly, x: Scalar) -> Sign:
    return Sign.of(poly_eval(p, x))


@dataclass(frozen=True)
class RootBracket:
    """Closed rational bracket ``[lo, hi]`` around a root.

    ``lo == hi`` only when bisection landed exactly on a rational root.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise InvalidBracket(f"lo={self.lo} exceeds hi={self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Scalar) -> bool:
        return self.lo <= x <= self.hi

    def strictly_below(self, other: "RootBracket") -> bool:
        return self.hi < other.lo

    def to_dict(self) -> dict:
        return {"lo": format_fraction(self.lo), "hi": format_fraction(self.hi)}


def isolate_root(p: LambdaPoly, bracket: RootBracket, width: Scalar) -> RootBracket:
    """Halve ``bracket`` until it is no wider than ``width``.

    The polynomial must take nonzero values of opposite sign at the two ends.
    Each step keeps the half whose ends still disagree in sign, so every
    returned bracket is a dyadic refinement of the input.
    """
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    lo, hi = bracket.lo, bracket.hi
    s_lo, s_hi = sign_at(p, lo), sign_at(p, hi)
    if s_lo == Sign.ZERO or s_hi == Sign.ZERO or s_lo == s_hi:
        raise InvalidBracket(
            f"{p} has signs {s_lo.name}/{s_hi.name} at [{lo}, {hi}]; need a strict sign change"
        )
    while hi - lo > width:
        mid = (lo + hi) / 2
        s_mid = sign_at(p, mid)
        if s_mid == Sign.ZERO:
            return RootBracket(mid, mid)
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return RootBracket(lo, hi)


def refine_until_disjoint(
    items: Sequence[tuple[LambdaPoly, RootBracket]], width: Scalar = Fraction(1, 10**6)
) -> list[RootBracket]:
    """Isolate each root, halving the width until consecutive brackets are disjoint.

    Gives up after the width drops below 1e-60; roots that close are treated
    as coincident and the overlapping brackets are returned as they are.
    """
    width = Fraction(width)
    floor = Fraction(1, 10**60)
    while True:
        out = [isolate_root(p, b, width) for p, b in items]
        if all(a.hi < b.lo or b.hi < a.lo for a, b in zip(out, out[1:])) or width < floor:
            return out
        width /= 1024



class Interval(NamedTuple):
    """Closed rational interval ``[lo, hi]``."""

    lo: Fraction
    hi: Fraction

    @classmethod
    def of(cls, lo: Scalar, hi: Scalar) -> "Interval":
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        return cls(lo, hi)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def scaled(self, c: Scalar) -> "Interval":
        """Endpointwise product with a nonnegative constant."""
        return Interval(self.lo * c, self.hi * c)

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def interior_contains(self, x: Scalar) -> bool:
        return self.lo < x < self.hi

    def to_pair(self) -> list[str]:
        return [format_fraction(self.lo), format_fraction(self.hi)]


class OpenInterval(NamedTuple):
    """Open rational interval ``(lo, hi)``; empty when ``lo >= hi``."""

    lo: Fraction
    hi: Fraction

    @property
    def is_empty(self) -> bool:
        return self.lo >= self.hi

    def contains(self, x: Scalar) -> bool:
        return self.lo < x < self.hi

    def to_pair(self) -> list[str]:
        return [format_fraction(self.lo), format_fraction(self.hi)]


_RELATIONS = {
    "<": lambda x, y: x < y,
    "<=": lambda x, y: x <= y,
    ">": lambda x, y: x > y,
    ">=": lambda x, y: x >= y,
}


@dataclass(frozen=True)
class Comparison:
    """One exact inequality ``lhs relation rhs`` with a human-readable label."""

    label: str
    lhs: Fraction
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "lhs", Fraction(self.lhs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @property
    def holds(self) -> bool:
        return _RELATIONS[self.relation](self.lhs, self.rhs)

    @property
    def strict(self) -> bool:
        return self.relation in ("<", ">")

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "lhs": format_fraction(self.lhs),
            "rhs": format_fraction(self.rhs),
            "relation": self.relation,
            "holds": self.holds,
        }


def sign_check(label: str, p: LambdaPoly, x: Scalar, relation: str) -> Comparison:
    """Comparison of ``p(x)`` against zero, decided by exact evaluation."""
    return Comparison(label, poly_eval(p, x), relation, Fraction(0))

"""Images of interval pairs under ``x*y`` and ``x**k * y``.

Both maps are increasing in each coordinate on ``[0, inf)``, so the image of
a box is the interval between the images of its lower-left and upper-right
corners.  Refining each side of a pair of rank-``n`` basic intervals into
its two children gives four sub-boxes; the functions here compute their
images exactly and test the overlap conditions that make the four images
cover the parent image.

Predicates come in two layers: ``*_checks`` functions return the individual
:class:`~cantorcert.exactmath.Comparison` objects (these feed the
certificates), and the plain boolean functions reduce them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .cantor import BasicInterval, check_lambda
from .exactmath import (
    LAM,
    Comparison,
    Interval,
    LambdaPoly,
    OpenInterval,
    Scalar,
    sign_check,
)

# lam**2 - 3*lam + 1 <= 0  <=>  lam >= (3 - sqrt 5)/2  on (0, 1/2)
GOLDEN_POLY = LAM**2 - 3 * LAM + 1


class NegativeInput(ValueError):
    pass


class RankMismatch(ValueError):
    pass


class OrderViolation(ValueError):
    pass


def _nonneg(*intervals: Interval) -> None:
    for iv in intervals:
        if iv.lo < 0:
            raise NegativeInput(f"interval {iv} leaves [0, inf)")


def image_f(I: Interval, J: Interval) -> Interval:
    _nonneg(I, J)
    return Interval(I.lo * J.lo, I.hi * J.hi)


def image_fk(k: int, I: Interval, J: Interval) -> Interval:
    if k < 1:
        raise ValueError("k must be at least 1")
    _nonneg(I, J)
    return Interval(I.lo**k * J.lo, I.hi**k * J.hi)


@dataclass(frozen=True)
class PairDecomposition:
    """The four child-pair images, in the order (left,left), (left,right), (right,left), (right,right).

    When ``a <= b`` this is also left-endpoint order for ``k = 1``.
    """

    parts: tuple[Interval, Interval, Interval, Interval]

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i: int) -> Interval:
        return self.parts[i]

    def to_list(self) -> list[list[str]]:
        return [iv.to_pair() for iv in self.parts]


def _same_rank(I: BasicInterval, J: BasicInterval) -> int:
    if I.rank != J.rank:
        raise RankMismatch(f"ranks differ: {I.rank} vs {J.rank}")
    return I.rank


def _endpoints(I: BasicInterval, J: BasicInterval, lam: Fraction) -> tuple[Fraction, Fraction]:
    return I.interval(lam).lo, J.interval(lam).lo


def decompose_fk_values(k: int, a: Scalar, b: Scalar, n: int, lam: Scalar) -> PairDecomposition:
    """Four child images for ``I = [a, a + lam**n]``, ``J = [b, b + lam**n]``."""
    a, b, lam = Fraction(a), Fraction(b), Fraction(lam)
    h, h1 = lam**n, lam ** (n + 1)
    a_r, b_r = a + h - h1, b + h - h1  # left ends of the right children
    return PairDecomposition((
        Interval(a**k * b, (a + h1) ** k * (b + h1)),
        Interval(a**k * b_r, (a + h1) ** k * (b + h)),
        Interval(a_r**k * b, (a + h) ** k * (b + h1)),
        Interval(a_r**k * b_r, (a + h) ** k * (b + h)),
    ))


def decompose_f(I: BasicInterval, J: BasicInterval, lam: Scalar) -> PairDecomposition:
    n = _same_rank(I, J)
    lam = check_lambda(lam)
    a, b = _endpoints(I, J, lam)
    return decompose_fk_values(1, a, b, n, lam)


def decompose_fk(k: int, I: BasicInterval, J: BasicInterval, lam: Scalar) -> PairDecomposition:
    if k < 1:
        raise ValueError("k must be at least 1")
    n = _same_rank(I, J)
    lam = check_lambda(lam)
    a, b = _endpoints(I, J, lam)
    return decompose_fk_values(k, a, b, n, lam)


def check_cover(dec: PairDecomposition) -> bool:
    """Adjacent parts overlap or touch: ``r1 >= l2``, ``r2 >= l3``, ``r3 >= l4``."""
    p = dec.parts
    return all(p[i].hi >= p[i + 1].lo for i in range(3))


def check_double_cover(dec: PairDecomposition) -> bool:
    """``l3 < r1`` and ``l4 < r2``, both strict."""
    p = dec.parts
    return p[2].lo < p[0].hi and p[3].lo < p[1].hi


def double_cover_window(n: int, a: Scalar, b: Scalar, lam: Scalar) -> OpenInterval:
    a, b, lam = Fraction(a), Fraction(b), Fraction(lam)
    if a > b:
        raise OrderViolation(f"a={a} exceeds b={b}")
    h = lam**n
    return OpenInterval(a * b + a * (1 - lam) * h, (a + h) * (b + lam * h))


# ---------------------------------------------------------------------------
# conditions on a pair I = [a, a + lam^n], J = [b, b + lam^n]


def range_checks(lam: Scalar, *, strict_golden: bool = False) -> list[Comparison]:
    """``(3 - sqrt 5)/2 <= lam < 1/2`` decided by signs of integer polynomials."""
    lam = Fraction(lam)
    rel = "<" if strict_golden else "<="
    return [
        sign_check(f"(3-√5)/2 {rel} λ  [λ²-3λ+1 {rel} 0]", GOLDEN_POLY, lam, rel),
        sign_check("λ < 1/2  [2λ-1 < 0]", 2 * LAM - 1, lam, "<"),
    ]


def cond_2_2_checks(a: Scalar, b: Scalar, n: int, lam: Scalar, tag: str = "(2.2)") -> list[Comparison]:
    """``(1-λ-λ²)(a+λⁿ)/λ <= b < b+λⁿ <= aλ/(1-2λ)`` as three comparisons."""
    a, b, lam = Fraction(a), Fraction(b), Fraction(lam)
    if a > b:
        raise OrderViolation(f"a={a} exceeds b={b}")
    h = lam**n
    return [
        Comparison(f"{tag} left: (1-λ-λ²)(a+λⁿ)/λ <= b", (1 - lam - lam**2) * (a + h) / lam, "<=", b),
        Comparison(f"{tag} middle: b < b+λⁿ", b, "<", b + h),
        Comparison(f"{tag} right: b+λⁿ <= aλ/(1-2λ)", b + h, "<=", a * lam / (1 - 2 * lam)),
    ]


def _pair_values(I: BasicInterval, J: BasicInterval, lam: Scalar) -> tuple[Fraction, Fraction, int, Fraction]:
    n = _same_rank(I, J)
    lam = check_lambda(lam)
    a, b = _endpoints(I, J, lam)
    return a, b, n, lam


def cond_2_2(I: BasicInterval, J: BasicInterval, lam: Scalar) -> bool:
    return all(c.holds for c in cond_2_2_checks(*_pair_values(I, J, lam)))


def cond_4_1(I: BasicInterval, J: BasicInterval, lam: Scalar) -> bool:
    return all(c.holds for c in cond_2_2_checks(*_pair_values(I, J, lam), tag="(4.1)"))


def cond_3_6_checks(
    k: int, a: Scalar, b: Scalar, n: int, lam: Scalar, *, strengthened: bool = True
) -> list[Comparison]:
    """``(1-2λ)(a+kλⁿ)/(kλ) <= b < b+λⁿ <= a/(k(1-2λ))``.

    With ``strengthened=False`` the upper bound is applied to ``b`` instead
    of ``b + λⁿ``, which is the weaker pair of inequalities used for a
    single refinement step.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    a, b, lam = Fraction(a), Fraction(b), Fraction(lam)
    h = lam**n
    lower = (1 - 2 * lam) * (a + k * h) / (k * lam)
    upper = a / (k * (1 - 2 * lam))
    if not strengthened:
        return [
            Comparison("(3.1) left: (1-2λ)(a+kλⁿ)/(kλ) <= b", lower, "<=", b),
            Comparison("(3.1) right: b <= a/(k(1-2λ))", b, "<=", upper),
        ]
    return [
        Comparison("(3.6) left: (1-2λ)(a+kλⁿ)/(kλ) <= b", lower, "<=", b),
        Comparison("(3.6) middle: b < b+λⁿ", b, "<", b + h),
        Comparison("(3.6) right: b+λⁿ <= a/(k(1-2λ))", b + h, "<=", upper),
    ]


def cond_3_6(k: int, I: BasicInterval, J: BasicInterval, lam: Scalar, *, strengthened: bool = True) -> bool:
    a, b, n, lam = _pair_values(I, J, lam)
    return all(c.holds for c in cond_3_6_checks(k, a, b, n, lam, strengthened=strengthened))


def cond_3_1(k: int, I: BasicInterval, J: BasicInterval, lam: Scalar) -> bool:
    return cond_3_6(k, I, J, lam, strengthened=False)


def check_ineq_3_2(k: int, n: int, a: Scalar, b: Scalar, lam: Scalar) -> bool:
    """Binomial-sum inequality, evaluated term by term.

    ``sum_{i=2..k} c_i (1-2λ) b < sum_{i=1..k-1} c_i λ^(n+i)`` with
    ``c_i = C(k, i) a^(k-i) λ^(n i)``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    a, b, lam = Fraction(a), Fraction(b), Fraction(lam)
    c = {i: comb(k, i) * a ** (k - i) * lam ** (n * i) for i in range(1, k + 1)}
    lhs = sum((c[i] * (1 - 2 * lam) * b for i in range(2, k + 1)), Fraction(0))
    rhs = sum((c[i] * lam ** (n + i) for i in range(1, k)), Fraction(0))
    return lhs < rhs


def lambda_k_poly(k: int) -> LambdaPoly:
    """``(k-1)λ^k + (2k+2)λ - (k+1)``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return (k - 1) * LAM**k + (2 * k + 2) * LAM - (k + 1)


# ---------------------------------------------------------------------------
# lemma hypotheses as comparison lists


def lemma_2_2_hypotheses(I: BasicInterval, J: BasicInterval, lam: Scalar) -> list[Comparison]:
    a, b, n, lam = _pair_values(I, J, lam)
    return range_checks(lam) + [
        Comparison("a <= b", a, "<=", b),
        Comparison("b <= (a+λⁿ⁺¹)/(1-2λ)", b, "<=", (a + lam ** (n + 1)) / (1 - 2 * lam)),
    ]


def lemma_2_3_hypotheses(I: BasicInterval, J: BasicInterval, lam: Scalar) -> list[Comparison]:
    a, b, n, lam = _pair_values(I, J, lam)
    return range_checks(lam, strict_golden=True) + [
        Comparison("a <= b", a, "<=", b),
        Comparison("(2.1): b <= aλ/(1-2λ)", b, "<=", a * lam / (1 - 2 * lam)),
    ]


def lemma_3_1_hypotheses(k: int, I: BasicInterval, J: BasicInterval, lam: Scalar) -> list[Comparison]:
    a, b, n, lam = _pair_values(I, J, lam)
    return [
        sign_check(f"λ >= λ_{k}  [(k-1)λ^k+(2k+2)λ-(k+1) >= 0]", lambda_k_poly(k), lam, ">="),
        sign_check("λ < 1/2  [2λ-1 < 0]", 2 * LAM - 1, lam, "<"),
    ] + cond_3_6_checks(k, a, b, n, lam, strengthened=False)


def all_hold(checks: Sequence[Comparison]) -> bool:
    return all(c.holds for c in checks)

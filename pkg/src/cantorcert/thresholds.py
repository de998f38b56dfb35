"""Critical values of lambda.

Every threshold is the boundary root of an integer polynomial ``p`` for a
condition rewritten as ``p(lam) >= 0`` (or ``> 0``).  The polynomials here
are written out from the printed endpoint expressions (``1 - lam**3``,
``1 - lam + lam**2`` and so on), independently of the address arithmetic
in :mod:`cantorcert.cantor`; the certificates in :mod:`cantorcert.coverage`
evaluate the same conditions from addresses, and the tests tie the two
routes together.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .exactmath import (
    LAM,
    Comparison,
    LambdaPoly,
    RootBracket,
    Scalar,
    Sign,
    isolate_root,
    poly_eval,
    refine_until_disjoint,
    sign_at,
    sign_check,
)
from .images import lambda_k_poly

DEFAULT_WIDTH = Fraction(1, 10**6)
HALF = Fraction(1, 2)
SEARCH = RootBracket(Fraction(1, 4), HALF)


class UnknownId(KeyError):
    pass


TAGS = (
    "lambda_k",
    "r_k",
    "table1_row",
    "stepII_cond",
    "chain_ineq",
    "circle_cond",
    "circle_overlap",
    "theorem_constant",
)


@dataclass(frozen=True)
class ThresholdId:
    tag: str
    index: Optional[int] = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise UnknownId(self.tag)

    @classmethod
    def parse(cls, text: str) -> "ThresholdId":
        m = re.fullmatch(r"\s*(\w+?)\s*(?:\(\s*(\d+)\s*\))?\s*", text)
        if not m or m.group(1) not in TAGS:
            raise UnknownId(text)
        return cls(m.group(1), int(m.group(2)) if m.group(2) else None)

    def __str__(self) -> str:
        return self.tag if self.index is None else f"{self.tag}({self.index})"


@dataclass(frozen=True)
class ThresholdEntry:
    """A named condition and the polynomial whose root is its boundary.

    ``poly`` is positive exactly on the side where the condition holds
    (within ``search``).  ``others`` carries the non-binding companion
    inequalities of two-sided conditions, for the record.
    """

    id: ThresholdId
    label: str
    poly: LambdaPoly
    search: RootBracket
    printed_value: Optional[Fraction]
    others: tuple[LambdaPoly, ...] = field(default=())

    def bracket(self, width: Scalar = DEFAULT_WIDTH) -> RootBracket:
        return _isolate_cached(self.poly, self.search, Fraction(width))

    def delta(self, width: Scalar = DEFAULT_WIDTH) -> Optional[Fraction]:
        if self.printed_value is None:
            return None
        return abs(self.bracket(width).midpoint - self.printed_value)


@lru_cache(maxsize=4096)
def _isolate_cached(p: LambdaPoly, search: RootBracket, width: Fraction) -> RootBracket:
    return isolate_root(p, search, width)


def _d(text: str) -> Fraction:
    return Fraction(text)


# endpoint expressions as printed
_1_l = 1 - LAM
_1_l2 = 1 - LAM**2
_1_l3 = 1 - LAM**3
_1_l_l2 = 1 - LAM + LAM**2
_1_l2_l3 = 1 - LAM**2 + LAM**3
_1_l_l2_l3 = 1 - LAM + LAM**2 - LAM**3
_1_l_l3 = 1 - LAM + LAM**3
_l_l2 = LAM - LAM**2


def pair_condition_polys(a: LambdaPoly, b: LambdaPoly, n: int) -> tuple[LambdaPoly, LambdaPoly]:
    """Both sides of ``(1-λ-λ²)(a+λⁿ)/λ <= b`` and ``b+λⁿ <= aλ/(1-2λ)``, cleared of denominators.

    Multiplying through by the positive ``λ`` and ``1 - 2λ`` gives
    ``bλ - (1-λ-λ²)(a+λⁿ) >= 0`` and ``aλ - (1-2λ)(b+λⁿ) >= 0``.
    """
    h = LAM**n
    left = b * LAM - (1 - LAM - LAM**2) * (a + h)
    right = a * LAM - (1 - 2 * LAM) * (b + h)
    return left, right


def _has_boundary(p: LambdaPoly, search: RootBracket) -> bool:
    return sign_at(p, search.lo) == Sign.NEGATIVE and sign_at(p, search.hi) == Sign.POSITIVE


def _binding(polys: tuple[LambdaPoly, LambdaPoly], search: RootBracket) -> tuple[LambdaPoly, tuple[LambdaPoly, ...]]:
    """Pick the inequality whose boundary root is larger; the other never binds."""
    live = [p for p in polys if _has_boundary(p, search)]
    if not live:
        raise ValueError("no boundary root in search bracket")
    brackets = refine_until_disjoint([(p, search) for p in live])
    best = max(range(len(live)), key=lambda i: brackets[i].lo)
    return live[best], tuple(p for p in polys if p is not live[best])


# (label, a, b, rank, printed value)
_STEP_II_PAIRS = [
    ("I=J=[1-λ³,1]", _1_l3, _1_l3, 3, ("0.4258", "0.3377")),
    ("I=[1-λ²,1-λ²+λ³], J=[1-λ³,1]", _1_l2, _1_l3, 3, ("0.4094", "0.3474")),
]

_TABLE_1 = [
    ("I=J=[1-λ²,1-λ²+λ³]", _1_l2, _1_l2, 3, "0.4274"),
    ("I=[1-λ+λ²-λ³,1-λ+λ²], J=[1-λ²,1-λ²+λ³]", _1_l_l2_l3, _1_l2, 3, "0.3993"),
    ("I=J=[1-λ+λ²-λ³,1-λ+λ²]", _1_l_l2_l3, _1_l_l2_l3, 3, "0.4302"),
    ("I=[1-λ,1-λ+λ³], J=[1-λ+λ²-λ³,1-λ+λ²]", _1_l, _1_l_l2_l3, 3, "0.4076"),
]

# (label, lhs, rhs, printed value): lhs > rhs
_CHAIN = [
    ("1-λ²+λ³ > (1-λ³)²", _1_l2_l3, _1_l3**2, "0.3377"),
    ("(1-λ²+λ³)² > (1-λ²)(1-λ³)", _1_l2_l3**2, _1_l2 * _1_l3, "0.3290"),
    ("(1-λ+λ²)(1-λ²+λ³) > (1-λ²)²", _1_l_l2 * _1_l2_l3, _1_l2**2, "0.4198"),
    ("(1-λ+λ²)² > (1-λ+λ²-λ³)(1-λ²)", _1_l_l2**2, _1_l_l2_l3 * _1_l2, "0.4084"),
    ("(1-λ+λ³)(1-λ+λ²) > (1-λ+λ²-λ³)²", _1_l_l3 * _1_l_l2, _1_l_l2_l3**2, "0.3391"),
]

_CIRCLE_PAIRS = [
    ("I=J=[1-λ²,1]", _1_l2, _1_l2, 2, "0.446"),
    ("I=[1-λ,1-λ+λ²], J=[1-λ²,1]", _1_l, _1_l2, 2, "0.400"),
    ("I=J=[1-λ,1-λ+λ²]", _1_l, _1_l, 2, "0.459"),
    ("I=[λ-λ²,λ], J=[1-λ,1-λ+λ²]", _l_l2, _1_l, 2, "0.431"),
]

_CIRCLE_OVERLAPS = [
    ("(1-λ+λ²)²+1 > 2(1-λ²)²", _1_l_l2**2 + 1, 2 * _1_l2**2, "0.320"),
    ("2(1-λ+λ²)² > (1-λ)²+(1-λ²)²", 2 * _1_l_l2**2, _1_l**2 + _1_l2**2, "0.350"),
    ("λ²+(1-λ+λ²)² > 2(1-λ)²", LAM**2 + _1_l_l2**2, 2 * _1_l**2, "0.394"),
    ("2λ² > (λ-λ²)²+(1-λ)²", 2 * LAM**2, _l_l2**2 + _1_l**2, "0.436"),
]

# scaling step for the hyperbola windows: λ > (1-λ)(1-λ+λ²-λ³)
SCALING_POLY = LAM - _1_l * _1_l_l2_l3


@lru_cache(maxsize=None)
def catalog() -> tuple[ThresholdEntry, ...]:
    """The fixed catalog, in display order (lambda_k / r_k are generated on demand)."""
    out: list[ThresholdEntry] = []
    idx = 1
    for label, a, b, n, (v_left, v_right) in _STEP_II_PAIRS:
        left, right = pair_condition_polys(a, b, n)
        out.append(ThresholdEntry(ThresholdId("stepII_cond", idx), f"{label}: (1-λ-λ²)(a+λ³)/λ <= b", left, SEARCH, _d(v_left)))
        out.append(ThresholdEntry(ThresholdId("stepII_cond", idx + 1), f"{label}: b+λ³ <= aλ/(1-2λ)", right, SEARCH, _d(v_right)))
        idx += 2
    for i, (label, a, b, n, v) in enumerate(_TABLE_1, 1):
        poly, others = _binding(pair_condition_polys(a, b, n), SEARCH)
        out.append(ThresholdEntry(ThresholdId("table1_row", i), f"Table 1 row {i}, {label}: (2.2)", poly, SEARCH, _d(v), others))
    for i, (label, lhs, rhs, v) in enumerate(_CHAIN, 1):
        out.append(ThresholdEntry(ThresholdId("chain_ineq", i), label, lhs - rhs, SEARCH, _d(v)))
    for i, (label, a, b, n, v) in enumerate(_CIRCLE_PAIRS, 1):
        poly, others = _binding(pair_condition_polys(a, b, n), SEARCH)
        out.append(ThresholdEntry(ThresholdId("circle_cond", i), f"circle pair {i}, {label}: (4.1)", poly, SEARCH, _d(v), others))
    for i, (label, lhs, rhs, v) in enumerate(_CIRCLE_OVERLAPS, 1):
        out.append(ThresholdEntry(ThresholdId("circle_overlap", i), label, lhs - rhs, SEARCH, _d(v)))
    st = [e for e in out if e.id.tag in ("stepII_cond", "table1_row", "chain_ineq")]
    top = max(st, key=lambda e: e.bracket().lo)
    out.append(ThresholdEntry(ThresholdId("theorem_constant"), f"binding S_t condition: {top.id}", top.poly, SEARCH, _d("0.4302")))
    return tuple(out)


def st_catalog() -> list[ThresholdEntry]:
    return [e for e in catalog() if e.id.tag in ("stepII_cond", "table1_row", "chain_ineq")]


def lambda_k_entry(k: int) -> ThresholdEntry:
    return ThresholdEntry(
        ThresholdId("lambda_k", k),
        f"(k-1)λ^k + (2k+2)λ - (k+1) = 0, k={k}",
        lambda_k_poly(k),
        RootBracket(0, HALF),
        None,
    )


def r_k_poly(k: int) -> LambdaPoly:
    """``λ - (1-λ)^(k+1)``: the negative of g_k, positive above the root."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return LAM - (1 - LAM) ** (k + 1)


def r_k_entry(k: int) -> ThresholdEntry:
    return ThresholdEntry(
        ThresholdId("r_k", k), f"(1-λ)^{k + 1} = λ", r_k_poly(k), RootBracket(0, 1), None
    )


def entry(tid: ThresholdId | str) -> ThresholdEntry:
    if isinstance(tid, str):
        tid = ThresholdId.parse(tid)
    if tid.tag == "lambda_k":
        if tid.index is None or tid.index < 2:
            raise UnknownId(str(tid))
        return lambda_k_entry(tid.index)
    if tid.tag == "r_k":
        if tid.index is None or tid.index < 2:
            raise UnknownId(str(tid))
        return r_k_entry(tid.index)
    for e in catalog():
        if e.id == tid:
            return e
    raise UnknownId(str(tid))


def named_threshold(tid: ThresholdId | str, width: Scalar = DEFAULT_WIDTH) -> RootBracket:
    return entry(tid).bracket(width)


def lambda_k(k: int, width: Scalar = DEFAULT_WIDTH) -> RootBracket:
    """Bracket for the unique root of the λ_k polynomial in ``(0, 1/2)``.

    The polynomial is increasing on ``(0, 1/2)`` with value ``-(k+1)`` at 0
    and ``(k-1)/2^k`` at 1/2.
    """
    return lambda_k_entry(k).bracket(width)


def r_k(k: int, width: Scalar = DEFAULT_WIDTH) -> RootBracket:
    return r_k_entry(k).bracket(width)


def h_k(k: int, x: Scalar) -> Fraction:
    """``(k-1)x^k/(k+1) + 2x - 1``."""
    x = Fraction(x)
    return Fraction(k - 1, k + 1) * x**k + 2 * x - 1


def x_k(k: int) -> Fraction:
    return Fraction(k - 1, 2 * k - 1)


def check_hk_xk(k_max: int) -> bool:
    """``h_k(x_k) < 0`` for every ``k`` in ``2..k_max``, exactly."""
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    return all(h_k(k, x_k(k)) < 0 for k in range(2, k_max + 1))


def check_xk_below_lambda_k(k_max: int) -> bool:
    """``x_k < λ_k`` for ``k`` in ``2..k_max``: the λ_k polynomial is negative at ``x_k``."""
    return all(sign_at(lambda_k_poly(k), x_k(k)) == Sign.NEGATIVE for k in range(2, k_max + 1))


def lambda_k_brackets(k_max: int, width: Scalar = DEFAULT_WIDTH) -> list[RootBracket]:
    """Brackets for λ_2..λ_kmax, refined until consecutive ones are disjoint."""
    items = [(lambda_k_poly(k), RootBracket(0, HALF)) for k in range(2, k_max + 1)]
    return refine_until_disjoint(items, width)


def check_lambda_k_monotone(k_max: int) -> bool:
    if k_max < 3:
        raise ValueError("k_max must be at least 3")
    bs = lambda_k_brackets(k_max)
    increasing = all(x.hi < y.lo for x, y in zip(bs, bs[1:]))
    return increasing and all(b.hi < HALF for b in bs)


def check_hk_decreasing_in_k(k_max: int, samples: int = 16) -> bool:
    """``h_k(λ) > h_{k+1}(λ)`` on a grid of rationals in ``(0, 1/2)``."""
    grid = [Fraction(i, 2 * samples) for i in range(1, samples)]
    return all(h_k(k, x) > h_k(k + 1, x) for k in range(2, k_max) for x in grid)


def threshold_table(width: Scalar = DEFAULT_WIDTH, k_values=(2, 3)) -> list[dict]:
    """Rows of the catalog report: id, polynomial, bracket, printed value, |Δ|."""
    entries = list(catalog())
    entries += [lambda_k_entry(k) for k in k_values] + [r_k_entry(k) for k in k_values]
    rows = []
    for e in entries:
        b = e.bracket(width)
        rows.append({
            "id": str(e.id),
            "label": e.label,
            "polynomial": str(e.poly),
            "bracket": b,
            "midpoint": b.midpoint,
            "printed": e.printed_value,
            "delta": e.delta(width),
        })
    return rows


def holds_by_sign(e: ThresholdEntry, lam: Scalar) -> bool:
    """Whether ``lam`` is on the satisfied side of ``e``'s binding polynomial."""
    return poly_eval(e.poly, lam) >= 0


# the method's limit for the S_t constant: λ = √2 - 1 is the root of λ² + 2λ - 1
SQRT2_MINUS_1_POLY = LAM**2 + 2 * LAM - 1


def compare_sqrt2_minus_1(lam: Scalar) -> Comparison:
    """``λ >= √2 - 1`` decided by the sign of ``λ² + 2λ - 1``; no optimisation is attempted."""
    return sign_check("λ >= √2-1  [λ²+2λ-1 >= 0]", SQRT2_MINUS_1_POLY, lam, ">=")

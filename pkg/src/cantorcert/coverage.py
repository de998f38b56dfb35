"""Interval unions, finite-rank images, gap reports and certificates.

Two kinds of verdict live here and they point in opposite directions:

* ``image_union_fk`` at a finite rank is an *outer* approximation of
  ``f_k(C, C)``, since the rank-m union contains the Cantor set.  A gap it
  reports is a genuine gap.  An absence of gaps proves nothing.
* the ``certify_*`` functions check the exact hypotheses of the covering
  lemmas; when every check holds the conclusion holds for the Cantor set
  itself.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .cantor import BasicInterval, check_lambda, rank_left_numerators
from .exactmath import (
    LAM,
    Comparison,
    Interval,
    OpenInterval,
    Scalar,
    format_fraction,
    sign_check,
    to_rational,
)
from .images import cond_2_2_checks, image_f, lambda_k_poly, range_checks

DEFAULT_RANK_LIMIT = int(os.environ.get("CANTORCERT_RANK_LIMIT", "10"))

FINITE_RANK_NOTE = (
    "finite-rank union is an outer approximation: reported gaps are gaps of "
    "f_k(C_λ, C_λ); a gap-free union does not certify coverage"
)


class EmptyInterval(ValueError):
    pass


class RankLimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, pairwise-separated closed intervals (touching parts are merged)."""

    parts: tuple[Interval, ...] = ()

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def hull(self) -> Optional[Interval]:
        if not self.parts:
            return None
        return Interval(self.parts[0].lo, self.parts[-1].hi)

    def contains_point(self, x: Scalar) -> bool:
        return any(p.lo <= x <= p.hi for p in self.parts)

    def issubset(self, other: "IntervalUnion") -> bool:
        return all(any(q.contains(p) for q in other.parts) for p in self.parts)

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return union_normalize(self.parts + other.parts)

    def to_list(self) -> list[list[str]]:
        return [p.to_pair() for p in self.parts]

    def __str__(self) -> str:
        if not self.parts:
            return "∅"
        return " ∪ ".join(f"[{p.lo}, {p.hi}]" for p in self.parts)


def _merge_sorted(pairs: Iterable[tuple]) -> list[list]:
    out: list[list] = []
    for lo, hi in pairs:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return out


def union_normalize(raw: Iterable[Interval | tuple]) -> IntervalUnion:
    items = []
    for lo, hi in raw:
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise EmptyInterval(f"[{lo}, {hi}] is empty")
        items.append((lo, hi))
    items.sort()
    return IntervalUnion(tuple(Interval(lo, hi) for lo, hi in _merge_sorted(items)))


# ---------------------------------------------------------------------------
# finite-rank images


def _pair_images_chunk(args) -> list[list[int]]:
    """Merged integer images for I-indices in ``[start, stop)``."""
    k, lefts, h, start, stop = args
    b_lo = lefts
    b_hi = [b + h for b in lefts]
    pairs = []
    for a in lefts[start:stop]:
        ak, ahk = a**k, (a + h) ** k
        pairs.extend(zip((ak * b for b in b_lo), (ahk * b for b in b_hi)))
    pairs.sort()
    return _merge_sorted(pairs)


def image_union_fk(
    k: int,
    lam: Scalar,
    rank: int,
    *,
    rank_limit: int = DEFAULT_RANK_LIMIT,
    workers: int = 1,
) -> IntervalUnion:
    """Union of ``f_k(I, J)`` over all ordered pairs of rank-``rank`` basic intervals.

    Endpoints are handled as integers over the common denominator
    ``q**(rank*(k+1))`` (with ``lam = p/q``) and converted back at the end.
    ``workers > 1`` splits the I-side across processes; partial unions are
    merged, which is order-independent.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    if rank > rank_limit:
        raise RankLimitExceeded(f"rank {rank} exceeds limit {rank_limit}")
    lam = check_lambda(lam)
    lefts = rank_left_numerators(rank, lam)
    h = lam.numerator**rank
    denom = lam.denominator ** (rank * (k + 1))
    n = len(lefts)
    if workers <= 1 or n < 2 * workers:
        merged = _pair_images_chunk((k, lefts, h, 0, n))
    else:
        step = -(-n // workers)
        jobs = [(k, lefts, h, s, min(s + step, n)) for s in range(0, n, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partial = [iv for chunk in pool.map(_pair_images_chunk, jobs) for iv in chunk]
        partial.sort()
        merged = _merge_sorted(partial)
    return IntervalUnion(tuple(Interval(Fraction(lo, denom), Fraction(hi, denom)) for lo, hi in merged))


def image_union_fk_naive(k: int, lam: Scalar, rank: int) -> IntervalUnion:
    """Same union through per-pair Fraction arithmetic; slow, used as a cross-check."""
    from .images import image_fk

    lam = check_lambda(lam)
    ivs = [b.interval(lam) for b in BasicInterval().descendants(rank)]
    return union_normalize(image_fk(k, I, J) for I in ivs for J in ivs)


@dataclass(frozen=True)
class GapReport:
    union: IntervalUnion
    gaps: tuple[OpenInterval, ...]
    note: str = FINITE_RANK_NOTE

    @property
    def has_gaps(self) -> bool:
        return bool(self.gaps)

    def to_dict(self) -> dict:
        return {
            "union": self.union.to_list(),
            "gaps": [g.to_pair() for g in self.gaps],
            "note": self.note,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "lo", "hi"])
        for p in self.union:
            w.writerow(["part", format_fraction(p.lo), format_fraction(p.hi)])
        for g in self.gaps:
            w.writerow(["gap", format_fraction(g.lo), format_fraction(g.hi)])
        return buf.getvalue()


def find_gaps(u: IntervalUnion) -> GapReport:
    """Open gaps between consecutive parts of ``u``."""
    hull = u.hull
    if hull is not None and (hull.lo < 0 or hull.hi > 1):
        raise ValueError("union must lie in [0, 1]")
    gaps = tuple(OpenInterval(x.hi, y.lo) for x, y in zip(u.parts, u.parts[1:]))
    return GapReport(u, gaps)


# ---------------------------------------------------------------------------
# certificates

KINDS = ("st_continuum", "fk_coverage", "circle_continuum")


@dataclass(frozen=True)
class Certificate:
    """Exact checks and, when all of them hold, the conclusion they license."""

    kind: str
    lam: Fraction
    checks: tuple[Comparison, ...]
    conclusion: Optional[dict] = None
    k: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        if (self.conclusion is not None) != self.passed:
            raise ValueError("conclusion must be present exactly when every check holds")

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    @property
    def failures(self) -> list[Comparison]:
        return [c for c in self.checks if not c.holds]

    @property
    def first_failure(self) -> Optional[Comparison]:
        fails = self.failures
        return fails[0] if fails else None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "lambda": format_fraction(self.lam),
            "k": self.k,
            "checks": [c.to_dict() for c in self.checks],
            "conclusion": self.conclusion,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        checks = []
        for c in d["checks"]:
            cmp = Comparison(c["label"], to_rational(c["lhs"]), c["relation"], to_rational(c["rhs"]))
            if cmp.holds != c["holds"]:
                raise ValueError(f"recorded truth of {c['label']!r} does not match its values")
            checks.append(cmp)
        return cls(d["kind"], to_rational(d["lambda"]), tuple(checks), d["conclusion"], d["k"])

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))

    def summary(self) -> str:
        head = f"{self.kind} at λ = {self.lam}" + (f", k = {self.k}" if self.k is not None else "")
        lines = [head]
        for c in self.checks:
            mark = "ok  " if c.holds else "FAIL"
            lines.append(f"  [{mark}] {c.label}: {_approx(c.lhs)} {c.relation} {_approx(c.rhs)}")
        if self.passed:
            lines.append(f"  certified: {self.conclusion['statement']}")
        else:
            lines.append(f"  not certified; first failing check: {self.first_failure.label}")
            for c in self.failures[1:]:
                lines.append(f"  also failing: {c.label}")
        return "\n".join(lines)


def _approx(x: Fraction) -> str:
    return f"{float(x):.6g}"


def _certificate(kind: str, lam: Fraction, checks: list[Comparison], conclusion: dict, k=None) -> Certificate:
    ok = all(c.holds for c in checks)
    return Certificate(kind, lam, tuple(checks), conclusion if ok else None, k)


# S_t witnesses: two pairs from the text and four from the table, rank 3.
ST_PAIRS: tuple[tuple[str, BasicInterval, BasicInterval], ...] = (
    ("Step II pair 1", BasicInterval("111"), BasicInterval("111")),
    ("Step II pair 2", BasicInterval("110"), BasicInterval("111")),
    ("Table 1 row 1", BasicInterval("110"), BasicInterval("110")),
    ("Table 1 row 2", BasicInterval("101"), BasicInterval("110")),
    ("Table 1 row 3", BasicInterval("101"), BasicInterval("101")),
    ("Table 1 row 4", BasicInterval("100"), BasicInterval("101")),
)

CIRCLE_PAIRS: tuple[tuple[str, BasicInterval, BasicInterval], ...] = (
    ("circle pair 1", BasicInterval("11"), BasicInterval("11")),
    ("circle pair 2", BasicInterval("10"), BasicInterval("11")),
    ("circle pair 3", BasicInterval("10"), BasicInterval("10")),
    ("circle pair 4", BasicInterval("01"), BasicInterval("10")),
)


def st_images(lam: Scalar) -> list[Interval]:
    lam = check_lambda(lam)
    return [image_f(I.interval(lam), J.interval(lam)) for _, I, J in ST_PAIRS]


def st_window(lam: Scalar) -> OpenInterval:
    """Open window of targets reached by the six catalog pairs: ``(l_6, 1)``."""
    return OpenInterval(st_images(lam)[-1].lo, Fraction(1))


def certify_st_continuum(lam: Scalar) -> Certificate:
    lam = check_lambda(lam)
    checks = range_checks(lam, strict_golden=True)
    for label, I, J in ST_PAIRS:
        a, b = I.interval(lam).lo, J.interval(lam).lo
        checks += cond_2_2_checks(a, b, 3, lam, tag=f"{label} (2.2)")
    imgs = st_images(lam)
    for i in range(1, 6):
        checks.append(Comparison(
            f"Step II chain {i}: right end of image {i + 1} > left end of image {i}",
            imgs[i].hi, ">", imgs[i - 1].lo,
        ))
    low = imgs[-1].lo
    checks.append(Comparison("scaling: λ > (1-λ)(1-λ+λ²-λ³)", lam, ">", low))
    conclusion = {
        "statement": "S_t has the cardinality of the continuum for every t in (0, 1)",
        "range": ["0/1", "1/1"],
        "window": [format_fraction(low), "1/1"],
        "scaling_factor": format_fraction(lam),
    }
    return _certificate("st_continuum", lam, checks, conclusion)


def certify_fk_coverage(k: int, lam: Scalar) -> Certificate:
    if k < 2:
        raise ValueError("k must be at least 2")
    lam = check_lambda(lam)
    checks = [
        sign_check(f"λ >= λ_{k}: (k-1)λ^k+(2k+2)λ-(k+1) >= 0", lambda_k_poly(k), lam, ">="),
        sign_check("λ < 1/2  [2λ-1 < 0]", 2 * LAM - 1, lam, "<"),
        Comparison("Lemma 3.3: (1-2λ)[1+(k-1)λ]/(kλ) <= 1-λ",
                   (1 - 2 * lam) * (1 + (k - 1) * lam) / (k * lam), "<=", 1 - lam),
        Comparison("Lemma 3.3: 1 <= (1-λ)/(k(1-2λ))", Fraction(1), "<=", (1 - lam) / (k * (1 - 2 * lam))),
        Comparison(f"(1-λ)^{k + 1} < λ", (1 - lam) ** (k + 1), "<", lam),
    ]
    conclusion = {
        "statement": f"f_{k}(C_λ, C_λ) = [0, 1]",
        "range": ["0/1", "1/1"],
    }
    return _certificate("fk_coverage", lam, checks, conclusion, k)


def circle_images(lam: Scalar) -> list[Interval]:
    """``x² + y²`` over each circle pair: ``[a²+b², (a+λ²)²+(b+λ²)²]``."""
    lam = check_lambda(lam)
    out = []
    for _, I, J in CIRCLE_PAIRS:
        x, y = I.interval(lam), J.interval(lam)
        out.append(Interval(x.lo**2 + y.lo**2, x.hi**2 + y.hi**2))
    return out


def certify_circle_continuum(lam: Scalar) -> Certificate:
    lam = check_lambda(lam)
    checks = range_checks(lam, strict_golden=True)
    for label, I, J in CIRCLE_PAIRS:
        a, b = I.interval(lam).lo, J.interval(lam).lo
        checks += cond_2_2_checks(a, b, 2, lam, tag=f"{label} (4.1)")
    imgs = circle_images(lam)
    for i in range(1, 4):
        checks.append(Comparison(
            f"circle overlap {i}: right end of image {i + 1} > left end of image {i}",
            imgs[i].hi, ">", imgs[i - 1].lo,
        ))
    checks.append(Comparison("circle scaling: (λ-λ²)²+(1-λ)² < 2λ²", imgs[-1].lo, "<", 2 * lam**2))
    conclusion = {
        "statement": "the circle x²+y²=r meets C_λ×C_λ in continuum many points for every r in (0, 2)",
        "range": ["0/1", "2/1"],
        "window": [format_fraction(imgs[-1].lo), "2/1"],
    }
    return _certificate("circle_continuum", lam, checks, conclusion)


def certify(kind: str, lam: Scalar, k: Optional[int] = None) -> Certificate:
    if kind in ("st", "st_continuum"):
        return certify_st_continuum(lam)
    if kind in ("fk", "fk_coverage"):
        if k is None:
            raise ValueError("fk certificates need k")
        return certify_fk_coverage(k, lam)
    if kind in ("circle", "circle_continuum"):
        return certify_circle_continuum(lam)
    raise ValueError(f"unknown certificate kind {kind!r}")


def gap_report(k: int, lam: Scalar, rank: int, **kw) -> GapReport:
    return find_gaps(image_union_fk(k, lam, rank, **kw))

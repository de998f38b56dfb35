"""Acceptance criteria, one test each, at their stated tolerances and time budgets.

Run with pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly: ``python3 tests/test_acceptance.py``.
"""

import random
import time
from fractions import Fraction as F

from cantorcert.cantor import BasicInterval, enumerate_rank
from cantorcert.coverage import (
    IntervalUnion,
    certify_circle_continuum,
    certify_fk_coverage,
    certify_st_continuum,
    find_gaps,
    image_union_fk,
    union_normalize,
)
from cantorcert.exactmath import Interval, Sign, sign_at
from cantorcert.images import (
    all_hold,
    decompose_f,
    decompose_fk,
    image_f,
    image_fk,
    lambda_k_poly,
    lemma_2_2_hypotheses,
    lemma_3_1_hypotheses,
)
from cantorcert.thresholds import (
    catalog,
    check_hk_xk,
    check_lambda_k_monotone,
    lambda_k,
    r_k,
    r_k_poly,
    x_k,
)
from cantorcert.witness import build_witness_tree, verify_tree

# filled in by each test; read by the summary hook in conftest.py
DETAILS: dict = {}

TITLES = {
    1: "threshold regression against printed values (|Δ| <= 5e-4)",
    2: "λ_k solver: closed form, monotonicity, r_2 < 0.32 < 0.46 < λ_2",
    3: "exact gap reproduction for f_4 and f_3 at λ = 1/3",
    4: "S_t certificate boundary",
    5: "f_k certificate boundary",
    6: "circle certificate boundary",
    7: "witness trees at depth 12",
    8: "decomposition unions equal whole images",
    9: "two-sided refutation for k = 4, λ = 1/3",
    10: "h_k(x_k) < 0 and x_k < λ_k for k <= 64",
}


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def test_criterion_01_threshold_regression():
    tol = F(5, 10**4)
    with Timer() as clock:
        rows = [(str(e.id), e.delta()) for e in catalog() if e.printed_value is not None]
    misses = [f"{tid} |Δ|={float(d):.2e}" for tid, d in rows if d > tol]
    DETAILS[1] = f"{len(rows) - len(misses)}/{len(rows)} within tolerance, {clock.seconds:.2f}s" + (
        "; outside: " + ", ".join(misses) if misses else ""
    )
    assert clock.seconds < 5
    assert not misses, misses


def test_criterion_02_lambda_k_solver():
    with Timer() as clock:
        b = lambda_k(2, F(1, 10**9))
        closed_form = b.width <= F(1, 10**9) and (b.lo + 3) ** 2 <= 12 <= (b.hi + 3) ** 2
        monotone = check_lambda_k_monotone(64)
        # λ_2 > 0.46: the increasing λ_2 polynomial is still negative at 0.46
        above = sign_at(lambda_k_poly(2), F(46, 100)) == Sign.NEGATIVE and lambda_k(2).lo > F(46, 100)
        # r_2 < 0.32: λ - (1-λ)^3 is increasing and already positive at 0.32
        below = sign_at(r_k_poly(2), F(32, 100)) == Sign.POSITIVE and r_k(2).hi < F(32, 100)
    DETAILS[2] = f"closed form {closed_form}, monotone {monotone}, λ_2>0.46 {above}, r_2<0.32 {below}, {clock.seconds:.2f}s"
    assert closed_form and monotone and above and below
    assert clock.seconds < 5


def test_criterion_03_exact_gaps():
    third = F(1, 3)
    expected4 = union_normalize([(0, F(2401, 19683)), (F(32, 243), F(2401, 6561)), (F(8192, 19683), 1)])
    with Timer() as clock:
        u4 = image_union_fk(4, third, 2)
        u3 = image_union_fk(3, third, 2)
    DETAILS[3] = f"f_4: {u4}; f_3: {u3}; {clock.seconds:.3f}s"
    assert u4 == expected4
    assert u3 == IntervalUnion((Interval(F(0), F(1)),))
    assert clock.seconds < 1


def test_criterion_04_st_certificate():
    with Timer() as clock:
        passes = {lam: certify_st_continuum(F(lam)).passed for lam in ("4302/10000", "44/100", "46/100", "49/100")}
        low = certify_st_continuum(F(42, 100))
    table_rows = sorted({c.label.split(" (2.2)")[0] for c in low.failures if c.label.startswith("Table 1 row")})
    DETAILS[4] = f"passes {passes}; at 0.42 failing Table 1 rows {table_rows}; {clock.seconds:.3f}s"
    assert all(passes.values())
    assert not low.passed and table_rows
    assert clock.seconds < 1


def test_criterion_05_fk_certificate():
    with Timer() as clock:
        good = [certify_fk_coverage(2, F(47, 100)).passed, certify_fk_coverage(3, F(48, 100)).passed]
        bad = [certify_fk_coverage(2, F(45, 100)).passed, certify_fk_coverage(3, F(47, 100)).passed]
    DETAILS[5] = f"pass {good}, fail {bad}; {clock.seconds:.3f}s"
    assert all(good) and not any(bad)
    assert clock.seconds < 1


def test_criterion_06_circle_certificate():
    with Timer() as clock:
        hi, lo = certify_circle_continuum(F(46, 100)), certify_circle_continuum(F(45, 100))
    DETAILS[6] = f"0.46 passed {hi.passed}; 0.45 passed {lo.passed}; {clock.seconds:.3f}s"
    assert hi.passed and not lo.passed
    assert clock.seconds < 1


def test_criterion_07_witness_trees():
    lam = F(9, 20)
    report = []
    with Timer() as clock:
        for t in (F(1, 2), F(1, 100), F(9, 10)):
            tree = build_witness_tree(lam, t, 12)
            leaves = tree.leaves()
            ok = len(leaves) == 4096 and verify_tree(tree) and len({l.pair for l in leaves}) == 4096
            report.append((str(t), ok))
    DETAILS[7] = f"{report}; {clock.seconds:.1f}s"
    assert all(ok for _, ok in report)
    assert clock.seconds < 30


def _pairs(rank):
    intervals = [b for b, _ in enumerate_rank(rank, F(1, 3))]
    return [(I, J) for I in intervals for J in intervals]


def test_criterion_08_oracle_equivalence():
    rng = random.Random(20240601)
    lams = [F(rng.randrange(43001, 50000), 100000) for _ in range(50)]
    pairs = [p for n in range(5) for p in _pairs(n)]
    counts = {1: 0, 2: 0, 3: 0, 4: 0}
    bad = []
    with Timer() as clock:
        for lam in lams:
            for I, J in pairs:
                if I <= J and all_hold(lemma_2_2_hypotheses(I, J, lam)):
                    counts[1] += 1
                    if union_normalize(decompose_f(I, J, lam)) != union_normalize([image_f(I.interval(lam), J.interval(lam))]):
                        bad.append((1, lam, I.address, J.address))
                for k in (2, 3, 4):
                    if all_hold(lemma_3_1_hypotheses(k, I, J, lam)):
                        counts[k] += 1
                        whole = image_fk(k, I.interval(lam), J.interval(lam))
                        if union_normalize(decompose_fk(k, I, J, lam)) != union_normalize([whole]):
                            bad.append((k, lam, I.address, J.address))
    DETAILS[8] = f"pairs checked per k {counts}, mismatches {len(bad)}; {clock.seconds:.1f}s"
    assert not bad, bad[:5]
    assert all(counts.values())
    assert clock.seconds < 60


def test_criterion_09_refutation():
    cert = certify_fk_coverage(4, F(1, 3))
    gaps = find_gaps(image_union_fk(4, F(1, 3), 2))
    DETAILS[9] = f"certificate passed {cert.passed}; rank-2 gaps {len(gaps.gaps)}"
    assert not cert.passed and gaps.has_gaps


def test_criterion_10_hk_xk():
    with Timer() as clock:
        hk = check_hk_xk(64)
        below = all(sign_at(lambda_k_poly(k), x_k(k)) == Sign.NEGATIVE for k in range(2, 65))
        third = all(x_k(k) >= F(1, 3) for k in range(2, 65))
    DETAILS[10] = f"h_k(x_k)<0 {hk}, x_k<λ_k {below}, x_k>=1/3 {third}; {clock.seconds:.2f}s"
    assert hk and below and third
    assert clock.seconds < 5


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted((n, f) for n, f in globals().items() if n.startswith("test_criterion_")):
        num = int(name.split("_")[2])
        try:
            fn()
            verdict = "PASS"
        except AssertionError:
            verdict, failed = "FAIL", failed + 1
        print(f"criterion {num:2d} {verdict}: {TITLES[num]} [{DETAILS.get(num, '')}]")
    sys.exit(1 if failed else 0)

from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cantorcert.cantor import BasicInterval as B
from cantorcert.coverage import union_normalize
from cantorcert.exactmath import Interval
from cantorcert.images import (
    NegativeInput,
    OrderViolation,
    RankMismatch,
    all_hold,
    check_cover,
    check_double_cover,
    check_ineq_3_2,
    cond_2_2,
    cond_2_2_checks,
    cond_3_1,
    cond_3_6,
    cond_3_6_checks,
    cond_4_1,
    decompose_f,
    decompose_fk,
    decompose_fk_values,
    double_cover_window,
    image_f,
    image_fk,
    lemma_2_2_hypotheses,
    lemma_2_3_hypotheses,
    lemma_3_1_hypotheses,
    range_checks,
)

UNIT = Interval(0, 1)
TOP = Interval(F(2, 3), 1)

nonneg = st.fractions(min_value=0, max_value=2, max_denominator=60)
intervals = st.tuples(nonneg, nonneg).map(lambda p: Interval(min(p), max(p)))
lams = st.fractions(min_value=F(43, 100), max_value=F(499, 1000), max_denominator=1000)


def same_rank_pair(max_rank):
    return st.integers(0, max_rank).flatmap(
        lambda n: st.tuples(st.text("01", min_size=n, max_size=n), st.text("01", min_size=n, max_size=n))
    )


def test_image_f_examples():
    assert image_f(UNIT, UNIT) == UNIT
    assert image_f(TOP, TOP) == Interval(F(4, 9), 1)
    assert image_f(Interval(0, F(1, 3)), TOP) == Interval(0, F(1, 3))
    with pytest.raises(NegativeInput):
        image_f(Interval(-1, 0), UNIT)


def test_image_fk_examples():
    assert image_fk(2, TOP, TOP) == Interval(F(8, 27), 1)
    assert image_fk(4, Interval(F(8, 9), 1), Interval(F(8, 9), 1)) == Interval(F(32768, 59049), 1)
    with pytest.raises(ValueError):
        image_fk(0, UNIT, UNIT)


@given(intervals, intervals)
def test_image_f_symmetric_and_k1(I, J):
    assert image_f(I, J) == image_f(J, I)
    assert image_fk(1, I, J) == image_f(I, J)


@given(intervals, intervals, lams, st.integers(1, 5))
def test_image_scaling(I, J, lam, k):
    assert image_f(I.scaled(lam), J) == image_f(I, J).scaled(lam)
    assert image_fk(k, I.scaled(lam), J) == image_fk(k, I, J).scaled(lam**k)


def test_decompose_f_at_root_pair():
    # a = b = 0, n = 0 at λ = 1/3, evaluated exactly from the displayed endpoints
    dec = decompose_f(B(""), B(""), F(1, 3))
    assert dec.to_list() == [["0/1", "1/9"], ["0/1", "1/3"], ["0/1", "1/3"], ["4/9", "1/1"]]
    # r3 = 1/3 < l4 = 4/9: the rank-1 gap (1/3, 4/9) at λ = 1/3
    assert not check_cover(dec)
    # l4 = 4/9 is not below r2 = 1/3
    assert not check_double_cover(dec)


def test_decompose_f_step_ii_pair_covers():
    lam = F(9, 20)
    dec = decompose_f(B("111"), B("111"), lam)
    assert check_cover(dec)
    assert union_normalize(dec) == union_normalize([Interval((1 - lam**3) ** 2, 1)])


def test_decompose_f_rank_mismatch():
    with pytest.raises(RankMismatch):
        decompose_f(B("1"), B("11"), F(2, 5))


def test_decompose_fk_examples():
    dec = decompose_fk(2, B("1"), B("1"), F(47, 100))
    assert check_cover(dec)
    assert dec[0] == Interval(F(148877, 10**6), F(423395573229, 10**12))
    dec4 = decompose_fk(4, B("10"), B("10"), F(1, 3))
    assert dec4[1].hi < dec4[2].lo
    assert dec4[1].hi == F(912247, 4782969) and dec4[2].lo == F(320000, 1594323)
    assert not check_cover(dec4)


@given(same_rank_pair(5), lams)
def test_decompose_fk_k1_is_decompose_f(pair, lam):
    I, J = B(pair[0]), B(pair[1])
    assert decompose_fk(1, I, J, lam) == decompose_f(I, J, lam)


@given(st.integers(0, 4), st.fractions(min_value=F(1, 100), max_value=F(49, 100), max_denominator=500))
def test_cover_from_zero_iff_golden_range(n, lam):
    # r3 = λ^(n+1) against l4 = (λⁿ - λ^(n+1))²: cover iff λ² - 3λ + 1 <= 0 at n = 0
    dec = decompose_fk_values(1, 0, 0, n, lam)
    if n == 0:
        assert check_cover(dec) == (lam**2 - 3 * lam + 1 <= 0)
    if lam**2 - 3 * lam + 1 <= 0:
        assert check_cover(dec)


def test_check_double_cover_examples():
    assert check_double_cover(decompose_f(B("111"), B("111"), F(45, 100)))
    dec = decompose_fk_values(1, F(1, 2), F(1, 2), 1, F(1, 5))
    assert dec[0].hi < dec[2].lo
    assert not check_double_cover(dec)


def test_double_cover_window_examples():
    lam = F(9, 20)
    w = double_cover_window(0, 0, 0, lam)
    assert (w.lo, w.hi) == (0, lam)
    a = 1 - lam**3
    w = double_cover_window(3, a, a, lam)
    assert (w.lo, w.hi) == (F(1115654969, 1280000000), F(151981, 160000))
    with pytest.raises(OrderViolation):
        double_cover_window(1, F(1, 2), F(1, 3), lam)


def test_cond_2_2_examples():
    assert cond_2_2(B("111"), B("111"), F(43, 100))
    assert not cond_2_2(B("100"), B("100"), F(42, 100))
    assert not cond_2_2(B("000"), B("000"), F(43, 100))
    with pytest.raises(OrderViolation):
        cond_2_2(B("111"), B("110"), F(43, 100))


def test_cond_2_2_strictness_follows_display():
    rels = [c.relation for c in cond_2_2_checks(F(1, 2), F(1, 2), 1, F(9, 20))]
    assert rels == ["<=", "<", "<="]


def test_cond_4_1_examples():
    assert cond_4_1(B("11"), B("11"), F(45, 100))
    assert not cond_4_1(B("10"), B("10"), F(45, 100))
    assert cond_4_1(B("01"), B("10"), F(44, 100))


def test_cond_3_6_examples():
    assert cond_3_6(2, B("1"), B("1"), F(47, 100))
    assert cond_3_6(3, B("1"), B("1"), F(48, 100))
    # at 0.44 the pair condition itself still holds; it is the λ >= λ_2 hypothesis that fails
    assert cond_3_6(2, B("1"), B("1"), F(44, 100))
    hyps = lemma_3_1_hypotheses(2, B("1"), B("1"), F(44, 100))
    assert not all_hold(hyps) and not hyps[0].holds and all_hold(hyps[1:])


def test_cond_3_1_is_weaker():
    # b itself sits below a/(k(1-2λ)) but b + λⁿ does not
    lam, k = F(47, 100), 2
    strong = cond_3_6_checks(k, F(1, 10), F(1, 2), 0, lam)
    weak = cond_3_6_checks(k, F(1, 10), F(1, 2), 0, lam, strengthened=False)
    assert all_hold(weak) and not all_hold(strong)
    assert cond_3_1(k, B("1"), B("1"), lam)


def test_ineq_3_2_examples():
    assert check_ineq_3_2(2, 1, F(53, 100), F(53, 100), F(47, 100))
    assert check_ineq_3_2(3, 1, F(52, 100), F(52, 100), F(48, 100))
    assert check_ineq_3_2(5, 2, F(1, 2), 0, F(2, 5))
    with pytest.raises(ValueError):
        check_ineq_3_2(1, 1, 1, 1, F(2, 5))


def test_range_checks():
    assert all_hold(range_checks(F(39, 100)))
    assert not all_hold(range_checks(F(38, 100)))
    assert not all_hold(range_checks(F(1, 2)))


@settings(max_examples=150, deadline=None)
@given(same_rank_pair(6), lams)
def test_lemma_2_2_refinement_equality(pair, lam):
    I, J = B(pair[0]), B(pair[1])
    assume(I <= J)
    assume(all_hold(lemma_2_2_hypotheses(I, J, lam)))
    dec = decompose_f(I, J, lam)
    assert check_cover(dec)
    whole = image_f(I.interval(lam), J.interval(lam))
    assert union_normalize(dec) == union_normalize([whole])
    # brute force over the rank-(n+1) child pairs, without the displayed formulas
    kids = union_normalize(image_f(x.interval(lam), y.interval(lam)) for x in I.children() for y in J.children())
    assert kids == union_normalize([whole])


@settings(max_examples=150, deadline=None)
@given(same_rank_pair(5), lams, st.integers(2, 4))
def test_lemma_3_1_refinement_equality(pair, lam, k):
    I, J = B(pair[0]), B(pair[1])
    assume(all_hold(lemma_3_1_hypotheses(k, I, J, lam)))
    dec = decompose_fk(k, I, J, lam)
    assert check_cover(dec)
    assert union_normalize(dec) == union_normalize([image_fk(k, I.interval(lam), J.interval(lam))])


@settings(max_examples=150, deadline=None)
@given(same_rank_pair(5), lams)
def test_lemma_2_3_double_cover(pair, lam):
    I, J = B(pair[0]), B(pair[1])
    assume(I <= J)
    assume(all_hold(lemma_2_3_hypotheses(I, J, lam)))
    assert check_double_cover(decompose_f(I, J, lam))
    a, b = I.interval(lam).lo, J.interval(lam).lo
    assert not double_cover_window(I.rank, a, b, lam).is_empty

import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorcert.cantor import LambdaOutOfRange
from cantorcert.coverage import (
    FINITE_RANK_NOTE,
    Certificate,
    EmptyInterval,
    IntervalUnion,
    RankLimitExceeded,
    certify,
    certify_circle_continuum,
    certify_fk_coverage,
    certify_st_continuum,
    find_gaps,
    gap_report,
    image_union_fk,
    image_union_fk_naive,
    st_window,
    union_normalize,
)
from cantorcert.exactmath import Interval, OpenInterval
from cantorcert.thresholds import named_threshold

pts = st.fractions(min_value=0, max_value=1, max_denominator=40)
raw_intervals = st.lists(st.tuples(pts, pts).map(lambda p: (min(p), max(p))), max_size=12)


def U(*pairs):
    return IntervalUnion(tuple(Interval(F(a), F(b)) for a, b in pairs))


def test_union_normalize_examples():
    assert union_normalize([(0, F(1, 2)), (F(1, 2), 1)]) == U((0, 1))
    u = union_normalize([(0, F(1, 3)), (F(4, 9), 1)])
    assert len(u) == 2
    assert union_normalize([]) == IntervalUnion()
    with pytest.raises(EmptyInterval):
        union_normalize([(1, 0)])


@given(raw_intervals, st.randoms())
def test_union_normalize_idempotent_and_order_free(raw, rnd):
    u = union_normalize(raw)
    assert union_normalize(u) == u
    shuffled = list(raw)
    rnd.shuffle(shuffled)
    assert union_normalize(shuffled) == u
    assert all(x.hi < y.lo for x, y in zip(u.parts, u.parts[1:]))
    assert all(u.contains_point(lo) and u.contains_point(hi) for lo, hi in raw)


@given(raw_intervals)
def test_gaps_complement_union_in_hull(raw):
    u = union_normalize(raw)
    rep = find_gaps(u)
    assert len(rep.gaps) == max(len(u) - 1, 0)
    for g in rep.gaps:
        m = (g.lo + g.hi) / 2
        assert not u.contains_point(m)


def test_image_union_examples():
    third = F(1, 3)
    assert image_union_fk(1, third, 1) == U((0, third), (F(4, 9), 1))
    assert image_union_fk(3, third, 2) == U((0, 1))
    assert image_union_fk(4, third, 2) == U(
        (0, F(2401, 19683)), (F(32, 243), F(2401, 6561)), (F(8192, 19683), 1)
    )


def test_image_union_rejects_bad_input():
    with pytest.raises(LambdaOutOfRange):
        image_union_fk(2, F(1, 2), 1)
    with pytest.raises(RankLimitExceeded):
        image_union_fk(2, F(1, 3), 11)
    with pytest.raises(RankLimitExceeded):
        image_union_fk(2, F(1, 3), 3, rank_limit=2)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.fractions(min_value=F(1, 5), max_value=F(29, 60), max_denominator=60), st.integers(0, 3))
def test_integer_route_matches_fraction_oracle(k, lam, rank):
    assert image_union_fk(k, lam, rank) == image_union_fk_naive(k, lam, rank)


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 4), st.fractions(min_value=F(1, 5), max_value=F(29, 60), max_denominator=60))
def test_outer_approximation_shrinks(k, lam):
    prev = image_union_fk(k, lam, 0)
    for m in range(1, 6):
        cur = image_union_fk(k, lam, m)
        assert cur.issubset(prev)
        prev = cur


def test_workers_give_same_union():
    assert image_union_fk(2, F(2, 5), 5, workers=3) == image_union_fk(2, F(2, 5), 5)


def test_find_gaps_examples():
    rep = gap_report(4, F(1, 3), 2)
    assert rep.gaps == (
        OpenInterval(F(2401, 19683), F(32, 243)),
        OpenInterval(F(2401, 6561), F(8192, 19683)),
    )
    assert rep.note == FINITE_RANK_NOTE
    assert not gap_report(3, F(1, 3), 2).has_gaps
    assert not find_gaps(U((0, 1))).has_gaps
    assert "gap,2401/19683,32/243" in rep.to_csv()


def test_st_certificate_examples():
    for lam in ("0.4302", "0.44", "0.46", "0.49"):
        assert certify_st_continuum(F(lam)).passed, lam
    cert = certify_st_continuum(F(42, 100))
    assert not cert.passed and cert.conclusion is None
    labels = [c.label for c in cert.failures]
    assert any(lab.startswith("Table 1 row 3") for lab in labels)
    assert cert.first_failure.label.startswith("Step II pair 1")


def test_st_certificate_records_window():
    lam = F(46, 100)
    cert = certify_st_continuum(lam)
    lo = (1 - lam) * (1 - lam + lam**2 - lam**3)
    assert cert.conclusion["window"] == [f"{lo.numerator}/{lo.denominator}", "1/1"]
    assert st_window(lam) == OpenInterval(lo, 1)


def test_st_certificate_is_sharp_at_table_1_row_3():
    b = named_threshold("table1_row(3)")
    assert certify_st_continuum(b.hi).passed
    below = certify_st_continuum(b.lo)
    assert not below.passed
    assert [c.label.split(" (2.2)")[0] for c in below.failures] == ["Table 1 row 3"]


def test_fk_certificate_examples():
    assert certify_fk_coverage(2, F(47, 100)).passed
    assert certify_fk_coverage(3, F(48, 100)).passed
    for k, lam in ((2, F(45, 100)), (3, F(47, 100))):
        cert = certify_fk_coverage(k, lam)
        assert not cert.passed
        assert cert.first_failure.label.startswith(f"λ >= λ_{k}")
    assert not certify_fk_coverage(4, F(1, 3)).passed
    assert certify_fk_coverage(2, F(47, 100)).conclusion["range"] == ["0/1", "1/1"]


def test_circle_certificate_examples():
    assert certify_circle_continuum(F(46, 100)).passed
    failing = [c.label for c in certify_circle_continuum(F(45, 100)).failures]
    assert failing and all(lab.startswith("circle pair 3") for lab in failing)
    failing = {c.label.split(" (4.1)")[0] for c in certify_circle_continuum(F(44, 100)).failures}
    assert "circle pair 1" in failing


@pytest.mark.parametrize("k,lam", [(2, F(47, 100)), (3, F(48, 100)), (2, F(49, 100))])
def test_passing_fk_certificate_has_no_finite_rank_gaps(k, lam):
    assert certify_fk_coverage(k, lam).passed
    for m in range(0, 6):
        assert not gap_report(k, lam, m).has_gaps


@pytest.mark.parametrize("kind,lam,k", [("st", "0.46", None), ("fk", "0.45", 2), ("circle", "0.44", None)])
def test_certificate_json_round_trip(kind, lam, k):
    cert = certify(kind, F(lam), k)
    text = cert.to_json()
    assert Certificate.from_json(text).to_json() == text
    d = json.loads(text)
    assert set(d) == {"kind", "lambda", "k", "checks", "conclusion"}
    assert d["lambda"] == f"{F(lam).numerator}/{F(lam).denominator}"


def test_certificate_rejects_tampering():
    d = json.loads(certify_st_continuum(F(46, 100)).to_json())
    d["checks"][0]["holds"] = False
    with pytest.raises(ValueError):
        Certificate.from_dict(d)
    d = json.loads(certify_st_continuum(F(42, 100)).to_json())
    d["conclusion"] = {"statement": "forged"}
    with pytest.raises(ValueError):
        Certificate.from_dict(d)


def test_certify_dispatch_errors():
    with pytest.raises(ValueError):
        certify("fk", F(47, 100))
    with pytest.raises(ValueError):
        certify("torus", F(47, 100))

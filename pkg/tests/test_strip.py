from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpstrip.admissibility import classify
from lpstrip.errors import (
    BadIndex,
    DegreeOutOfRange,
    ExponentOutOfRange,
    NotAdmissible,
    NotGoodRoot,
)
from lpstrip.realforms import RealFormSpec, GroupFamily, parse_group, restricted_root_datum
from lpstrip.rootsys import build_root_system, parse_type
from lpstrip.strip import (
    CohomologyStatus,
    HypStatus,
    Reason,
    StripReport,
    Verdict,
    conjugate_exponent,
    dim_nilradical,
    duality_image,
    group_status,
    hyperbolic_status,
    psi,
    rational_from_json,
    rational_to_json,
    scan,
    status_from_report,
    strip_report,
    to_rational,
)

EXPONENTS = [Fraction(6, 5), Fraction(4, 3), Fraction(3, 2), Fraction(2), Fraction(3), Fraction(5), Fraction(10)]
ADMISSIBLE = [parse_group(r.group) for r in classify(8) if r.admissible]

exponents = st.fractions(min_value=Fraction(101, 100), max_value=50).filter(lambda x: x > 1)


def test_rationals():
    assert to_rational("3/2") == Fraction(3, 2)
    assert to_rational("1.5") == Fraction(3, 2)
    assert to_rational(2) == 2
    with pytest.raises(TypeError):
        to_rational(1.5)
    with pytest.raises(ExponentOutOfRange):
        to_rational("x")
    assert rational_from_json(rational_to_json(Fraction(-7, 3))) == Fraction(-7, 3)


@pytest.mark.parametrize("p,q", [(2, 2), ("3/2", 3), ("7/3", Fraction(7, 4)), (3, Fraction(3, 2))])
def test_conjugate_exponent(p, q):
    assert conjugate_exponent(p) == q


@pytest.mark.parametrize("p", [1, "1/2", 0, -3])
def test_exponent_range(p):
    with pytest.raises(ExponentOutOfRange):
        conjugate_exponent(p)


def test_psi_sizes():
    for n in range(2, 8):
        c = build_root_system(parse_type(f"C{n}"))
        assert len(psi(c, n)) == n * (n + 1) // 2
    for n in range(4, 8):
        d = build_root_system(parse_type(f"D{n}"))
        assert len(psi(d, 1)) == 2 * (n - 1)
    for n in range(1, 8):
        a = build_root_system(parse_type(f"A{n}"))
        for i in range(1, n + 1):
            assert len(psi(a, i)) == i * (n + 1 - i)
    with pytest.raises(BadIndex):
        psi(build_root_system(parse_type("A3")), 4)


def test_nilradical_examples():
    for l in range(2, 7):
        assert dim_nilradical(restricted_root_datum(parse_group(f"SU({l},{l})")), l) == l * l
        assert dim_nilradical(restricted_root_datum(parse_group(f"Sp({l},{l})")), l) == 2 * l * l + l
    assert dim_nilradical(restricted_root_datum(parse_group("E7^3")), 3) == 27
    with pytest.raises(NotGoodRoot):
        dim_nilradical(restricted_root_datum(parse_group("SO(3,5)")), 2)


def test_strip_examples():
    r = strip_report(parse_group("SL(4,R)"))
    assert (r.d_minus_1, r.D, r.width, r.chosen_gamma) == (4, 9, 6, 2)
    r = strip_report(parse_group("E7^7"))
    # 70 - 28 + 2; (d-2)/D = 26/70 = 13/35
    assert (r.d_minus_1, r.D, r.width, r.proportion) == (27, 70, 44, Fraction(13, 35))
    r = strip_report(parse_group("E6^6"))
    assert (r.d_minus_1, r.D, r.proportion) == (16, 42, Fraction(5, 14))


@pytest.mark.parametrize("q", range(2, 12))
def test_real_hyperbolic_groups(q):
    r = strip_report(parse_group(f"SO(1,{q})"))
    assert (r.d_minus_1, r.D, r.width) == (q - 1, q, 2)


def test_gamma_selection_and_override():
    r = strip_report(parse_group("SO(5,5)"))
    assert r.chosen_gamma == 4 and r.d_minus_1 == 10
    assert dict(r.alternatives) == {1: 8, 5: 10}
    r1 = strip_report(parse_group("SO(5,5)"), gamma=1)
    assert r1.d_minus_1 == 8 and r1.width == r.width + 2
    with pytest.raises(NotGoodRoot):
        strip_report(parse_group("SO(5,5)"), gamma=2)
    with pytest.raises(BadIndex):
        strip_report(parse_group("SO(5,5)"), gamma=9)
    with pytest.raises(NotAdmissible):
        strip_report(parse_group("E8^8"))
    with pytest.raises(NotAdmissible):
        strip_report(parse_group("SU(2,5)"))


@pytest.mark.parametrize("g", ADMISSIBLE, ids=str)
def test_report_invariants_and_roundtrip(g):
    r = strip_report(g)
    assert r.d == r.d_minus_1 + 1
    assert r.width == r.D - r.d + 2
    assert 2 <= r.width <= r.D
    assert r.proportion == Fraction(r.d - 2, r.D)
    assert all(dm1 <= r.d_minus_1 for _, dm1 in r.alternatives)
    datum = restricted_root_datum(g)
    for i, dm1 in r.alternatives + ((r.chosen_gamma, r.d_minus_1),):
        assert dim_nilradical(datum, i) == dm1
    assert StripReport.from_dict(r.to_dict()) == r


# ---- real hyperbolic space


def test_hyperbolic_examples():
    assert hyperbolic_status(3, 2, 2) == HypStatus(zero=False, hausdorff=False, reduced_zero=True)
    s = hyperbolic_status(4, 2, 2)
    assert (s.zero, s.hausdorff) == (False, True)
    assert hyperbolic_status(5, 2, 0).zero
    with pytest.raises(DegreeOutOfRange):
        hyperbolic_status(5, 2, -1)
    with pytest.raises(ExponentOutOfRange):
        hyperbolic_status(5, 1, 2)


def test_duality_examples():
    assert duality_image(5, 2, 3) == ((2, 3), (2, 2))
    assert duality_image(4, 3, 0).hausdorff_dual == (Fraction(3, 2), 5)
    assert duality_image(9, Fraction(4, 3), 7).hausdorff_dual == (4, 3)
    with pytest.raises(DegreeOutOfRange):
        duality_image(4, 2, 5)


def nonzero_degrees(d, p):
    return [k for k in range(d + 1) if not hyperbolic_status(d, p, k).zero]


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 40), exponents, st.data())
def test_duality_clauses(d, p, data):
    k = data.draw(st.integers(0, d))
    s = hyperbolic_status(d, p, k)
    (q, kh), (_, kr) = duality_image(d, p, k)
    if 1 <= kh <= d:
        assert s.hausdorff == hyperbolic_status(d, q, kh).hausdorff
    if 0 <= kr <= d:
        assert s.reduced_zero == hyperbolic_status(d, q, kr).reduced_zero


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 40), exponents)
def test_single_nonzero_degree(d, p):
    ks = nonzero_degrees(d, p)
    t = Fraction(d - 1) / p
    assert len(ks) == 1
    assert t < ks[0] <= t + 1


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 40), exponents, st.data())
def test_hyp_status_consistency(d, p, data):
    k = data.draw(st.integers(0, d + 2))
    s = hyperbolic_status(d, p, k)
    # vanishing implies Hausdorff and reduced vanishing
    if s.zero:
        assert s.hausdorff and s.reduced_zero
    if not s.hausdorff:
        assert not s.zero
    assert HypStatus.from_dict(s.to_dict()) == s


# ---- group verdicts


def test_query_examples():
    sl4 = parse_group("SL(4,R)")
    assert group_status(sl4, 2, 2) == CohomologyStatus(Verdict.VanishesUnreduced, Reason.LOWER_TAIL)
    assert group_status(sl4, 2, 8).reason is Reason.UPPER_TAIL
    s = group_status(parse_group("SU(3,3)"), 100, 1)
    assert (s.verdict, s.reason) == (Verdict.VanishesUnreduced, Reason.DEGREE_ONE)


def test_sl4_scan():
    reasons = [s.reason.value for s in scan(parse_group("SL(4,R)"), 2)]
    assert reasons == [
        "degree-zero",
        "degree-one-corollary",
        "lower-tail",
        "inside-strip",
        "inside-strip",
        "inside-strip",
        "inside-strip",
        "reduced-band",
        "upper-tail",
        "degree-at-least-D",
    ]


def test_ell_reported_for_non_integral_threshold():
    r = strip_report(parse_group("SL(4,R)"))
    s = status_from_report(r, 3, 2)  # t = 4/3
    assert s.verdict is Verdict.Unknown and s.ell == 2
    s = status_from_report(r, 2, 3)  # t = 2 integral
    assert s.verdict is Verdict.Unknown and s.ell is None


def test_rank_one_degree_one():
    r = strip_report(parse_group("SO(1,6)"))
    assert status_from_report(r, 10, 1).reason is Reason.INSIDE_STRIP
    assert status_from_report(r, 5, 1).reason is Reason.LOWER_TAIL


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(ADMISSIBLE), exponents, st.data())
def test_verdict_properties(g, p, data):
    r = strip_report(g)
    k = data.draw(st.integers(0, r.D + 2))
    s = status_from_report(r, p, k)
    assert CohomologyStatus.from_dict(s.to_dict()) == s
    t = Fraction(r.d_minus_1) / p
    if s.verdict is Verdict.Unknown:
        assert t < k < t + r.width - 1 and 1 <= k < r.D
        assert not (k == 1 and r.rank >= 2)
    if s.reason is Reason.LOWER_TAIL:
        # clause (c) is monotone: every smaller positive degree also vanishes
        assert all(status_from_report(r, p, j).verdict is Verdict.VanishesUnreduced for j in range(k + 1))
    # a larger exponent only shrinks the lower tail
    if s.reason is Reason.LOWER_TAIL and p > 2:
        assert status_from_report(r, Fraction(p) - 1, k).verdict is Verdict.VanishesUnreduced


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(ADMISSIBLE), exponents)
def test_scan_covers_all_degrees(g, p):
    statuses = scan(g, p)
    r = strip_report(g)
    assert len(statuses) == r.D + 1
    unknown = [k for k, s in enumerate(statuses) if s.verdict is Verdict.Unknown]
    if unknown:
        assert unknown == list(range(unknown[0], unknown[-1] + 1))


def test_degree_out_of_range():
    with pytest.raises(DegreeOutOfRange):
        group_status(parse_group("SL(3,R)"), 2, -1)


@pytest.mark.parametrize(
    "make,limit",
    [
        (lambda l: RealFormSpec(GroupFamily.SL_R, (l + 1,)), Fraction(1, 2)),
        (lambda l: RealFormSpec(GroupFamily.Sp2n_R, (l,)), Fraction(1, 2)),
        (lambda l: RealFormSpec(GroupFamily.Complex, (l,), "B"), Fraction(0)),
    ],
)
def test_proportion_converges(make, limit):
    gaps = [abs(strip_report(make(l)).proportion - limit) for l in (50, 100)]
    assert gaps[0] > gaps[1]

import json
import math
import random
from fractions import Fraction

import pytest

from expanderlab import (
    FormRequiredError,
    FpSet,
    NonDegenerateRequiredError,
    QuadPoly2,
    check_cauchy_schwarz_step,
    d4_exact,
    d4_search,
    energy3,
    full_set,
    lift_to_three,
    make_field,
    parse_set,
    report_d4_image_bound,
    report_garaev,
    report_growth_exponent,
    report_his,
    report_incidence_regime,
    report_kmps_energy,
    report_rss,
    report_shakan_shkredov,
)
from expanderlab.inequality import GROWTH_EXPONENT
from helpers import random_subset

F5 = make_field(5)
F101 = make_field(101)


def test_his_full_field():
    report = report_his(full_set(F5))
    assert report.lhs == 125
    assert report.rhs == pytest.approx(125 + 25 * math.sqrt(5))
    assert report.holds is None
    assert report.context["m"] == 5 and report.context["n"] == 5


def test_his_singleton():
    report = report_his(FpSet(F5, (0,)))
    assert report.lhs == 1
    assert report.rhs == pytest.approx(1 / 5 + math.sqrt(5))


def test_his_constant_linearity():
    a = parse_set(F101, "rand:12,3")
    assert report_his(a, c=2.0).rhs == pytest.approx(2 * report_his(a).rhs)


def test_garaev_branches():
    small = parse_set(F101, "list:0,1,2")       # |A|^3 <= q^2: mid-range branch
    rep_small = report_garaev(small)
    assert rep_small.context["branch"] == "mid-range"
    assert rep_small.rhs == pytest.approx(9 / math.sqrt(101))
    big = parse_set(F5, "list:0,1,2,3")          # 64 > 25: large branch
    rep_big = report_garaev(big)
    assert rep_big.context["branch"] == "large"
    assert rep_big.rhs == pytest.approx(math.sqrt(5 * 4))
    assert rep_big.lhs == max(
        len({(a + b) % 5 for a in big.elements for b in big.elements}),
        len({a * b % 5 for a in big.elements for b in big.elements}),
    )
    assert rep_small.holds is None and rep_big.holds is None


def test_rss_singleton_ratio_one():
    report = report_rss(FpSet(F101, (3,)))
    assert report.lhs == 1 and report.rhs == 1.0 and report.ratio == 1.0


def test_rss_random_set():
    fld = make_field(10007)
    a = parse_set(fld, "rand:32,11")
    report = report_rss(a)
    assert report.rhs == pytest.approx(32 ** (11 / 9))
    assert report.lhs == max(report.context["m"], report.context["n"])
    assert report.holds is None


def test_shakan_shkredov_pair():
    a = FpSet(F5, (0, 1))
    d4 = d4_exact(a, full_set(F5))
    report = report_shakan_shkredov(a, d4)
    assert report.lhs == Fraction(9, 8)
    assert report.rhs == pytest.approx(2 ** (48 / 13) / 3 ** (35 / 13), rel=1e-12)
    assert 0.67 == pytest.approx(report.rhs, abs=5e-3)
    assert report.holds is None


def test_shakan_shkredov_singleton():
    a = FpSet(F5, (2,))
    report = report_shakan_shkredov(a, d4_exact(a, full_set(F5)))
    assert report.lhs == 1 and report.rhs == pytest.approx(1.0)


def test_shakan_shkredov_heuristic_mode_recorded():
    fld = make_field(101)
    a = parse_set(fld, "ap:0,3,8")
    report = report_shakan_shkredov(a, d4_search(a, seed=2))
    assert report.context["d4_mode"] == "heuristic-lower-bound"


def test_d4_image_bound_example():
    a = FpSet(F101, (0, 1))
    f = QuadPoly2(F101, 1, 0, 0, 0, 1, 0)
    d4 = d4_search(a, seed=0)
    report = report_d4_image_bound(a, f, d4)
    assert report.context["image_size"] == 3
    assert report.rhs == Fraction(9, 4)
    assert report.lhs == Fraction(9, 8)
    assert report.context["size_within_sqrt_p"] is True
    assert report.holds is None


def test_d4_image_bound_singleton():
    a = FpSet(F101, (7,))
    f = QuadPoly2(F101, 1, 0, 0, 0, 1, 0)
    report = report_d4_image_bound(a, f, d4_search(a, seed=0))
    assert report.lhs == 1 and report.rhs == 1


def test_d4_image_bound_rejects_degenerate():
    f = QuadPoly2(F101, 1, 1, 2, 1, 1, 0)  # (x+y)^2 + (x+y)
    a = FpSet(F101, (0, 1))
    with pytest.raises(NonDegenerateRequiredError):
        report_d4_image_bound(a, f, d4_search(a, seed=0))


def test_kmps_energy_example():
    F7 = make_field(7)
    F = lift_to_three(QuadPoly2(F7, 1, 0, 0, 0, 1, 0))
    a = FpSet(F7, (0, 1))
    e3 = energy3(F, a, a, a)
    report = report_kmps_energy(F, a, a, a, e3)
    assert report.lhs == 16
    assert report.rhs == pytest.approx(8**1.5 + 6 * 8 + 16)
    assert report.holds is None


def test_kmps_energy_singletons():
    F7 = make_field(7)
    F = lift_to_three(QuadPoly2(F7, 0, 0, 1, 0, 0, 0))  # (u+v)w
    s = FpSet(F7, (1,))
    e3 = energy3(F, s, s, s)
    report = report_kmps_energy(F, s, s, s, e3)
    assert report.lhs == 1
    assert report.rhs == pytest.approx(1 + 3 + 1)


def test_kmps_energy_random_sets():
    rand = random.Random(7)
    F = lift_to_three(QuadPoly2(F101, 1, 0, 0, 0, 1, 0))
    a = random_subset(rand, 101, 8, min_size=8)
    b = random_subset(rand, 101, 8, min_size=8)
    c = random_subset(rand, 101, 8, min_size=8)
    e3 = energy3(F, a, b, c)
    report = report_kmps_energy(F, a, b, c, e3)
    assert report.lhs == e3.energy
    assert report.context["hypothesis_abc_below_p2"] == (8**3 <= 101**2)


def test_kmps_rejects_split_form():
    F7 = make_field(7)
    split = lift_to_three(QuadPoly2(F7, 1, 1, 2, 1, 1, 0))  # lift of a composition
    s = FpSet(F7, (0, 1))
    with pytest.raises(FormRequiredError):
        report_kmps_energy(split, s, s, s, energy3(split, s, s, s))


def test_growth_exponent_example():
    a = FpSet(F101, (0, 1))
    f = QuadPoly2(F101, 1, 0, 0, 0, 1, 0)
    report = report_growth_exponent(a, f)
    assert report.lhs == 3
    assert report.rhs == pytest.approx(2 ** (74 / 61))
    assert report.context["exponent"] == "74/61"
    assert GROWTH_EXPONENT == Fraction(6, 5) + Fraction(4, 305) == Fraction(74, 61)


def test_growth_exponent_singleton():
    a = FpSet(F101, (9,))
    f = QuadPoly2(F101, 1, 0, 0, 0, 1, 0)
    report = report_growth_exponent(a, f)
    assert report.lhs == 1 and report.rhs == 1.0


def test_growth_exponent_interval_64():
    fld = make_field(1000003)
    a = parse_set(fld, "interval:0,64")
    f = QuadPoly2(fld, 1, 0, 0, 0, 1, 0)
    image = {(x * x + y) % fld.p for x in a.elements for y in a.elements}
    report = report_growth_exponent(a, f)
    assert report.lhs >= len(image)
    assert report.context["image_size"] == len(image)


def test_cauchy_schwarz_step_example():
    a = FpSet(F101, (0, 1, 2))
    f = QuadPoly2(F101, 1, 0, 0, 0, 1, 0)
    report = check_cauchy_schwarz_step(f, a, a, 2)
    assert report.holds is True
    ctx = report.context
    assert ctx["level_set_size"] == 3
    assert ctx["solutions"] >= ctx["solution_lower_bound"] == 3 * 2 * 3
    assert ctx["solutions"] ** 2 <= ctx["image_size"] * ctx["energy3"]


def test_cauchy_schwarz_step_empty_level_set():
    a = FpSet(F101, (0, 50))
    f = QuadPoly2(F101, 1, 0, 0, 0, 1, 0)
    report = check_cauchy_schwarz_step(f, a, a, 3)  # max r is 2, so D_3 is empty
    assert report.context["level_set_size"] == 0
    assert report.context["solutions"] == 0
    assert report.holds is True


def test_cauchy_schwarz_step_random_instances():
    rand = random.Random(71)
    done = 0
    while done < 100:
        p = rand.choice((101, 10007))
        fld = make_field(p)
        f = QuadPoly2(fld, *(rand.randrange(p) for _ in range(6)))
        from expanderlab import classify_degenerate

        if classify_degenerate(f).degenerate:
            continue
        A = random_subset(rand, p, 6, min_size=2)
        B = random_subset(rand, p, 6, min_size=2)
        report = check_cauchy_schwarz_step(f, A, B, rand.randint(1, 3))
        assert report.holds is True
        done += 1


def test_incidence_regime_report():
    a = FpSet(F101, (0, 1, 2, 3))
    f = QuadPoly2(F101, 1, 0, 0, 0, 1, 0)
    report = report_incidence_regime(f, a, a, 2)
    assert report.holds is None
    assert report.lhs == 101 * 4
    assert report.rhs == report.context["image_size"] * 16
    assert report.context["dense_regime"] == (
        report.context["level_set_size"] * 16 >= 101 * 101
    )


def test_reports_are_reproducible_and_serializable():
    a = parse_set(F101, "rand:10,4")
    f = QuadPoly2(F101, 1, 0, 0, 0, 1, 0)
    r1 = report_growth_exponent(a, f)
    r2 = report_growth_exponent(a, f)
    assert r1 == r2
    blob = json.dumps(r1.to_json_dict(), sort_keys=True)
    parsed = json.loads(blob)
    assert set(parsed) == {"name", "lhs", "rhs", "ratio", "holds", "context"}
    assert parsed["holds"] == "not_adjudicable"


def test_exact_rational_sides_serialize_exactly():
    a = FpSet(F101, (0, 1))
    f = QuadPoly2(F101, 1, 0, 0, 0, 1, 0)
    report = report_d4_image_bound(a, f, d4_search(a, seed=0))
    blob = report.to_json_dict()
    assert blob["lhs"] == "9/8" and blob["rhs"] == "9/4"

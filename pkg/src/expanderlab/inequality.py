"""Two-sided evaluation of the growth and energy inequalities under study.

Each `report_*` function computes both sides of one inequality on
concrete sets and returns an `IneqReport`.  Statements that are only
true up to an unspecified constant are never adjudicated: their `holds`
field is None ("not adjudicable") and the constant is fixed to 1 purely
for comparability of ratios across runs.  The two constant-free checks
(`check_cauchy_schwarz_step`, and the incidence bound in the incidence
module) compare integers exactly and do return True/False.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import sqrt
from typing import Any

from .errors import FormRequiredError, NonDegenerateRequiredError
from .fieldset import FpSet
from .quadpoly import (
    QuadPoly2,
    QuadPoly3,
    classify_degenerate,
    classify_form3,
    lift_to_three,
    swap_normalize,
)
from .setstats import (
    D4Result,
    Energy3Result,
    count_solutions,
    energy3,
    image2,
    level_set,
    product_set,
    sumset,
)

# max{|A+A|, |f(A,A)|} is measured against |A| to this exponent.
GROWTH_EXPONENT = Fraction(74, 61)  # = 6/5 + 4/305
RSS_EXPONENT = Fraction(11, 9)      # = 1 + 2/9
D4_LOWER_NUM = Fraction(48, 13)
D4_LOWER_DEN = Fraction(35, 13)


@dataclass(frozen=True)
class IneqReport:
    """One inequality instance: sides, ratio, verdict, and input context.

    holds is True/False only for constant-free statements; None means the
    statement carries an unspecified constant and is not adjudicable.
    """

    name: str
    lhs: Any
    rhs: Any
    ratio: float | None
    holds: bool | None
    context: dict = dc_field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _json_num(self.lhs),
            "rhs": _json_num(self.rhs),
            "ratio": self.ratio,
            "holds": "not_adjudicable" if self.holds is None else self.holds,
            "context": {k: _json_num(v) for k, v in self.context.items()},
        }


def _json_num(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, (int, float, str)):
        return v
    return str(v)


def _safe_ratio(lhs, rhs) -> float | None:
    lf, rf = float(lhs), float(rhs)
    return lf / rf if rf != 0 else None


def report_his(A: FpSet, c: float = 1.0) -> IneqReport:
    """|A|^3 vs c*m^2*n*|A|/q + c*q^(1/2)*m*n with m = |A+A|, n = |A*A|, q = p."""
    q = A.field.p
    m = len(sumset(A, A))
    n = len(product_set(A, A))
    lhs = len(A) ** 3
    rhs = c * m * m * n * len(A) / q + c * sqrt(q) * m * n
    return IneqReport(
        name="hart-iosevich-solymosi",
        lhs=lhs,
        rhs=rhs,
        ratio=_safe_ratio(lhs, rhs),
        holds=None,
        context={"size_a": len(A), "m": m, "n": n, "q": q, "c": c, "field": "q = p (prime) only"},
    )


def report_garaev(A: FpSet) -> IneqReport:
    """max{|A+A|, |A*A|} vs |A|^2/sqrt(q) or sqrt(q*|A|), branched at |A| ~ q^(2/3)."""
    q = A.field.p
    m = len(sumset(A, A))
    n = len(product_set(A, A))
    size = len(A)
    lhs = max(m, n)
    small_branch = size**3 <= q * q  # |A| <= q^(2/3), compared exactly
    rhs = size * size / sqrt(q) if small_branch else sqrt(q * size)
    return IneqReport(
        name="garaev",
        lhs=lhs,
        rhs=rhs,
        ratio=_safe_ratio(lhs, rhs),
        holds=None,
        context={
            "size_a": size,
            "m": m,
            "n": n,
            "q": q,
            "branch": "mid-range" if small_branch else "large",
            "hypothesis_sqrt_q_below_a": size * size >= q,
            "field": "q = p (prime) only",
        },
    )


def report_rss(A: FpSet) -> IneqReport:
    """max{|A+A|, |A*A|} vs |A|^(11/9), under the small-set hypothesis |A| <= p^(18/35)."""
    p = A.field.p
    m = len(sumset(A, A))
    n = len(product_set(A, A))
    size = len(A)
    lhs = max(m, n)
    rhs = float(size) ** (11 / 9)
    return IneqReport(
        name="rudnev-shakan-shkredov",
        lhs=lhs,
        rhs=rhs,
        ratio=_safe_ratio(lhs, rhs),
        holds=None,
        context={
            "size_a": size,
            "m": m,
            "n": n,
            "q": p,
            "exponent": str(RSS_EXPONENT),
            "hypothesis_a_below_p_18_35": size**35 <= p**18,
        },
    )


def report_shakan_shkredov(A: FpSet, d4: D4Result) -> IneqReport:
    """d4(A) vs |A|^(48/13) / |A+A|^(35/13)."""
    m = len(sumset(A, A))
    size = len(A)
    lhs = d4.value
    rhs = float(size) ** float(D4_LOWER_NUM) / float(m) ** float(D4_LOWER_DEN)
    return IneqReport(
        name="shakan-shkredov",
        lhs=lhs,
        rhs=rhs,
        ratio=_safe_ratio(lhs, rhs),
        holds=None,
        context={"size_a": size, "m": m, "d4_mode": d4.mode,
                 "note": "heuristic d4 keeps the report one-sided"},
    )


def report_d4_image_bound(A: FpSet, f: QuadPoly2, d4: D4Result) -> IneqReport:
    """d4(A) vs |f(A,A)|^2 / |A|^2, for non-degenerate quadratic f.

    Requires |A| <= sqrt(p) for the underlying statement; the check is
    recorded in the context rather than enforced.
    """
    if classify_degenerate(f).degenerate:
        raise NonDegenerateRequiredError("f is a composition Q(L(x, y)); bound needs non-degenerate f")
    p = A.field.p
    img = len(image2(f, A, A))
    size = len(A)
    lhs = d4.value
    rhs = Fraction(img * img, size * size)
    return IneqReport(
        name="d4-image-bound",
        lhs=lhs,
        rhs=rhs,
        ratio=_safe_ratio(lhs, rhs),
        holds=None,
        context={
            "size_a": size,
            "image_size": img,
            "q": p,
            "d4_mode": d4.mode,
            "size_within_sqrt_p": size * size <= p,
        },
    )


def report_kmps_energy(F: QuadPoly3, A: FpSet, B: FpSet, C: FpSet, e3: Energy3Result) -> IneqReport:
    """E vs (|A||B||C|)^(3/2) + (|A|+|B|+|C|)(|A||B||C|) + |B|^2|C|^2."""
    if classify_form3(F).of_form:
        raise FormRequiredError("F splits as g(h(x)+k(y)+l(z)); energy bound needs non-split F")
    p = A.field.p
    na, nb, nc = len(A), len(B), len(C)
    prod = na * nb * nc
    lhs = e3.energy
    rhs = float(prod) ** 1.5 + (na + nb + nc) * prod + nb * nb * nc * nc
    return IneqReport(
        name="kmps-energy",
        lhs=lhs,
        rhs=rhs,
        ratio=_safe_ratio(lhs, rhs),
        holds=None,
        context={
            "size_a": na,
            "size_b": nb,
            "size_c": nc,
            "q": p,
            "hypothesis_abc_below_p2": prod <= p * p,
        },
    )


def report_growth_exponent(A: FpSet, f: QuadPoly2) -> IneqReport:
    """max{|A+A|, |f(A,A)|} vs |A|^(74/61).

    The exponent is kept as the exact rational 74/61 in the context; the
    rhs value itself is a float.
    """
    p = A.field.p
    m = len(sumset(A, A))
    img = len(image2(f, A, A))
    size = len(A)
    lhs = max(m, img)
    rhs = float(size) ** (74 / 61)
    return IneqReport(
        name="growth-exponent",
        lhs=lhs,
        rhs=rhs,
        ratio=_safe_ratio(lhs, rhs),
        holds=None,
        context={
            "size_a": size,
            "m": m,
            "image_size": img,
            "q": p,
            "exponent": str(GROWTH_EXPONENT),
            "f_degenerate": classify_degenerate(f).degenerate,
            "size_within_sqrt_p": size * size <= p,
        },
    )


def check_cauchy_schwarz_step(f: QuadPoly2, A: FpSet, B: FpSet, t: int) -> IneqReport:
    """Exact check of the level-set solution-counting step.

    With D_t the level set of r_{A-B}, F the lift of f, and S the number
    of (u, v, w) in D_t x B x A with F(u, v, w) in f(A, A):

        S >= |D_t| * t * |A|      (every x in D_t has >= t difference pairs)
        S^2 <= |f(A,A)| * E       (Cauchy-Schwarz over the image values)

    Both comparisons are on integers; holds is a genuine True/False and a
    False would be an implementation bug.
    """
    fn = swap_normalize(f)
    lifted = lift_to_three(fn)
    d_t = level_set(A, B, t)
    img = image2(f, A, A)
    solutions = count_solutions(lifted, d_t, B, A, img)
    e3 = energy3(lifted, d_t, B, A)
    lower = len(d_t) * t * len(A)
    cs_lhs = solutions * solutions
    cs_rhs = len(img) * e3.energy
    holds = (solutions >= lower) and (cs_lhs <= cs_rhs)
    return IneqReport(
        name="cauchy-schwarz-step",
        lhs=cs_lhs,
        rhs=cs_rhs,
        ratio=_safe_ratio(cs_lhs, cs_rhs),
        holds=holds,
        context={
            "size_a": len(A),
            "size_b": len(B),
            "t": t,
            "level_set_size": len(d_t),
            "image_size": len(img),
            "solutions": solutions,
            "solution_lower_bound": lower,
            "energy3": e3.energy,
        },
    )


def report_incidence_regime(f: QuadPoly2, A: FpSet, B: FpSet, t: int) -> IneqReport:
    """Both sides of the dense-regime consequences p*t^2 <= |f(A,A)|*|B|^2 and
    t >= (|B| |f(A,A)| / |A|)^(2/3), with the regime guard |D_t||A||B| vs p^2
    recorded in the context.  Derived under unspecified-constant hypotheses,
    so never adjudicated."""
    p = A.field.p
    d_t = level_set(A, B, t)
    img = image2(f, A, A)
    lhs = p * t * t
    rhs = len(img) * len(B) ** 2
    t_floor = (len(B) * len(img) / len(A)) ** (2 / 3) if len(A) else None
    return IneqReport(
        name="incidence-regime",
        lhs=lhs,
        rhs=rhs,
        ratio=_safe_ratio(lhs, rhs),
        holds=None,
        context={
            "size_a": len(A),
            "size_b": len(B),
            "t": t,
            "level_set_size": len(d_t),
            "image_size": len(img),
            "q": p,
            "t_lower_bound": t_floor,
            "dense_regime": len(d_t) * len(A) * len(B) >= p * p,
        },
    )

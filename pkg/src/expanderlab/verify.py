"""Self-contained invariant suites behind the `verify` CLI command.

Each suite re-derives a library quantity by independent means (literal
tuple enumeration, exhaustive search, algebraic identities) and compares
against the fast implementation.  Suites call the library through module
attributes so a deliberately faulted build is caught by the comparison,
not masked by shared code paths.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import product

from . import families as families_mod
from . import fieldset as fieldset_mod
from . import incidence as incidence_mod
from . import quadpoly as quadpoly_mod
from . import setstats as setstats_mod


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, condition: bool, message: str) -> None:
        self.cases += 1
        if not condition:
            self.failures.append(message)


def _random_subset(rand: random.Random, p: int, max_size: int, min_size: int = 1):
    size = rand.randint(min_size, max_size)
    return fieldset_mod.FpSet(fieldset_mod.PrimeField(p), rand.sample(range(p), size))


# --- literal tuple-enumeration oracles -------------------------------------

def brute_energy2(A, B) -> int:
    p = A.field.p
    return sum(
        1
        for a1, a2 in product(A.elements, repeat=2)
        for b1, b2 in product(B.elements, repeat=2)
        if (a1 - b1) % p == (a2 - b2) % p
    )


def brute_energy4(A, B) -> int:
    p = A.field.p
    count = 0
    for a_tuple in product(A.elements, repeat=4):
        for b_tuple in product(B.elements, repeat=4):
            diffs = {(a - b) % p for a, b in zip(a_tuple, b_tuple)}
            if len(diffs) == 1:
                count += 1
    return count


def brute_energy3(F, A, B, C) -> int:
    vals = [
        quadpoly_mod.eval3(F, a, b, c)
        for a in A.elements
        for b in B.elements
        for c in C.elements
    ]
    return sum(1 for v in vals for w in vals if v == w)


# --- suites -----------------------------------------------------------------

def suite_field_arithmetic(rand: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("field-arithmetic")
    for p in (7, 101, 10007, (1 << 61) - 1):
        fld = fieldset_mod.make_field(p)
        for _ in range(trials):
            x, y = rand.randrange(p), rand.randrange(p)
            res.check(fld.sub(fld.add(x, y), y) == x, f"(x+y)-y != x for p={p}")
            if y:
                res.check(fld.mul(fld.mul(x, y), fld.inv(y)) == x, f"(x*y)/y != x for p={p}")
                res.check(fld.mul(fld.inv(y), y) == 1, f"inv(y)*y != 1 for p={p}")
    return res


def suite_parse_render(rand: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("set-parse-render")
    for _ in range(trials):
        p = rand.choice((7, 101, 10007))
        fld = fieldset_mod.make_field(p)
        s = _random_subset(rand, p, min(p, 12))
        back = fieldset_mod.parse_set(fld, fieldset_mod.render_set(s))
        res.check(back == s, f"parse(render(S)) != S for {s!r}")
    return res


def suite_quadpoly_consistency(rand: random.Random, trials: int) -> SuiteResult:
    """Exhaustive over F_5: the lift splits as g(h+k+l) iff f is a composition Q(L)."""
    res = SuiteResult("quadpoly-split-consistency")
    fld = fieldset_mod.make_field(5)
    for coeffs in product(range(5), repeat=6):
        if coeffs[:3] == (0, 0, 0):
            continue
        f = quadpoly_mod.QuadPoly2(fld, *coeffs)
        fn = quadpoly_mod.swap_normalize(f)
        degenerate = quadpoly_mod.classify_degenerate(f).degenerate
        of_form = quadpoly_mod.classify_form3(quadpoly_mod.lift_to_three(fn)).of_form
        res.check(degenerate == of_form, f"split/composition mismatch at {coeffs}")
    return res


def suite_quadpoly_swap(rand: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("quadpoly-swap-invariance")
    for _ in range(trials):
        p = rand.choice((5, 7, 101))
        fld = fieldset_mod.make_field(p)
        f = quadpoly_mod.QuadPoly2(fld, *(rand.randrange(p) for _ in range(6)))
        swapped = quadpoly_mod.swap_normalize(f)
        res.check(
            quadpoly_mod.classify_degenerate(f).degenerate
            == quadpoly_mod.classify_degenerate(swapped).degenerate,
            f"swap changed the verdict for {f}",
        )
        u, v, w = (rand.randrange(p) for _ in range(3))
        res.check(
            quadpoly_mod.eval3(quadpoly_mod.lift_to_three(f), u, v, w)
            == quadpoly_mod.eval2(f, (u + v) % p, w),
            f"lift identity failed for {f}",
        )
    return res


def suite_energy_oracles(rand: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("energy-oracles")
    fld = fieldset_mod.make_field(7)
    for _ in range(trials):
        A = _random_subset(rand, 7, 3)
        B = _random_subset(rand, 7, 3)
        C = _random_subset(rand, 7, 3)
        res.check(setstats_mod.energy2(A, B) == brute_energy2(A, B), f"energy2 mismatch {A} {B}")
        res.check(setstats_mod.energy4(A, B) == brute_energy4(A, B), f"energy4 mismatch {A} {B}")
        F = quadpoly_mod.QuadPoly3(fld, *(rand.randrange(7) for _ in range(10)))
        res.check(
            setstats_mod.energy3(F, A, B, C).energy == brute_energy3(F, A, B, C),
            f"energy3 mismatch {A} {B} {C}",
        )
        rep_ab = setstats_mod.rep_function(A, B)
        rep_ba = setstats_mod.rep_function(B, A)
        res.check(
            all(rep_ab.r(x) == rep_ba.r((7 - x) % 7) for x in range(7)),
            "r_{A-B}(x) != r_{B-A}(-x)",
        )
    return res


def suite_trivial_bounds(rand: random.Random, trials: int) -> SuiteResult:
    """Exhaustive over F_7: fourth-energy bounds and the |B| >= |A|^(3/2) collapse."""
    res = SuiteResult("trivial-bounds")
    fld = fieldset_mod.make_field(7)
    subsets = [
        fieldset_mod.FpSet(fld, [i for i in range(7) if mask >> i & 1])
        for mask in range(1, 128)
    ]
    for A in subsets:
        if len(A) < 2:
            continue
        na = len(A)
        for B in subsets:
            nb = len(B)
            e4 = setstats_mod.energy4(A, B)
            res.check(e4 <= na**4 * nb, f"E4 > |A|^4|B| at {A} {B}")
            res.check(e4 <= na * nb * min(na, nb) ** 3, f"E4 > |A||B|min^3 at {A} {B}")
            if nb * nb >= na**3:
                res.check(e4 <= na * nb**3, f"ratio > 1 with |B| >= |A|^1.5 at {A} {B}")
    return res


def suite_dyadic_sandwich(rand: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("dyadic-sandwich")
    for _ in range(trials):
        p = rand.choice((7, 101, 10007))
        A = _random_subset(rand, p, min(p - 1, 12))
        B = _random_subset(rand, p, min(p - 1, 12))
        e4 = setstats_mod.energy4(A, B)
        prof = setstats_mod.dyadic_profile(A, B)
        if prof.argmax is None:
            res.check(e4 == 0, "empty profile but nonzero energy")
            continue
        levels = len(prof.rows)
        res.check(prof.argmax.mass <= e4, f"max dyadic mass exceeds E4 for {A} {B}")
        res.check(e4 <= 16 * levels * prof.argmax.mass, f"E4 above dyadic ceiling for {A} {B}")
        sizes = [row.size_d for row in prof.rows]
        res.check(sizes == sorted(sizes, reverse=True), "level-set sizes increased with t")
    return res


def suite_cauchy_schwarz(rand: random.Random, trials: int) -> SuiteResult:
    from . import inequality as ineq_mod

    res = SuiteResult("cauchy-schwarz-step")
    for _ in range(trials):
        p = rand.choice((101, 10007))
        fld = fieldset_mod.make_field(p)
        f = quadpoly_mod.QuadPoly2(fld, *(rand.randrange(p) for _ in range(6)))
        if quadpoly_mod.classify_degenerate(f).degenerate:
            continue
        A = _random_subset(rand, p, 6, min_size=2)
        B = _random_subset(rand, p, 6, min_size=2)
        t = rand.randint(1, 3)
        report = ineq_mod.check_cauchy_schwarz_step(f, A, B, t)
        res.check(report.holds is True, f"step failed: {report.context}")
    return res


def suite_d4(rand: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("d4-lower-bound")
    fld = fieldset_mod.make_field(13)
    universe = fieldset_mod.full_set(fld)
    for _ in range(min(trials, 10)):
        A = _random_subset(rand, 13, 5)
        exact = setstats_mod.d4_exact(A, universe)
        res.check(exact.value >= 1, f"exact d4 < 1 for {A}")
        heur = setstats_mod.d4_search(A, seed=rand.randrange(1 << 32))
        res.check(heur.value >= 1, f"heuristic d4 < 1 for {A}")
        res.check(heur.value <= exact.value, f"heuristic beat exact sup for {A}")
    return res


def suite_incidence(rand: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("incidence-geometry")
    for p in (3, 5, 7):
        fld = fieldset_mod.make_field(p)
        pts = incidence_mod.all_points(fld)
        planes = incidence_mod.all_planes(fld)
        res.check(len(planes) == p * (p * p + p + 1), f"wrong plane count for p={p}")
        total = incidence_mod.incidences(pts, planes)
        res.check(
            total == len(planes) * p * p,
            f"some plane of F_{p}^3 missed p^2 points",
        )
    for _ in range(trials):
        p = rand.choice((5, 7, 11, 13))
        fld = fieldset_mod.make_field(p)
        quad = [rand.randrange(p) for _ in range(4)]
        if all(v == 0 for v in quad[:3]):
            quad[0] = 1
        lam = rand.randrange(1, p)
        scaled = [v * lam % p for v in quad]
        res.check(
            incidence_mod.canonical_plane(fld, *quad) == incidence_mod.canonical_plane(fld, *scaled),
            "canonicalization not scale-invariant",
        )
    return res


def suite_incidence_bound(rand: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("incidence-bound")
    for _ in range(trials):
        p = rand.choice((5, 7, 11, 13))
        fld = fieldset_mod.make_field(p)
        pts, planes = incidence_mod.random_configuration(
            fld,
            rand.randint(1, min(60, p**3)),
            rand.randint(1, min(60, p * (p * p + p + 1))),
            rand.randrange(1 << 32),
        )
        report = incidence_mod.incidence_bound_check(pts, planes)
        res.check(report.holds is True, f"incidence bound failed: {report.context}")
    return res


def suite_families(rand: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("family-determinism")
    descriptors = ("interval:3", "ap:1,5", "gp:3", "rand", "union:interval:0|ap:50,7")
    for _ in range(trials):
        p = rand.choice((101, 10007))
        fld = fieldset_mod.make_field(p)
        desc = rand.choice(descriptors)
        seed = rand.randrange(1 << 32)
        size = rand.randint(1, 12)
        spec = families_mod.parse_family(desc, seed)
        try:
            first = families_mod.generate(spec, fld, size)
        except families_mod.ProgressionCollisionError:
            continue
        second = families_mod.generate(families_mod.parse_family(desc, seed), fld, size)
        res.check(first == second, f"family {desc} not deterministic")
        res.check(len(first) == size, f"family {desc} produced {len(first)} != {size}")
    return res


def suite_exponent_fit(rand: random.Random, trials: int) -> SuiteResult:
    from . import expcli as expcli_mod

    res = SuiteResult("exponent-fit")
    for _ in range(max(1, trials // 10)):
        slope = rand.uniform(0.5, 2.5)
        scale = rand.uniform(0.5, 4.0)
        xs = [4, 16, 64, 256]
        ys = [scale * x**slope for x in xs]
        fit = expcli_mod.fit_power_law(xs, ys)
        res.check(abs(fit.slope - slope) <= 1e-9 * max(1.0, slope), f"slope {fit.slope} != {slope}")
        res.check(fit.rss <= 1e-18, f"nonzero residual {fit.rss} on exact power data")
    return res


def suite_sweep_determinism(rand: random.Random, trials: int) -> SuiteResult:
    from . import expcli as expcli_mod

    res = SuiteResult("sweep-determinism")
    one = expcli_mod.run_sweep(
        p=10007, family_desc="interval:0", sizes=(4, 8, 16), poly_desc="quad2:1,0,0,0,1,0",
        seed=7, workers=1,
    )
    two = expcli_mod.run_sweep(
        p=10007, family_desc="interval:0", sizes=(4, 8, 16), poly_desc="quad2:1,0,0,0,1,0",
        seed=7, workers=2,
    )
    res.check(
        expcli_mod.rows_to_csv(one.rows) == expcli_mod.rows_to_csv(two.rows),
        "sweep output depends on worker count",
    )
    return res


ALL_SUITES = (
    suite_field_arithmetic,
    suite_parse_render,
    suite_quadpoly_consistency,
    suite_quadpoly_swap,
    suite_energy_oracles,
    suite_trivial_bounds,
    suite_dyadic_sandwich,
    suite_cauchy_schwarz,
    suite_d4,
    suite_incidence,
    suite_incidence_bound,
    suite_families,
    suite_exponent_fit,
    suite_sweep_determinism,
)


def run_all(seed: int, trials: int) -> list[SuiteResult]:
    """Run every suite; `trials` scales the randomized case counts."""
    results = []
    for suite in ALL_SUITES:
        rand = random.Random(f"{seed}:{suite.__name__}")
        results.append(suite(rand, trials))
    return results

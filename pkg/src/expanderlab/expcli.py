"""Command-line surface: single-shot statistics, classification, invariant
verification, d4 searches, incidence checks, and multi-size sweeps with
log-log exponent fitting.

Sweeps persist a CSV (one row per size, fixed column order), a JSON
manifest recording every input needed to reproduce the CSV byte for
byte, and an ordinary-least-squares fit of log(maxgrow) against
log(|A|).  Rows are independent tasks: with --workers N they are
computed in a process pool and re-ordered by input index before
serialization, so the bytes written never depend on scheduling.

Exit codes: 0 success, 1 verification failure, 2 usage/descriptor error,
3 budget/limit error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from fractions import Fraction
from math import log

from . import families, fieldset, incidence, inequality, quadpoly, rng, setstats, verify
from .errors import (
    BudgetExceededError,
    ExpanderLabError,
    SizeAboveSqrtPError,
    SpecSyntaxError,
    UniverseTooLargeError,
)

TOOL_VERSION = "0.1.0"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3

_LIMIT_ERRORS = (BudgetExceededError, UniverseTooLargeError, SizeAboveSqrtPError)


@dataclass(frozen=True)
class SweepRow:
    family: str
    p: int
    size_a: int
    sum_size: int
    prod_size: int
    image_size: int
    maxgrow: int
    ratio_main: float
    d4_lower: str    # exact rational as "num/den", or "" when not requested
    elapsed_ms: str  # integer milliseconds, or "" unless --timing


CSV_FIELDS = (
    "family", "p", "size_a", "sum_size", "prod_size", "image_size",
    "maxgrow", "ratio_main", "d4_lower", "elapsed_ms",
)


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    rss: float
    points: int


@dataclass
class SweepOutcome:
    rows: list[SweepRow]
    fit: ExponentFit
    manifest: dict


def fit_power_law(sizes, values) -> ExponentFit:
    """OLS fit of log(value) against log(size); natural logarithms."""
    if len(sizes) != len(values) or len(sizes) < 2:
        raise ValueError("power-law fit needs at least two (size, value) points")
    xs = [log(s) for s in sizes]
    ys = [log(v) for v in values]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise ValueError("all sizes equal; slope undefined")
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
    intercept = my - slope * mx
    rss = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    return ExponentFit(slope, intercept, rss, n)


def _sweep_row_task(task: tuple) -> SweepRow:
    p, family_desc, size, poly_desc, row_seed, with_d4, timing = task
    field = fieldset.make_field(p)
    spec = families.parse_family(family_desc, row_seed)
    f = quadpoly.parse_poly2(field, poly_desc)
    started = time.perf_counter()
    A = families.generate(spec, field, size)
    sum_size = len(setstats.sumset(A, A))
    prod_size = len(setstats.product_set(A, A))
    image_size = len(setstats.image2(f, A, A))
    maxgrow = max(sum_size, image_size)
    ratio_main = maxgrow / float(size) ** (74 / 61)
    d4_lower = ""
    if with_d4:
        found = setstats.d4_search(A, seed=rng.derive_seed(row_seed, 1))
        d4_lower = f"{found.value.numerator}/{found.value.denominator}"
    elapsed = str(int((time.perf_counter() - started) * 1000)) if timing else ""
    return SweepRow(
        family=family_desc, p=p, size_a=size, sum_size=sum_size, prod_size=prod_size,
        image_size=image_size, maxgrow=maxgrow, ratio_main=ratio_main,
        d4_lower=d4_lower, elapsed_ms=elapsed,
    )


def run_sweep(
    p: int,
    family_desc: str,
    sizes,
    poly_desc: str,
    seed: int = 0,
    workers: int = 1,
    with_d4: bool = False,
    cap_sqrt_p: bool = False,
    timing: bool = False,
) -> SweepOutcome:
    sizes = tuple(int(s) for s in sizes)
    if any(b <= a for a, b in zip(sizes, sizes[1:])) or not sizes:
        raise SpecSyntaxError(f"sizes must be nonempty and strictly increasing, got {sizes}")
    if cap_sqrt_p:
        for s in sizes:
            if s * s > p:
                raise SizeAboveSqrtPError(f"size {s} exceeds sqrt({p})")
    tasks = [
        (p, family_desc, size, poly_desc, rng.derive_seed(seed, i), with_d4, timing)
        for i, size in enumerate(sizes)
    ]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_row_task, tasks))
    else:
        rows = [_sweep_row_task(t) for t in tasks]
    fit = fit_power_law([r.size_a for r in rows], [r.maxgrow for r in rows])
    manifest = {
        "tool": "expanderlab",
        "version": TOOL_VERSION,
        "p": p,
        "family": family_desc,
        "poly": poly_desc,
        "sizes": list(sizes),
        "seed": seed,
        "d4": with_d4,
        "cap_sqrt_p": cap_sqrt_p,
        "timing": timing,
        "generator": rng.GENERATOR_NAME,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "csv_sha256": hashlib.sha256(rows_to_csv(rows).encode()).hexdigest(),
        "fit": asdict(fit),
    }
    return SweepOutcome(rows, fit, manifest)


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows) -> str:
    """UTF-8, LF endings, fixed column order; missing optionals are empty cells.

    Cells are minimally quoted (family descriptors may contain commas), and
    quoting is deterministic, so identical rows always serialize to
    identical bytes.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        writer.writerow(_csv_cell(getattr(row, name)) for name in CSV_FIELDS)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_stats(args) -> int:
    field = fieldset.make_field(args.p)
    A = fieldset.parse_set(field, args.set)
    f = quadpoly.parse_poly2(field, args.poly)
    prof = setstats.dyadic_profile(A, A)
    payload = {
        "p": args.p,
        "set": fieldset.render_set(A),
        "poly": quadpoly.render_poly2(f),
        "size_a": len(A),
        "sum_size": len(setstats.sumset(A, A)),
        "prod_size": len(setstats.product_set(A, A)),
        "image_size": len(setstats.image2(f, A, A)),
        "energy2": setstats.energy2(A, A),
        "energy4": setstats.energy4(A, A),
        "dyadic_argmax": (
            {"t": prof.argmax.t, "size_d": prof.argmax.size_d, "mass": prof.argmax.mass}
            if prof.argmax
            else None
        ),
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for key in (
            "size_a", "sum_size", "prod_size", "image_size", "energy2", "energy4",
        ):
            print(f"{key:12} {payload[key]}")
        if payload["dyadic_argmax"]:
            am = payload["dyadic_argmax"]
            print(f"{'dyadic':12} t={am['t']} |D_t|={am['size_d']} mass={am['mass']}")
    return EXIT_OK


def _witness_payload(verdict) -> dict | None:
    if isinstance(verdict, quadpoly.DegeneracyVerdict):
        if not verdict.degenerate:
            return None
        return {"q": list(verdict.q), "linear": list(verdict.linear)}
    if not verdict.of_form:
        return None
    return {"g": list(verdict.g), "h": list(verdict.h), "k": list(verdict.k), "l": list(verdict.l)}


def cmd_classify(args) -> int:
    field = fieldset.make_field(args.p)
    f = quadpoly.parse_poly2(field, args.poly)
    verdict = quadpoly.classify_degenerate(f)
    lifted = quadpoly.lift_to_three(quadpoly.swap_normalize(f))
    form3 = quadpoly.classify_form3(lifted)
    payload = {
        "p": args.p,
        "poly": quadpoly.render_poly2(f),
        "degenerate": verdict.degenerate,
        "witness": _witness_payload(verdict),
        "lift_of_form": form3.of_form,
        "lift_witness": _witness_payload(form3),
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"{quadpoly.render_poly2(f)}: {verdict.tag}")
        if verdict.degenerate:
            q2, q1, q0 = verdict.q
            alpha, beta = verdict.linear
            print(f"  f = Q(L) with Q(t) = {q2}t^2 + {q1}t + {q0}, L = {alpha}x + {beta}y")
        print(f"  lift f(u+v, w): {form3.tag}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials == 0:
        print("warning: trials=0, all suites pass vacuously")
        return EXIT_OK
    results = verify.run_all(args.seed, args.trials)
    failed = False
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        print(f"[{status}] {res.name}: {res.cases} cases, {len(res.failures)} failures")
        for message in res.failures[:5]:
            print(f"    {message}")
        failed = failed or not res.ok
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_sweep(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    outcome = run_sweep(
        p=args.p,
        family_desc=args.family,
        sizes=sizes,
        poly_desc=args.poly,
        seed=args.seed,
        workers=args.workers,
        with_d4=args.d4,
        cap_sqrt_p=args.cap_sqrt_p,
        timing=args.timing,
    )
    csv_text = rows_to_csv(outcome.rows)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text)
    manifest_path = args.out + ".manifest.json"
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(outcome.manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if args.json:
        print(json.dumps({"manifest": outcome.manifest, "rows": [asdict(r) for r in outcome.rows]},
                         sort_keys=True))
    else:
        print(f"wrote {args.out} ({len(outcome.rows)} rows) and {manifest_path}")
        print(f"fit: slope={outcome.fit.slope:.6f} intercept={outcome.fit.intercept:.6f} "
              f"rss={outcome.fit.rss:.3e}")
    return EXIT_OK


def cmd_d4(args) -> int:
    field = fieldset.make_field(args.p)
    A = fieldset.parse_set(field, args.set)
    if args.mode == "exact":
        universe = fieldset.parse_set(field, args.universe) if args.universe else fieldset.full_set(field)
        result = setstats.d4_exact(A, universe)
    else:
        result = setstats.d4_search(A, seed=args.seed)
    value: Fraction = result.value
    payload = {
        "value": f"{value.numerator}/{value.denominator}",
        "value_float": float(value),
        "maximizer": list(result.maximizer_b.elements),
        "mode": result.mode,
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"d4 {result.mode}: {payload['value']} (~{payload['value_float']:.6f}) "
              f"at B = {payload['maximizer']}")
    return EXIT_OK


def cmd_report(args) -> int:
    """Emit the standard inequality reports for one (set, polynomial) pair."""
    field = fieldset.make_field(args.p)
    A = fieldset.parse_set(field, args.set)
    f = quadpoly.parse_poly2(field, args.poly)
    d4 = setstats.d4_search(A, seed=args.seed)
    reports = [
        inequality.report_his(A),
        inequality.report_garaev(A),
        inequality.report_rss(A),
        inequality.report_growth_exponent(A, f),
        inequality.report_shakan_shkredov(A, d4),
        inequality.check_cauchy_schwarz_step(f, A, A, args.t),
        inequality.report_incidence_regime(f, A, A, args.t),
    ]
    if not quadpoly.classify_degenerate(f).degenerate:
        reports.append(inequality.report_d4_image_bound(A, f, d4))
        lifted = quadpoly.lift_to_three(quadpoly.swap_normalize(f))
        reports.append(
            inequality.report_kmps_energy(lifted, A, A, A, setstats.energy3(lifted, A, A, A))
        )
    payload = json.dumps([r.to_json_dict() for r in reports], sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
        print(f"wrote {len(reports)} reports to {args.out}")
    else:
        print(payload)
    return EXIT_OK


def cmd_incidence_check(args) -> int:
    field = fieldset.make_field(args.p)
    reports = []
    if args.full:
        pts = incidence.all_points(field)
        planes = incidence.all_planes(field)
        reports.append(incidence.incidence_bound_check(pts, planes))
    for i in range(args.trials):
        seed = rng.derive_seed(args.seed, i)
        n_pts = 1 + seed % min(60, args.p**3)
        n_planes = 1 + (seed >> 32) % min(60, args.p * (args.p**2 + args.p + 1))
        pts, planes = incidence.random_configuration(field, n_pts, n_planes, seed)
        reports.append(incidence.incidence_bound_check(pts, planes))
    bad = [r for r in reports if r.holds is not True]
    if args.json:
        print(json.dumps([r.to_json_dict() for r in reports], sort_keys=True))
    else:
        print(f"incidence bound held on {len(reports) - len(bad)}/{len(reports)} configurations")
        for r in bad:
            print(f"  VIOLATION: {r.to_json_dict()}")
    return EXIT_VERIFY_FAILED if bad else EXIT_OK


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expanderlab",
        description="Exact set statistics and growth experiments in prime fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("stats", help="sumset/product/image sizes and energies of one set")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--set", required=True, help="set descriptor, e.g. list:0,1,2 or rand:32,7")
    sp.add_argument("--poly", required=True, help="polynomial descriptor quad2:a,b,c,d,e,g0")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("classify", help="composition-form classification of a quadratic")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify", help="run every invariant suite")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=200)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="multi-size growth sweep with CSV + manifest output")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--family", required=True, help="family descriptor, e.g. interval:0 or ap:1,3")
    sp.add_argument("--sizes", required=True, help="comma-separated, strictly increasing")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True, help="CSV output path")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--d4", action="store_true", help="also record a heuristic d4 lower bound")
    sp.add_argument("--cap-sqrt-p", action="store_true", dest="cap_sqrt_p",
                    help="reject sizes above sqrt(p)")
    sp.add_argument("--timing", action="store_true",
                    help="fill the elapsed_ms column (breaks byte-for-byte reproducibility)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("d4", help="exact or heuristic normalized fourth-moment statistic")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--set", required=True)
    sp.add_argument("--mode", choices=("exact", "search"), default="search")
    sp.add_argument("--universe", default=None, help="universe descriptor for exact mode")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_d4)

    sp = sub.add_parser("report", help="inequality ratio reports for one set and polynomial")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--set", required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--t", type=int, default=2, help="dyadic threshold for the proof-step checks")
    sp.add_argument("--out", default=None, help="write the JSON array here instead of stdout")
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("incidence-check", help="exact point-plane incidence bound checks")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--full", action="store_true", help="also check the complete configuration")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_incidence_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _LIMIT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ExpanderLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

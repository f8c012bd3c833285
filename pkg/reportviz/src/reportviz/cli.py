"""reportviz command line: growth plots and ratio tables from artifact files."""

from __future__ import annotations

import argparse
import sys

from .growth import DEFAULT_REFERENCES, PlotJob, parse_reference_list, render_growth_plot
from .schema import EmptyInputError, SchemaMismatchError
from .table import render_ratio_table


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reportviz",
        description="Render expanderlab sweep CSVs and report JSONs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("growth", help="log-log growth plot with fitted slope")
    sp.add_argument("csv", help="sweep CSV path")
    sp.add_argument("image", help="output image path (png)")
    sp.add_argument("--refs", default=None,
                    help="comma-separated rational reference slopes (default 6/5,74/61,11/9)")
    sp.set_defaults(func=_cmd_growth)

    sp = sub.add_parser("table", help="markdown ratio table from report JSON files")
    sp.add_argument("jsons", nargs="+", help="report JSON files")
    sp.add_argument("out", help="output markdown path")
    sp.set_defaults(func=_cmd_table)

    return parser


def _cmd_growth(args) -> int:
    references = parse_reference_list(args.refs) if args.refs else DEFAULT_REFERENCES
    summary = render_growth_plot(PlotJob(args.csv, args.image, references))
    print(f"wrote {args.image}: slope={summary.slope:.6f} over {summary.points} points")
    return 0


def _cmd_table(args) -> int:
    count = render_ratio_table(args.jsons, args.out)
    print(f"wrote {args.out}: {count} report rows")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SchemaMismatchError, EmptyInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

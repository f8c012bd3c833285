"""Markdown ratio tables for inequality report JSONs."""

from __future__ import annotations

from pathlib import Path

from .schema import load_reports


def _cell(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def reports_to_markdown(reports) -> str:
    lines = [
        "| name | lhs | rhs | ratio | holds |",
        "| --- | --- | --- | --- | --- |",
    ]
    for rep in reports:
        lines.append(
            "| "
            + " | ".join(
                _cell(rep[key]) for key in ("name", "lhs", "rhs", "ratio", "holds")
            )
            + " |"
        )
    return "\n".join(lines) + "\n"


def render_ratio_table(json_paths, out_path: str) -> int:
    """Write one markdown row per report; returns the row count."""
    reports = load_reports(json_paths)
    Path(out_path).parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(reports_to_markdown(reports))
    return len(reports)

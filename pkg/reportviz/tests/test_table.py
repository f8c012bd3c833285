import json

import pytest

from reportviz import SchemaMismatchError, render_ratio_table, reports_to_markdown
from reportviz.cli import main

# values mirror the producer's documented examples
GROWTH_REPORT = {
    "name": "growth-exponent",
    "lhs": 3,
    "rhs": 2.3183829103717374,
    "ratio": 1.2940102619493748,
    "holds": "not_adjudicable",
    "context": {"size_a": 2, "exponent": "74/61"},
}
D4_REPORT = {
    "name": "d4-image-bound",
    "lhs": "9/8",
    "rhs": "9/4",
    "ratio": 0.5,
    "holds": "not_adjudicable",
    "context": {"image_size": 3},
}
CS_REPORT = {
    "name": "cauchy-schwarz-step",
    "lhs": 324,
    "rhs": 966,
    "ratio": 0.335,
    "holds": True,
    "context": {"t": 2},
}


def test_markdown_rows():
    md = reports_to_markdown([GROWTH_REPORT, D4_REPORT, CS_REPORT])
    lines = md.strip().splitlines()
    assert lines[0] == "| name | lhs | rhs | ratio | holds |"
    assert len(lines) == 5
    assert "| growth-exponent | 3 |" in lines[2]
    assert "| d4-image-bound | 9/8 | 9/4 | 0.5 | not_adjudicable |" == lines[3]
    assert lines[4].endswith("| yes |")


def test_render_ratio_table_files(tmp_path):
    single = tmp_path / "one.json"
    single.write_text(json.dumps(GROWTH_REPORT))
    many = tmp_path / "many.json"
    many.write_text(json.dumps([D4_REPORT, CS_REPORT]))
    out = tmp_path / "table.md"
    assert render_ratio_table([single, many], out) == 3
    text = out.read_text()
    assert text.count("\n") == 5
    assert "growth-exponent" in text and "cauchy-schwarz-step" in text


def test_schema_mismatch(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "x", "lhs": 1}))
    with pytest.raises(SchemaMismatchError):
        render_ratio_table([bad], tmp_path / "t.md")


def test_cli_table(tmp_path, capsys):
    src = tmp_path / "r.json"
    src.write_text(json.dumps([GROWTH_REPORT]))
    out = tmp_path / "t.md"
    assert main(["table", str(src), str(out)]) == 0
    assert out.exists()


def test_cli_rejects_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert main(["table", str(bad), str(tmp_path / "t.md")]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_empty_csv_exits_nonzero(tmp_path, capsys):
    from reportviz.schema import SWEEP_COLUMNS

    csv = tmp_path / "empty.csv"
    csv.write_text(",".join(SWEEP_COLUMNS) + "\n")
    assert main(["growth", str(csv), str(tmp_path / "x.png")]) == 2

from __future__ import annotations

import json
from pathlib import Path

import jsonschema
import pytest

from qlie.cli import main
from qlie.semican import read_case_text

SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schemas"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith("{") else out


def check_schema(doc):
    name = doc.get("verb", "error") if doc.get("error") is None else "error"
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    jsonschema.validate(doc, schema)


CASES = [
    (["roots", "--type", "A~1", "--cutoff", "1"], 0),
    (["roots", "--type", "E6"], 0),
    (["partitions", "--type", "D5", "--root", "highest", "--count"], 0),
    (["partitions", "--type", "A3", "--root", "1,1,1"], 0),
    (["epsilon", "--type", "A2", "--root", "1,0", "--beta", "0,1", "--orientation", "1>2"], 0),
    (["bracket", "--type", "D4", "--x", "1*e[1,0,0,0]", "--y", "1*e[1,1,1,1]"], 0),
    (["bracket", "--type", "A~1", "--x", "1*h1(1)", "--y", "1*e[0,1]", "--orientation", "1>0,0>1", "--mixed", "plain"], 0),
    (["hall", "--type", "A2", "--N", "1,0", "--P", "0,1"], 0),
    (["hall", "--type", "A2", "--N", "1,0", "--P", "1,0", "--q", "3"], 0),
    (["hall", "--type", "A3", "--root", "1,1,0", "--beta", "0,0,1"], 0),
    (["stability", "--type", "A2", "--root", "1,1", "--q", "2"], 0),
    (["coeffs", "--type", "A3", "--root", "1,1,1"], 0),
    (["coeffs", "--type", "D5", "--root", "highest", "--normalize", "none"], 0),
    (["validate", "--tables", "d4,d5"], 0),
    (["bps-audit", "--type", "A~2", "--cutoff", "2"], 0),
    (["selfcheck", "--only", "1,10"], 0),
    (["roots", "--type", "Q7"], 2),
    (["partitions", "--type", "A3", "--root", "1,1"], 2),
    (["roots", "--type", "A3", "--bogus"], 2),
    (["hall", "--type", "A4", "--N", "2,2,2,2", "--P", "1,1,1,1"], 3),
    (["stability", "--type", "A3", "--root", "1,1,1", "--q", "8"], 3),
]


@pytest.mark.parametrize("argv,code", CASES, ids=[" ".join(a[:3]) for a, _ in CASES])
def test_outputs_follow_schemas(capsys, argv, code):
    got, doc = run(capsys, *argv)
    assert got == code
    check_schema(doc)


def test_partition_count_example(capsys):
    _, doc = run(capsys, "partitions", "--type", "D5", "--root", "highest", "--count")
    assert doc["count"] == 55


def test_coeffs_example(capsys):
    _, doc = run(capsys, "coeffs", "--type", "A3", "--root", "1,1,1")
    assert len(doc["entries"]) == 4 and doc["complete"]


def test_plain_bracket_example(capsys):
    _, doc = run(capsys, "bracket", "--type", "A~1", "--x", "1*h1(1)", "--y", "1*e[0,1]",
                 "--orientation", "1>0,0>1", "--mixed", "plain")
    assert doc["result"] == "2*e[1,2]"


def test_output_is_byte_stable(capsys):
    argv = ["coeffs", "--type", "D4", "--root", "highest"]
    main(argv)
    a = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == a


def test_pretty_output(capsys):
    assert main(["validate", "--tables", "d4", "--pretty"]) == 0
    out = capsys.readouterr().out
    assert "D4-thetamax;checksum;pass;" in out


def test_validate_detects_mutated_table(tmp_path, capsys):
    text = read_case_text("D5-thetamax")
    path = tmp_path / "d5.tab"
    path.write_text(text.replace("= +2", "= +1", 1))
    code, doc = run(capsys, "validate", "--table-file", str(path))
    assert code == 1 and not doc["ok"]
    check_schema(doc)


def test_validate_cache_dir(tmp_path, capsys):
    assert main(["hall", "--type", "A2", "--N", "1,0", "--P", "0,1", "--cache-dir", str(tmp_path)]) == 0
    capsys.readouterr()
    cache = tmp_path / "hall_polynomials.tab"
    assert cache.exists()
    code, _ = run(capsys, "validate", "--cache-dir", str(tmp_path))
    assert code == 0
    lines = cache.read_text().splitlines()
    lines[1] = lines[1].replace(";1;", ";3;", 1) if ";1;" in lines[1] else lines[1] + "0"
    cache.write_text("\n".join(lines) + "\n")
    code, doc = run(capsys, "validate", "--cache-dir", str(tmp_path))
    assert code == 1
    check_schema(doc)


def test_stability_verdict_lines(capsys):
    _, doc = run(capsys, "stability", "--type", "A2", "--root", "1,1", "--q", "2")
    assert doc["lines"] == ["1,1;-1,1;stable;-", "1,0;0,1;-1,1;unstable;1,0"]

import json
from fractions import Fraction

import numpy as np

from fplab.report import (
    Report,
    encode_quantity,
    reports_from_json,
    reports_to_csv,
    reports_to_json,
    write_reports_csv,
    write_reports_json,
)


def sample_reports():
    r1 = Report(
        kind="demo",
        inputs={"p": 7, "family": "interval:n=3"},
        quantities={"K": encode_quantity(Fraction(19, 10)), "count": 42, "ratio": 0.5},
        flags={"holds": True},
        notes=["first"],
    )
    r2 = Report(kind="demo", inputs={"p": 11}, quantities={"count": 7}, flags={"holds": False})
    return [r1, r2]


def test_encode_quantity():
    assert encode_quantity(Fraction(19, 10)) == "19/10"
    assert encode_quantity(np.int64(3)) == 3 and isinstance(encode_quantity(np.int64(3)), int)
    assert encode_quantity(np.float64(0.5)) == 0.5 and isinstance(encode_quantity(np.float64(0.5)), float)
    assert encode_quantity(None) is None
    assert encode_quantity(True) is True
    assert encode_quantity("x") == "x"


def test_roundtrip_single():
    r = sample_reports()[0]
    back = Report.from_json(r.to_json())
    assert back == r
    assert back.quantities["K"] == "19/10"
    assert Fraction(*map(int, back.quantities["K"].split("/"))) == Fraction(19, 10)


def test_json_is_sorted_and_stable():
    text = reports_to_json(sample_reports())
    assert text == reports_to_json(sample_reports())
    assert text.endswith("\n")
    payload = json.loads(text)
    assert [d["kind"] for d in payload] == ["demo", "demo"]
    keys = list(payload[0].keys())
    assert keys == sorted(keys)
    assert list(payload[0]["inputs"]) == sorted(payload[0]["inputs"])


def test_reports_roundtrip_many():
    reps = sample_reports()
    assert reports_from_json(reports_to_json(reps)) == reps


def test_csv_shape():
    text = reports_to_csv(sample_reports())
    lines = text.splitlines()
    header = lines[0].split(",")
    assert header[:3] == ["schema_version", "kind", "timestamp"]
    assert header[-1] == "notes"
    assert header[3:-1] == sorted(header[3:-1])
    assert "q.K" in header and "in.family" in header and "flag.holds" in header
    assert len(lines) == 3
    # missing cells serialize as empty fields, not literal None
    assert "None" not in text


def test_write_helpers(tmp_path):
    reps = sample_reports()
    jpath = tmp_path / "r.json"
    cpath = tmp_path / "r.csv"
    write_reports_json(jpath, reps)
    write_reports_csv(cpath, reps)
    assert reports_from_json(jpath.read_text()) == reps
    assert cpath.read_text() == reports_to_csv(reps)


def test_summary_lines():
    lines = sample_reports()[0].summary_lines()
    assert lines[0] == "[demo]"
    assert any(ln.startswith("  in  family") for ln in lines)
    assert any(ln.startswith("  out K = 19/10") for ln in lines)
    assert "  note first" in lines


def test_default_timestamp_empty():
    assert Report(kind="x").timestamp == ""

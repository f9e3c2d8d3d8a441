"""Uniform result records with deterministic serialization.

A Report is a flat bundle: inputs (what was run), quantities (named numbers),
flags (named booleans), notes (free text). JSON output sorts keys and never
embeds wall-clock state unless the producer stamps one, so identical runs
serialize byte-identically; exact rationals travel as "num/den" strings.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

SCHEMA_VERSION = 1

Scalar = int | float | str | bool | None


def encode_quantity(x: Any) -> Scalar:
    """Coerce a computed value to a JSON-stable scalar; Fractions stay exact."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return str(x)


@dataclass
class Report:
    """One experiment's record. Sweeps leave timestamp empty for determinism."""

    kind: str
    inputs: dict[str, Scalar] = field(default_factory=dict)
    quantities: dict[str, Scalar] = field(default_factory=dict)
    flags: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    timestamp: str = ""
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "kind": self.kind,
            "timestamp": self.timestamp,
            "inputs": dict(sorted(self.inputs.items())),
            "quantities": dict(sorted(self.quantities.items())),
            "flags": dict(sorted(self.flags.items())),
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Report":
        return cls(
            kind=d["kind"],
            inputs=dict(d.get("inputs", {})),
            quantities=dict(d.get("quantities", {})),
            flags=dict(d.get("flags", {})),
            notes=list(d.get("notes", [])),
            timestamp=d.get("timestamp", ""),
            schema_version=d.get("schema_version", SCHEMA_VERSION),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Report) and other.to_dict() == self.to_dict()

    def summary_lines(self) -> list[str]:
        lines = [f"[{self.kind}]"]
        for kk, vv in sorted(self.inputs.items()):
            lines.append(f"  in  {kk} = {vv}")
        for kk, vv in sorted(self.quantities.items()):
            lines.append(f"  out {kk} = {vv}")
        for kk, vv in sorted(self.flags.items()):
            lines.append(f"  flag {kk} = {vv}")
        for n in self.notes:
            lines.append(f"  note {n}")
        return lines


def reports_to_json(reports: list[Report]) -> str:
    return json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2) + "\n"


def reports_from_json(text: str) -> list[Report]:
    return [Report.from_dict(d) for d in json.loads(text)]


def write_reports_json(path: str | Path, reports: list[Report]) -> None:
    Path(path).write_text(reports_to_json(reports))


def reports_to_csv(reports: list[Report]) -> str:
    """Flat CSV: one row per report, columns = union of prefixed keys, sorted."""
    cols: list[str] = ["schema_version", "kind", "timestamp"]
    seen = set(cols)
    for r in reports:
        for prefix, d in (("in", r.inputs), ("q", r.quantities), ("flag", r.flags)):
            for k in d:
                name = f"{prefix}.{k}"
                if name not in seen:
                    seen.add(name)
                    cols.append(name)
    cols = cols[:3] + sorted(cols[3:])
    cols.append("notes")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in reports:
        flat: dict[str, Any] = {
            "schema_version": r.schema_version,
            "kind": r.kind,
            "timestamp": r.timestamp,
            "notes": "; ".join(r.notes),
        }
        for prefix, d in (("in", r.inputs), ("q", r.quantities), ("flag", r.flags)):
            for k, v in d.items():
                flat[f"{prefix}.{k}"] = v
        w.writerow(["" if flat.get(c) is None else flat.get(c, "") for c in cols])
    return buf.getvalue()


def write_reports_csv(path: str | Path, reports: list[Report]) -> None:
    Path(path).write_text(reports_to_csv(reports))

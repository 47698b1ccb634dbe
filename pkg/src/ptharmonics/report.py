"""Verification reports and their JSON / CSV / text serializations.

Numbers are written with 17 significant digits so every float round-trips.
Complex values appear as ``{"re": .., "im": ..}`` in JSON and as separate
``_re`` / ``_im`` columns in CSV (``_im`` left empty for real values).
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

__all__ = [
    "CheckRecord",
    "Report",
    "ReportIOError",
    "emit",
    "parse_csv",
    "write_report",
    "CSV_HEADER",
    "FORMATS",
]

Number = Union[float, complex]

FORMATS = ("json", "csv", "text")
CSV_HEADER = ("check_id", "expected_re", "expected_im", "observed_re", "observed_im", "deviation", "passed")


class ReportIOError(OSError):
    pass


@dataclass
class CheckRecord:
    check_id: str
    expected: Number
    observed: Number
    deviation: float
    passed: bool


@dataclass
class Report:
    suite: str
    paper_section: str
    config: dict[str, Any]
    tolerance: float
    tool_version: str
    records: list[CheckRecord] = field(default_factory=list)
    lam: Optional[complex] = None
    notes: list[str] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict)

    def add(self, check_id: str, expected: Number, observed: Number, deviation: float | None = None) -> CheckRecord:
        """Append a record; pass iff ``deviation <= tolerance``.

        The deviation defaults to ``|observed - expected|``.
        """
        expected, observed = _coerce(expected), _coerce(observed)
        if deviation is None:
            deviation = abs(observed - expected)
        deviation = float(deviation)
        rec = CheckRecord(check_id, expected, observed, deviation, bool(deviation <= self.tolerance))
        self.records.append(rec)
        return rec

    def add_lower_bound(self, check_id: str, bound: float, observed: float) -> CheckRecord:
        """Record a quantity that must exceed ``bound``; deviation is the shortfall."""
        return self.add(check_id, bound, observed, max(0.0, bound - observed))

    @property
    def summary(self) -> dict[str, Any]:
        devs = [r.deviation for r in self.records]
        passes = sum(r.passed for r in self.records)
        return {
            "max_deviation": max(devs) if devs else 0.0,
            "pass_count": passes,
            "fail_count": len(self.records) - passes,
        }

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.records)


def _coerce(value) -> Number:
    if isinstance(value, (complex, np.complexfloating)):
        return complex(value)
    return float(value)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _json_value(value: Any, depth: int = 0) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, complex):
        return f'{{"re": {_json_value(value.real)}, "im": {_json_value(value.imag)}}}'
    if isinstance(value, float):
        return _fmt(value) if math.isfinite(value) else "null"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_json_value(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{inner}{_json_value(v, depth + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if hasattr(value, "item"):
        return _json_value(value.item(), depth)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _record_dict(r: CheckRecord) -> dict[str, Any]:
    return {
        "check_id": r.check_id,
        "expected": r.expected,
        "observed": r.observed,
        "deviation": r.deviation,
        "pass": r.passed,
    }


def _to_json(report: Report) -> str:
    doc: dict[str, Any] = {
        "suite": report.suite,
        "paper_section": report.paper_section,
        "tool_version": report.tool_version,
        "config": report.config,
        "tolerance": report.tolerance,
    }
    if report.lam is not None:
        doc["lambda"] = complex(report.lam)
    doc["summary"] = report.summary
    doc["records"] = [_record_dict(r) for r in report.records]
    doc["notes"] = report.notes
    doc["extra"] = report.extra
    return _json_value(doc) + "\n"


def _split(value: Number) -> tuple[str, str]:
    if isinstance(value, complex):
        return _fmt(value.real), _fmt(value.imag)
    return _fmt(float(value)), ""


def _to_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in report.records:
        writer.writerow([r.check_id, *_split(r.expected), *_split(r.observed), _fmt(r.deviation), str(r.passed).lower()])
    return buf.getvalue()


def _join(re: str, im: str) -> Number:
    return float(re) if im == "" else complex(float(re), float(im))


def parse_csv(text: str) -> list[CheckRecord]:
    """Inverse of the CSV emitter."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError("missing or unexpected CSV header")
    out = []
    for row in rows[1:]:
        cid, e_re, e_im, o_re, o_im, dev, passed = row
        out.append(CheckRecord(cid, _join(e_re, e_im), _join(o_re, o_im), float(dev), passed == "true"))
    return out


def _num_text(value: Number) -> str:
    if isinstance(value, complex):
        return f"{value.real:.6e}{value.imag:+.6e}j"
    return f"{value:.6e}"


def _to_text(report: Report) -> str:
    lines = [f"suite: {report.suite}", f"verifies: {report.paper_section}", f"tolerance: {report.tolerance:.3e}"]
    if report.lam is not None:
        lines.append(f"lambda: {_num_text(complex(report.lam))}")
    rows = [("check", "expected", "observed", "deviation", "pass")]
    rows += [
        (r.check_id, _num_text(r.expected), _num_text(r.observed), f"{r.deviation:.3e}", "PASS" if r.passed else "FAIL")
        for r in report.records
    ]
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    s = report.summary
    lines.append(f"max deviation {s['max_deviation']:.3e}; {s['pass_count']} passed, {s['fail_count']} failed")
    lines += [f"note: {n}" for n in report.notes]
    return "\n".join(lines) + "\n"


def emit(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return _to_json(report).encode()
    if fmt == "csv":
        return _to_csv(report).encode()
    if fmt == "text":
        return _to_text(report).encode()
    raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")


def write_report(report: Report, fmt: str, path: Union[str, Path]) -> None:
    data = emit(report, fmt)
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise ReportIOError(f"cannot write report to {path}: {exc.strerror or exc}") from exc

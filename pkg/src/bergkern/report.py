"""Structured verification reports with JSON and CSV serialization.

A report has gating rows (they decide the exit status) and informational
rows (adjudication comparisons that are reported but never gate). A row
passes when its relative error is within its tolerance; when the reference
magnitude is below 1e-12 the absolute error is used instead.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

_ABS_FALLBACK = 1e-12


def error_pair(lhs: complex, rhs: complex) -> tuple[float, float]:
    """(abs_err, rel_err) of lhs against the reference rhs."""
    abs_err = abs(lhs - rhs)
    rel_err = abs_err / abs(rhs) if abs(rhs) >= _ABS_FALLBACK else abs_err
    return abs_err, rel_err


def _flatten(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (list, tuple)):
        return [_flatten(v) for v in value]
    return value


@dataclass(frozen=True)
class ReportRow:
    case_id: str
    suite: str
    inputs: dict
    lhs: complex
    rhs: complex
    tol: float

    @property
    def abs_err(self) -> float:
        return error_pair(self.lhs, self.rhs)[0]

    @property
    def rel_err(self) -> float:
        return error_pair(self.lhs, self.rhs)[1]

    @property
    def passed(self) -> bool:
        return self.rel_err <= self.tol

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "suite": self.suite,
            "inputs": {k: _flatten(v) for k, v in self.inputs.items()},
            "lhs": {"re": self.lhs.real, "im": self.lhs.imag},
            "rhs": {"re": self.rhs.real, "im": self.rhs.imag},
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "tol": self.tol,
            "pass": self.passed,
        }


def make_row(case_id: str, suite: str, inputs: dict, lhs, rhs, tol: float) -> ReportRow:
    return ReportRow(case_id, suite, dict(inputs), complex(lhs), complex(rhs), float(tol))


@dataclass
class VerificationReport:
    suite: str
    parameters: dict
    rows: list = field(default_factory=list)
    informational: list = field(default_factory=list)
    wall_time_ms: int = 0

    def sort(self) -> None:
        self.rows.sort(key=lambda r: r.case_id)
        self.informational.sort(key=lambda r: r.case_id)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def summary(self) -> dict:
        passed = sum(1 for r in self.rows if r.passed)
        return {
            "total": len(self.rows),
            "passed": passed,
            "failed": len(self.rows) - passed,
            "max_rel_err": max((r.rel_err for r in self.rows), default=0.0),
            "wall_time_ms": self.wall_time_ms,
        }

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "parameters": self.parameters,
            "rows": [r.to_dict() for r in self.rows],
            "informational": [r.to_dict() for r in self.informational],
            "summary": self.summary(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["case_id", "suite", "gating", "lhs_re", "lhs_im",
                         "rhs_re", "rhs_im", "abs_err", "rel_err", "tol",
                         "pass", "inputs"])
        for gating, rows in ((True, self.rows), (False, self.informational)):
            for r in rows:
                writer.writerow([
                    r.case_id, r.suite, gating,
                    repr(r.lhs.real), repr(r.lhs.imag),
                    repr(r.rhs.real), repr(r.rhs.imag),
                    repr(r.abs_err), repr(r.rel_err), repr(r.tol), r.passed,
                    json.dumps({k: _flatten(v) for k, v in r.inputs.items()},
                               separators=(",", ":")),
                ])
        return buf.getvalue()

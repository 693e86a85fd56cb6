"""Report records and their deterministic serialisation."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from . import __version__
from .algebra_probe import CONSISTENT, EXCEPTION, FALSIFIED

STATUSES = (CONSISTENT, EXCEPTION, FALSIFIED)


@dataclass
class Record:
    check: str
    subject: str
    status: str
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FALSIFIED and not self.witnesses:
            raise ValueError(f"{self.check}/{self.subject}: FALSIFIED without a witness")

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "check": self.check,
            "subject": self.subject,
            "status": self.status,
            "witnesses": self.witnesses,
            "details": self.details,
        }
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 4)
        return out


@dataclass
class Report:
    config: dict
    records: list[Record] = field(default_factory=list)
    tool: str = "normlab"
    version: str = __version__

    def summary(self) -> dict:
        counts = {s: 0 for s in STATUSES}
        for r in self.records:
            counts[r.status] += 1
        counts["total"] = len(self.records)
        return counts

    @property
    def falsified(self) -> bool:
        return any(r.status == FALSIFIED for r in self.records)

    def as_dict(self, timing: bool = True) -> dict:
        return {
            "tool": self.tool,
            "version": self.version,
            "config": self.config,
            "records": [r.as_dict(timing) for r in self.records],
            "summary": self.summary(),
        }


def emit_report(report: Report, fmt: str = "json", timing: bool = True) -> str:
    if fmt == "json":
        return json.dumps(report.as_dict(timing), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        cols = ["check", "subject", "status", "witnesses", "details"] + (["seconds"] if timing else [])
        w.writerow(cols)
        for r in report.records:
            row = [r.check, r.subject, r.status,
                   json.dumps(r.witnesses, separators=(",", ":")),
                   json.dumps(r.details, separators=(",", ":"))]
            if timing:
                row.append("" if r.seconds is None else f"{r.seconds:.4f}")
            w.writerow(row)
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")

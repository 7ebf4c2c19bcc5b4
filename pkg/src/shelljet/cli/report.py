"""Machine-readable reports with a versioned header and canonical JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

REPORT_FORMAT = "shelljet-report"
REPORT_VERSION = "1.0"

__all__ = ["REPORT_FORMAT", "REPORT_VERSION", "Record", "Report", "canonical"]


def canonical(v):
    """Plain JSON values: rationals become ints or 'p/q' strings, tuples lists, keys strings."""
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return int(v)
    if isinstance(v, (Fraction, type(mpq(0)))):
        return int(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return float(f"{v:.12g}")
    if isinstance(v, dict):
        return {str(k): canonical(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [canonical(x) for x in v]
    if isinstance(v, (set, frozenset)):
        return sorted(canonical(x) for x in v)
    if hasattr(v, "to_dict"):
        return canonical(v.to_dict())
    if hasattr(v, "item"):  # numpy scalar
        return canonical(v.item())
    raise TypeError(f"cannot serialise {type(v).__name__}")


@dataclass
class Record:
    name: str
    citation: str
    inputs: dict
    result: object
    status: str
    runtime: float | None = None

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "citation": self.citation,
            "inputs": self.inputs,
            "result": self.result,
            "status": self.status,
        }
        if timings and self.runtime is not None:
            out["runtime"] = round(self.runtime, 3)
        return out


@dataclass
class Report:
    command: str
    input: dict
    records: list[Record] = field(default_factory=list)
    verdict: str = "green"

    def add(self, record: Record) -> Record:
        self.records.append(record)
        return record

    def to_dict(self, timings: bool = False) -> dict:
        return canonical(
            {
                "format": REPORT_FORMAT,
                "version": REPORT_VERSION,
                "command": self.command,
                "input": self.input,
                "records": [r.to_dict(timings) for r in self.records],
                "verdict": self.verdict,
            }
        )

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2) + "\n"

"""Check records and JSON reports shared by the CLI and the acceptance suite."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import __version__

SCHEMA = 1
DEFAULT_SEED = 0x5EC0DE01

PASS, FAIL, EVIDENCE, SKIPPED = "pass", "fail", "evidence", "skipped"
EXACT, CHARP, SAMPLED = "exact", "char-p evidence", "sampled evidence"


@dataclass
class Check:
    name: str
    status: str
    provenance: str = EXACT
    data: dict = field(default_factory=dict)
    seconds: float | None = None

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def as_dict(self, timings: bool = False) -> dict:
        d = {"name": self.name, "status": self.status, "provenance": self.provenance, "data": _jsonable(self.data)}
        if timings and self.seconds is not None:
            d["timing_ms"] = round(1000 * self.seconds, 1)
        return d


def status_of(flag: bool | None) -> str:
    return SKIPPED if flag is None else (PASS if flag else FAIL)


def _jsonable(x: Any):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if hasattr(x, "item"):                       # numpy scalars
        return x.item()
    if hasattr(x, "as_dict"):
        return _jsonable(x.as_dict())
    return str(x)


@dataclass
class Report:
    command: str
    config: dict
    checks: list = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    @property
    def verdict(self) -> str:
        st = {c.status for c in self.checks}
        if FAIL in st:
            return FAIL
        if SKIPPED in st:
            return SKIPPED
        if EVIDENCE in st:
            return EVIDENCE
        return PASS

    def exit_code(self) -> int:
        v = self.verdict
        return 0 if v == PASS else (2 if v == FAIL else 3)

    def as_dict(self, timings: bool = False) -> dict:
        return {
            "schema": SCHEMA,
            "tool": "secdet",
            "version": __version__,
            "command": self.command,
            "config": _jsonable(self.config),
            "checks": [c.as_dict(timings) for c in sorted(self.checks, key=lambda c: c.name)],
            "verdict": self.verdict,
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.as_dict(timings), indent=2, sort_keys=True) + "\n"

    def summary_lines(self) -> list:
        return [f"{c.status.upper():8s} {c.name}" for c in sorted(self.checks, key=lambda c: c.name)]

"""Pass/fail reports shared by the verification routines and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np


def _plain(x):
    """Make numpy scalars and arrays JSON friendly."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed, witness=None) -> bool:
        passed = bool(passed)
        self.checks.append(Check(name, passed, _plain(witness)))
        return passed

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"suite": self.suite,
                "checks": [{"name": c.name, "pass": c.passed, "witness": c.witness}
                           for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_markdown(self) -> str:
        lines = [f"## {self.suite}", "", "| check | result | witness |", "|---|---|---|"]
        for c in self.checks:
            w = "" if c.witness is None else json.dumps(c.witness)
            lines.append(f"| {c.name} | {'pass' if c.passed else 'FAIL'} | {w} |")
        return "\n".join(lines)

    def to_csv(self) -> str:
        import csv
        import io
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "pass", "witness"])
        for c in self.checks:
            w.writerow([c.name, c.passed, "" if c.witness is None else json.dumps(c.witness)])
        return buf.getvalue()

    def __str__(self):
        bad = self.failures()
        head = f"{self.suite}: {len(self.checks) - len(bad)}/{len(self.checks)} checks passed"
        return head + "".join(f"\n  FAIL {c.name}: {c.witness}" for c in bad)

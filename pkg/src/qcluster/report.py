"""Structured pass/fail reports shared by the verification routines and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    detail: Any = None
    category: str = ""


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: Any = None, category: str = "") -> Check:
        c = Check(name, bool(passed), detail, category)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail, c.category))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "category": c.category, "passed": c.passed, "detail": _jsonable(c.detail)}
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        lines = [f"# {self.title}", "status\tcategory\tcheck\tdetail"]
        for c in self.checks:
            detail = "" if c.detail is None else str(c.detail)
            lines.append(f"{'PASS' if c.passed else 'FAIL'}\t{c.category}\t{c.name}\t{detail}")
        lines.append(f"# {'PASS' if self.passed else 'FAIL'}: {sum(c.passed for c in self.checks)}/{len(self.checks)}")
        return "\n".join(lines)


def _jsonable(x: Any) -> Any:
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    return str(x)

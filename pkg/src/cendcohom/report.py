from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of a bounded identity check. Violations are data, not errors."""

    check: str
    bounds: dict[str, Any]
    checked: int = 0
    violations: list[dict[str, Any]] = field(default_factory=list)
    n_violations: int = 0
    max_violations: int = 50

    def record(self, ok: bool, **where: Any) -> None:
        self.checked += 1
        if not ok:
            self.n_violations += 1
            if len(self.violations) < self.max_violations:
                self.violations.append(where)

    @property
    def passed(self) -> bool:
        return self.n_violations == 0

    def first_violation(self) -> dict[str, Any] | None:
        return self.violations[0] if self.violations else None

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "bounds": dict(self.bounds),
            "checked": self.checked,
            "passed": self.passed,
            "n_violations": self.n_violations,
            "first_violation": self.first_violation(),
            "violations": [dict(v) for v in self.violations],
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        b = ", ".join(f"{k}={v}" for k, v in self.bounds.items())
        return f"{status} {self.check} [{b}] checked={self.checked} violations={self.n_violations}"

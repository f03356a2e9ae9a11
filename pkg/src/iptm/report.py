from __future__ import annotations

import json
from dataclasses import dataclass, field

MAX_FAILURES = 32


@dataclass
class CheckReport:
    """Outcome of one verification run; ``failures`` holds (n, expected, actual)."""

    check_name: str
    limit: int
    failures: list[tuple[int, object, object]] = field(default_factory=list)
    max_failures: int = MAX_FAILURES

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, n: int, expected, actual) -> None:
        if len(self.failures) < self.max_failures:
            self.failures.append((int(n), expected, actual))

    def to_dict(self) -> dict:
        return {
            "check": self.check_name,
            "limit": int(self.limit),
            "passed": self.passed,
            "failures": [
                {"n": int(n), "expected": str(exp), "actual": str(act)}
                for n, exp, act in self.failures
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __str__(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.failures)} shown)"
        return f"{self.check_name} [limit={self.limit}]: {status}"


def merge(name: str, limit: int, reports: list[CheckReport]) -> CheckReport:
    """Fold several sub-reports into one, keeping the first failures of each."""
    out = CheckReport(name, limit)
    for rep in reports:
        for n, exp, act in rep.failures:
            out.fail(n, f"{rep.check_name}: {exp}", act)
    return out

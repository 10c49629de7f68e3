from dataclasses import dataclass, field
from typing import List


@dataclass
class SuiteResult:
    """Outcome of one verification suite."""

    name: str
    seed: int
    checks: int = 0
    skipped: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message)

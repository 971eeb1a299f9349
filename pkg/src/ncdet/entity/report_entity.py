from dataclasses import asdict, dataclass, field
from typing import List, Optional


@dataclass(frozen=True)
class FailureRecord:
    """One failed trial, with what is needed to reproduce it (``--seed`` and ``--trials 1``)."""

    trial: int
    seed: int
    checks: List[str]
    detail: str
    matrices: List[dict] = field(default_factory=list)


@dataclass(frozen=True)
class TrialOutcome:
    trial: int
    seed: int
    # "pass", "skip" or "fail"
    status: str
    checks_run: int = 0
    checks_skipped: int = 0
    failure: Optional[FailureRecord] = None


@dataclass
class RunReport:
    suite: str
    scalar: str
    n: int
    seed: int
    trials: int
    passes: int
    skips: int
    failures: List[FailureRecord]
    checks_run: int
    wall_time: float

    def __post_init__(self):
        if self.passes + self.skips + len(self.failures) != self.trials:
            raise ValueError(
                f"inconsistent report: {self.passes} + {self.skips} + {len(self.failures)} != {self.trials}"
            )

    @property
    def ok(self) -> bool:
        return not self.failures and self.passes > 0

    def to_dict(self) -> dict:
        data = asdict(self)
        data["failure_count"] = len(self.failures)
        data["ok"] = self.ok
        return data

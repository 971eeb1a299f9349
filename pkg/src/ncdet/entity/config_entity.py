from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List

from ncdet.algebra.scalars import ScalarKind, Tolerance
from ncdet.constants import DEFAULT_SEED, MOORE_MAX_N, PERMANENT_MAX_N


@dataclass(frozen=True)
class GeneratorConfig:
    low: int = -9
    high: int = 9
    resample_limit: int = 100


@dataclass(frozen=True)
class LimitsConfig:
    moore_max_n: int = MOORE_MAX_N
    permanent_max_n: int = PERMANENT_MAX_N


@dataclass(frozen=True)
class MatrixSchemaConfig:
    # scalar kind name -> number of components per entry
    scalars: Dict[str, int]
    rational_pattern: str
    fields: List[str] = field(default_factory=lambda: ["scalar", "n", "entries"])

    @classmethod
    def default(cls) -> "MatrixSchemaConfig":
        return cls(
            scalars={kind.value: kind.arity for kind in ScalarKind},
            rational_pattern=r"^[+-]?\d+(?:/\d+)?$",
        )


@dataclass
class VerificationConfig:
    root_dir: Path
    suite: str
    n: int
    trials: int
    seed: int = DEFAULT_SEED
    scalar: ScalarKind = ScalarKind.RATIONAL_QUATERNION
    n_jobs: int = 1
    save_report: bool = True
    progress: bool = False
    tolerance: Tolerance = field(default_factory=Tolerance)
    generator: GeneratorConfig = field(default_factory=GeneratorConfig)
    limits: LimitsConfig = field(default_factory=LimitsConfig)


@dataclass(frozen=True)
class SuitePlan:
    suite: str
    n_values: List[int]
    trials: int
    scalar: ScalarKind


@dataclass(frozen=True)
class EvaluationConfig:
    root_dir: Path
    reports_dir: Path
    summary_file: Path

import os
from pathlib import Path
from typing import List, Optional

from box import ConfigBox

from ncdet import logger
from ncdet.algebra.scalars import ScalarKind, Tolerance
from ncdet.constants import (
    CONFIG_FILE_PATH,
    DEFAULT_SEED,
    MAX_N_ENV_VAR,
    PARAMS_FILE_PATH,
    PERMANENT_MAX_N,
    SCHEMA_FILE_PATH,
    SUITES,
)
from ncdet.entity.config_entity import (
    EvaluationConfig,
    GeneratorConfig,
    LimitsConfig,
    MatrixSchemaConfig,
    SuitePlan,
    VerificationConfig,
)
from ncdet.utils.common import create_directories, read_yaml


class ConfigurationManager:
    def __init__(
        self,
        config_filepath=CONFIG_FILE_PATH,
        params_filepath=PARAMS_FILE_PATH,
        schema_filepath=SCHEMA_FILE_PATH,
    ):
        self.config = read_yaml(Path(config_filepath))
        self.params = read_yaml(Path(params_filepath))
        self.schema = read_yaml(Path(schema_filepath))

        create_directories([self.config.artifacts_root])

    @classmethod
    def from_dicts(cls, config: dict, params: Optional[dict] = None, schema: Optional[dict] = None):
        """Build a manager without YAML files; missing sections fall back to entity defaults."""
        manager = cls.__new__(cls)
        manager.config = ConfigBox(config)
        manager.params = ConfigBox(params or {})
        manager.schema = ConfigBox(schema or {})
        return manager

    @classmethod
    def load_or_default(cls) -> "ConfigurationManager":
        paths = (CONFIG_FILE_PATH, PARAMS_FILE_PATH, SCHEMA_FILE_PATH)
        if all(Path(p).exists() for p in paths):
            return cls()
        logger.warning("configuration files not found, using built-in defaults")
        return cls.from_dicts({"artifacts_root": "artifacts"})

    def get_tolerance(self) -> Tolerance:
        config = self.config.get("tolerance", {})
        default = Tolerance()
        return Tolerance(
            rtol=float(config.get("rtol", default.rtol)),
            atol=float(config.get("atol", default.atol)),
        )

    def get_generator_config(self) -> GeneratorConfig:
        config = self.config.get("generator", {})
        default = GeneratorConfig()
        generator_config = GeneratorConfig(
            low=int(config.get("low", default.low)),
            high=int(config.get("high", default.high)),
            resample_limit=int(config.get("resample_limit", default.resample_limit)),
        )
        if generator_config.low > generator_config.high:
            raise ValueError(f"generator range is empty: [{generator_config.low}, {generator_config.high}]")
        return generator_config

    def get_limits_config(self) -> LimitsConfig:
        config = self.config.get("limits", {})
        default = LimitsConfig()
        permanent_max_n = int(config.get("permanent_max_n", default.permanent_max_n))
        override = os.environ.get(MAX_N_ENV_VAR)
        if override:
            permanent_max_n = int(override)
            if permanent_max_n > PERMANENT_MAX_N:
                logger.warning(f"{MAX_N_ENV_VAR}={permanent_max_n} raises the permanent cap above {PERMANENT_MAX_N}")
        return LimitsConfig(
            moore_max_n=int(config.get("moore_max_n", default.moore_max_n)),
            permanent_max_n=permanent_max_n,
        )

    def get_matrix_schema_config(self) -> MatrixSchemaConfig:
        default = MatrixSchemaConfig.default()
        scalars = self.schema.get("SCALARS")
        if not scalars:
            return default
        return MatrixSchemaConfig(
            scalars={name: int(spec.arity) for name, spec in scalars.items()},
            rational_pattern=self.schema.get("RATIONAL_PATTERN", default.rational_pattern),
            fields=list(self.schema.get("FIELDS", default.fields)),
        )

    def get_verification_config(
        self,
        suite: str,
        n: int,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        scalar: Optional[str] = None,
        n_jobs: Optional[int] = None,
        save_report: Optional[bool] = None,
        progress: Optional[bool] = None,
    ) -> VerificationConfig:
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
        config = self.config.get("verification", {})
        root_dir = Path(config.get("root_dir", Path(self.config.artifacts_root) / "verification"))

        verification_config = VerificationConfig(
            root_dir=root_dir,
            suite=suite,
            n=int(n),
            trials=int(trials if trials is not None else self.params.get("trials", 100)),
            seed=int(seed if seed is not None else self.params.get("seed", DEFAULT_SEED)),
            scalar=ScalarKind(scalar or self.params.get("scalar", ScalarKind.RATIONAL_QUATERNION.value)),
            n_jobs=int(n_jobs if n_jobs is not None else config.get("n_jobs", 1)),
            save_report=bool(save_report if save_report is not None else config.get("save_report", True)),
            progress=bool(progress if progress is not None else config.get("progress", False)),
            tolerance=self.get_tolerance(),
            generator=self.get_generator_config(),
            limits=self.get_limits_config(),
        )
        if verification_config.save_report:
            create_directories([verification_config.root_dir])
        return verification_config

    def get_suite_plans(self) -> List[SuitePlan]:
        default_scalar = self.params.get("scalar", ScalarKind.RATIONAL_QUATERNION.value)
        default_trials = int(self.params.get("trials", 100))
        plans = []
        for entry in self.params.get("plans", []):
            if entry.suite not in SUITES:
                raise ValueError(f"params.yaml names an unknown suite: {entry.suite!r}")
            plans.append(
                SuitePlan(
                    suite=entry.suite,
                    n_values=[int(n) for n in entry.n],
                    trials=int(entry.get("trials", default_trials)),
                    scalar=ScalarKind(entry.get("scalar", default_scalar)),
                )
            )
        return plans

    def get_evaluation_config(self) -> EvaluationConfig:
        config = self.config.get("evaluation", {})
        verification = self.config.get("verification", {})
        root_dir = Path(config.get("root_dir", Path(self.config.artifacts_root) / "evaluation"))
        create_directories([root_dir])

        evaluation_config = EvaluationConfig(
            root_dir=root_dir,
            reports_dir=Path(verification.get("root_dir", Path(self.config.artifacts_root) / "verification")),
            summary_file=Path(config.get("summary_file", root_dir / "summary.csv")),
        )
        return evaluation_config

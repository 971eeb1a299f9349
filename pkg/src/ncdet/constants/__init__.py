import os
from pathlib import Path

# Repository root: src/ncdet/constants/__init__.py -> three levels up
ROOT_DIR = Path(os.environ.get("NCDET_HOME", Path(__file__).resolve().parents[3]))

CONFIG_FILE_PATH = ROOT_DIR / "config" / "config.yaml"
PARAMS_FILE_PATH = ROOT_DIR / "params.yaml"
SCHEMA_FILE_PATH = ROOT_DIR / "schema.yaml"

MAX_N_ENV_VAR = "NCDET_MAX_N"

# Hard caps used when no configuration is loaded
MOORE_MAX_N = 8
PERMANENT_MAX_N = 6

DEFAULT_SEED = 42

SUITES = (
    "homology",
    "heredity",
    "sylvester",
    "rowcol",
    "oracle",
    "commutative",
    "predet",
    "thm33",
    "moore",
    "study",
    "norm",
    "census",
)

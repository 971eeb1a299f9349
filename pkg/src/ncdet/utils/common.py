import os
import json
from pathlib import Path

import yaml
from box import ConfigBox
from box.exceptions import BoxValueError
from ensure import ensure_annotations

from ncdet import logger


# ============================================================
# | Function             | Purpose                                  |
# |----------------------|------------------------------------------|
# | read_yaml()          | config.yaml / params.yaml / schema.yaml  |
# | create_directories() | artifacts/ and report folders            |
# | save_json()          | verification reports                     |
# | load_json()          | reports read back by the summary stage   |
# | save_text()          | serialized matrices and expansions       |
# ============================================================


@ensure_annotations
def read_yaml(path_to_yaml: Path) -> ConfigBox:
    """Reads a YAML file and returns its content as a ConfigBox (dot access)."""
    try:
        with open(path_to_yaml) as yaml_file:
            content = yaml.safe_load(yaml_file)
            if content is None:
                raise BoxValueError(f"{path_to_yaml} is empty")
            logger.info(f"yaml file: {path_to_yaml} loaded successfully")
            return ConfigBox(content)
    except BoxValueError:
        raise ValueError(f"yaml file is empty: {path_to_yaml}")
    except Exception as e:
        raise e


@ensure_annotations
def create_directories(path_to_directories: list, verbose=True):
    for path in path_to_directories:
        os.makedirs(path, exist_ok=True)
        if verbose:
            logger.info(f"created directory at: {path}")


@ensure_annotations
def save_json(path: Path, data: dict):
    with open(path, "w") as f:
        json.dump(data, f, indent=4)
    logger.info(f"json file saved at: {path}")


@ensure_annotations
def load_json(path: Path) -> ConfigBox:
    with open(path) as f:
        content = json.load(f)
    logger.info(f"json file loaded successfully from: {path}")
    return ConfigBox(content)


@ensure_annotations
def save_text(path: Path, text: str):
    """Writes text as-is; callers own the trailing newline."""
    with open(path, "w") as f:
        f.write(text)
    logger.info(f"text file saved at: {path}")

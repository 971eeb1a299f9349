from pathlib import Path
from typing import List

import pandas as pd

from ncdet import logger
from ncdet.entity.config_entity import EvaluationConfig
from ncdet.utils.common import load_json

SUMMARY_COLUMNS = [
    "suite",
    "scalar",
    "n",
    "seed",
    "trials",
    "passes",
    "skips",
    "failure_count",
    "checks_run",
    "wall_time",
    "ok",
]


class VerificationSummary:
    def __init__(self, config: EvaluationConfig):
        self.config = config

    def report_files(self) -> List[Path]:
        return sorted(Path(self.config.reports_dir).glob("*.json"))

    def build_table(self) -> pd.DataFrame:
        rows = []
        for path in self.report_files():
            report = load_json(path)
            rows.append({column: report.get(column) for column in SUMMARY_COLUMNS})
        table = pd.DataFrame(rows, columns=SUMMARY_COLUMNS)
        if not table.empty:
            table = table.sort_values(["suite", "scalar", "n"]).reset_index(drop=True)
        return table

    def save_summary(self) -> pd.DataFrame:
        table = self.build_table()
        table.to_csv(self.config.summary_file, index=False)
        failing = int((table["failure_count"] > 0).sum()) if not table.empty else 0
        logger.info(f"summary of {len(table)} reports saved at: {self.config.summary_file} ({failing} failing)")
        return table

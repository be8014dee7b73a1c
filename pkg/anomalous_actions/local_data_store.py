import json
import logging
from pathlib import Path
from typing import Dict

import pandas as pd

from anomalous_actions.models.report_model import FullReport

logger = logging.getLogger(__name__)


class LocalDataStore:

    def __init__(self, store_dir: Path = Path("reports")) -> None:
        """Initialize the local report directory."""
        self.store_dir = Path(store_dir)
        self.store_dir.mkdir(parents=True, exist_ok=True)

    def save_report_json(self, name: str, report: FullReport) -> Path:
        """Save the full report to a JSON file."""
        report_path = self.store_dir / f"{name}_report.json"
        with report_path.open("w") as f:
            json.dump(report.to_dict(), f, indent=4)
        return report_path

    def save_text(self, name: str, text: str) -> Path:
        text_path = self.store_dir / f"{name}_report.txt"
        with text_path.open("w") as f:
            f.write(text if text.endswith("\n") else text + "\n")
        return text_path

    def save_dataframe(self, name: str, suffix: str, df: pd.DataFrame) -> Path:
        """Save a report table to a CSV file."""
        df_path = self.store_dir / f"{name}_{suffix}.csv"
        df.to_csv(df_path, index=False)
        return df_path

    def save_report(self, report: FullReport, text: str) -> Dict[str, Path]:
        """Write the JSON and text reports plus the family and witness tables."""
        paths = {
            "json": self.save_report_json(report.name, report),
            "text": self.save_text(report.name, text),
            "summary": self.save_dataframe(report.name, "summary", report.summary_frame()),
            "witnesses": self.save_dataframe(report.name, "witnesses", report.witness_frame()),
        }
        logger.info("Report '%s' written to %s", report.name, self.store_dir)
        return paths

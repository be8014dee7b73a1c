import json
from pathlib import Path

import pandas as pd
import pytest

from anomalous_actions.local_data_store import LocalDataStore
from anomalous_actions.models.report_model import FamilyReport, FullReport, Witness


@pytest.fixture
def report() -> FullReport:
    report = FullReport(name="flagship", coefficient_modulus=2)
    report.add(FamilyReport(family="category_pentagon", checked=16))
    witness = Witness(args=[1, 1, 1, 1], lhs="1/2", rhs="0")
    report.add(FamilyReport(family="pentagonator", checked=16, failed=1, witnesses=[witness]))
    report.finish()
    return report


class TestLocalDataStore:

    def test_creates_directory(self, tmp_path: Path) -> None:
        store = LocalDataStore(tmp_path / "nested" / "reports")
        assert store.store_dir.is_dir()

    def test_save_report(self, tmp_path: Path, report: FullReport) -> None:
        store = LocalDataStore(tmp_path)
        paths = store.save_report(report, "text without newline")

        assert set(paths) == {"json", "text", "summary", "witnesses"}
        saved = json.loads(paths["json"].read_text())
        assert saved["_id"] == report.run_id
        assert saved["overall"] == "fail"
        assert paths["text"].read_text() == "text without newline\n"

        summary = pd.read_csv(paths["summary"])
        assert summary["family"].tolist() == ["category_pentagon", "pentagonator"]
        assert summary["status"].tolist() == ["pass", "fail"]
        witnesses = pd.read_csv(paths["witnesses"])
        assert witnesses.loc[0, "args"] == "1,1,1,1"

    def test_save_dataframe_name(self, tmp_path: Path) -> None:
        store = LocalDataStore(tmp_path)
        path = store.save_dataframe("run", "extra", pd.DataFrame({"a": [1]}))
        assert path == tmp_path / "run_extra.csv"

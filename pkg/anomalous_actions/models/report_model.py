import uuid
from datetime import datetime
from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator


class Witness(BaseModel):
    """One failing argument tuple with both sides of the equation."""

    args: List[int]
    lhs: str
    rhs: str


class FamilyReport(BaseModel):
    family: str
    checked: int = Field(default=0, ge=0)
    failed: int = Field(default=0, ge=0)
    witnesses: List[Witness] = Field(default_factory=list)
    note: Optional[str] = None

    @field_validator("family")
    def validate_family(cls, family: str) -> str:
        if not family.strip():
            raise ValueError("Family name cannot be empty.")
        return family

    @property
    def passed(self) -> bool:
        return self.failed == 0

    @classmethod
    def skipped(cls, family: str, reason: str) -> "FamilyReport":
        """A family that could not run because its input is malformed; counts as one failure."""
        return cls(family=family, checked=0, failed=1, note=reason)

    def merged(self, other: "FamilyReport", witness_cap: int) -> "FamilyReport":
        return FamilyReport(
            family=self.family,
            checked=self.checked + other.checked,
            failed=self.failed + other.failed,
            witnesses=(self.witnesses + other.witnesses)[:witness_cap],
            note=self.note or other.note,
        )

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(exclude_none=True)


class FullReport(BaseModel):
    """Aggregated outcome of every verifier family for one scenario."""

    model_config = ConfigDict(populate_by_name=True)

    run_id: str = Field(alias="_id", default_factory=lambda: str(uuid.uuid4()))
    name: str
    started_at: datetime = Field(default_factory=datetime.now)
    finished_at: Optional[datetime] = None
    coefficient_modulus: int = Field(default=1, ge=1)
    families: List[FamilyReport] = Field(default_factory=list)
    overall: str = "pass"

    @field_validator("overall")
    def validate_overall(cls, overall: str) -> str:
        if overall not in {"pass", "fail"}:
            raise ValueError(f"Invalid overall status '{overall}'. Expected 'pass' or 'fail'.")
        return overall

    @field_validator("finished_at")
    def validate_finished_at(cls, finished_at: Optional[datetime], info: ValidationInfo) -> Optional[datetime]:
        if finished_at and finished_at < info.data["started_at"]:
            raise ValueError("finished_at cannot be earlier than started_at.")
        return finished_at

    def add(self, report: FamilyReport) -> None:
        self.families.append(report)
        if not report.passed:
            self.overall = "fail"

    def family(self, name: str) -> FamilyReport:
        for report in self.families:
            if report.family == name:
                return report
        raise KeyError(f"No family named '{name}' in report '{self.name}'.")

    @property
    def passed(self) -> bool:
        return self.overall == "pass"

    @property
    def total_failed(self) -> int:
        return sum(report.failed for report in self.families)

    def finish(self, finished_at: Optional[datetime] = None) -> None:
        self.finished_at = finished_at or datetime.now()
        self.overall = "pass" if all(report.passed for report in self.families) else "fail"

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready dictionary (with alias for '_id')."""
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)

    def summary_frame(self) -> pd.DataFrame:
        rows = [
            {
                "family": r.family,
                "checked": r.checked,
                "failed": r.failed,
                "status": "pass" if r.passed else "fail",
                "note": r.note or "",
            }
            for r in self.families
        ]
        return pd.DataFrame(rows, columns=["family", "checked", "failed", "status", "note"])

    def witness_frame(self) -> pd.DataFrame:
        rows = [
            {"family": r.family, "args": ",".join(str(a) for a in w.args), "lhs": w.lhs, "rhs": w.rhs}
            for r in self.families
            for w in r.witnesses
        ]
        return pd.DataFrame(rows, columns=["family", "args", "lhs", "rhs"])

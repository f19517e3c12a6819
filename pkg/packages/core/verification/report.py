"""Pass/fail report of the acceptance suite."""

from pathlib import Path

import pandas as pd
from pydantic import BaseModel, Field

from ..reconstruction.results import write_table

REPORT_COLUMNS = ["criterion", "measured", "tolerance", "passed", "detail"]


class CriterionResult(BaseModel):
    """Outcome of one acceptance criterion."""

    name: str
    description: str = ""
    measured: float = Field(description="Worst deviation observed")
    tolerance: float
    passed: bool
    detail: str = ""


class VerificationReport(BaseModel):
    """All criteria in suite order."""

    criteria: list[CriterionResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)

    @property
    def failures(self) -> list[CriterionResult]:
        return [c for c in self.criteria if not c.passed]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "criterion": c.name,
                    "measured": c.measured,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                    "detail": c.detail,
                }
                for c in self.criteria
            ],
            columns=REPORT_COLUMNS,
        )

    def write_csv(self, path: str | Path) -> Path:
        """Write the report; it holds no timestamps, so reruns are byte-identical."""
        return write_table(self.to_frame(), path)

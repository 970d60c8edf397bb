from typing import Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from modules.verification_management.verification_constants import (
    ERROR_FLOAT_FORMAT,
    FAIL_LABEL,
    PASS_LABEL,
    REPORT_COLUMNS,
)


class CheckResult(BaseModel):
    """Outcome of one closed-form consistency check."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Check identifier")
    passed: bool
    max_error: float = Field(..., description="Largest deviation over the cases")
    tolerance: float
    cases: int = Field(..., description="Number of configurations compared")
    detail: str = Field(default="", description="Failure description")


class VerificationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    checks: Tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> Tuple[str, ...]:
        return tuple(check.name for check in self.checks if not check.passed)

    def to_frame(self) -> pd.DataFrame:
        rows = [
            (
                check.name,
                PASS_LABEL if check.passed else FAIL_LABEL,
                ERROR_FLOAT_FORMAT.format(check.max_error),
                ERROR_FLOAT_FORMAT.format(check.tolerance),
                check.cases,
            )
            for check in self.checks
        ]
        return pd.DataFrame(rows, columns=list(REPORT_COLUMNS))

import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from modules.fit_management.fit_constants import (
    DUPLICATE_ABSCISSA_TOL,
    DUPLICATE_ROWS_ERROR,
    NON_FINITE_ERROR,
    WEIGHT_ERROR,
)


class DataRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    z0p: float = Field(..., description="Shifted z0_plus abscissa (m)")
    zeta: float = Field(..., description="Measured Gouy phase (rad)")
    weight: float = Field(default=1.0, description="Least-squares weight")

    @field_validator("z0p", "zeta")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError(NON_FINITE_ERROR)
        return v

    @field_validator("weight")
    @classmethod
    def validate_weight(cls, v: float) -> float:
        if not (math.isfinite(v) and v > 0):
            raise ValueError(WEIGHT_ERROR)
        return v


class DataSet(BaseModel):
    """Ordered (z0p, zeta, weight) observations."""

    model_config = ConfigDict(frozen=True)

    rows: Tuple[DataRow, ...]

    @field_validator("rows")
    @classmethod
    def validate_unique(cls, v: Tuple[DataRow, ...]) -> Tuple[DataRow, ...]:
        ordered = np.sort([row.z0p for row in v])
        if len(ordered) > 1 and np.min(np.diff(ordered)) <= DUPLICATE_ABSCISSA_TOL:
            raise ValueError(DUPLICATE_ROWS_ERROR)
        return v

    @classmethod
    def from_arrays(cls, z0p, zeta, weight=None) -> "DataSet":
        weights = np.ones(len(z0p)) if weight is None else weight
        return cls(
            rows=tuple(
                DataRow(z0p=float(x), zeta=float(y), weight=float(w))
                for x, y, w in zip(z0p, zeta, weights)
            )
        )

    @property
    def z0p(self) -> np.ndarray:
        return np.array([row.z0p for row in self.rows])

    @property
    def zeta(self) -> np.ndarray:
        return np.array([row.zeta for row in self.rows])

    @property
    def weight(self) -> np.ndarray:
        return np.array([row.weight for row in self.rows])

    def __len__(self) -> int:
        return len(self.rows)


class FitResult(BaseModel):
    """Fitted reference angle and offset with convergence diagnostics."""

    model_config = ConfigDict(frozen=True)

    zeta0: float = Field(..., description="Reference angle (rad)")
    z_f: float = Field(..., description="Abscissa offset (m)")
    residuals: Tuple[float, ...] = Field(..., description="Model minus data per row (rad)")
    rss: float = Field(..., description="Weighted sum of squared residuals")
    iterations: int
    evaluations: int
    converged: bool
    message: str = ""

    @property
    def max_abs_residual(self) -> float:
        return max(abs(r) for r in self.residuals)

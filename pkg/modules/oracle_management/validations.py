from typing import Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from modules.oracle_management.oracle_constants import (
    HALF_WIDTH_ERROR,
    MIN_HALF_WIDTH,
    MIN_QUADRATURE_POINTS,
    POINTS_ERROR,
    QUADRATURE_SCHEME,
    SCHEME_ERROR,
)
from system.system.default_configs.biphoton_conf import (
    BIPHOTON_QUAD_HALF_WIDTH,
    BIPHOTON_QUAD_POINTS,
)


class QuadratureSpec(BaseModel):
    """Window and node settings of a 1-D oscillatory quadrature."""

    model_config = ConfigDict(frozen=True)

    half_width: float = Field(
        default=BIPHOTON_QUAD_HALF_WIDTH,
        description="Integration cutoff in units of the beam width at the source plane",
    )
    n_points: int = Field(default=BIPHOTON_QUAD_POINTS, description="Minimum nodes per integral")
    scheme: str = Field(default=QUADRATURE_SCHEME, description="Composite rule")

    @field_validator("half_width")
    @classmethod
    def validate_half_width(cls, v: float) -> float:
        if not v >= MIN_HALF_WIDTH:
            raise ValueError(HALF_WIDTH_ERROR)
        return v

    @field_validator("n_points")
    @classmethod
    def validate_points(cls, v: int) -> int:
        if v < MIN_QUADRATURE_POINTS or v % 2:
            raise ValueError(POINTS_ERROR)
        return v

    @field_validator("scheme")
    @classmethod
    def validate_scheme(cls, v: str) -> str:
        if v != QUADRATURE_SCHEME:
            raise ValueError(SCHEME_ERROR)
        return v


class MomentSet(BaseModel):
    """Second moments of the biphoton in SI units (hbar = 1).

    Momenta are transverse wavenumbers (1/m); mixed moments are dimensionless.
    """

    model_config = ConfigDict(frozen=True)

    z: float
    x1_sq: float = Field(..., description="<x1**2> (m**2)")
    x1x2: float = Field(..., description="<x1 x2> (m**2)")
    p1_sq: float = Field(..., description="<p1**2> (1/m**2)")
    p1p2: float = Field(..., description="<p1 p2> (1/m**2)")
    x1p2: float = Field(..., description="symmetrised <x1 p2>")
    sigma_xp: float = Field(..., description="symmetrised <x1 p1>")

    def dimensionless(self, length_unit: Optional[float] = None) -> Dict[str, float]:
        """Moments with positions in units of ``length_unit`` and momenta in its inverse."""
        unit = 1.0 if length_unit is None else length_unit
        return {
            "x1_sq": self.x1_sq / unit**2,
            "x1x2": self.x1x2 / unit**2,
            "p1_sq": self.p1_sq * unit**2,
            "p1p2": self.p1p2 * unit**2,
            "x1p2": self.x1p2,
            "sigma_xp": self.sigma_xp,
        }

import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from constants import SOURCE_L_P, SOURCE_LAMBDA, SOURCE_LAMBDA_P

from modules.parameter_management.params_constants import (
    DEFAULT_C_SCALE,
    DEFAULT_LOG_BASE,
    FINITE_VALUE_ERROR,
    LOG_BASE_ALIASES,
    LOG_BASE_ERROR,
    POSITIVE_VALUE_ERROR,
    RAYLEIGH_CONSISTENCY_RTOL,
    RAYLEIGH_MISMATCH_ERROR,
)


def _check_positive(name: str, v: float) -> float:
    if not math.isfinite(v):
        raise ValueError(f"{name} {FINITE_VALUE_ERROR}")
    if v <= 0:
        raise ValueError(f"{name} {POSITIVE_VALUE_ERROR}")
    return v


class ExperimentParams(BaseModel):
    """Pump, crystal and photon inputs from which every scale derives.

    Lengths are in meters. Field aliases match the configuration file keys.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    wavelength: float = Field(..., alias="lambda", description="Biphoton wavelength (m)")
    pump_wavelength: float = Field(..., alias="lambda_p", description="Pump wavelength (m)")
    crystal_length: float = Field(..., alias="L_p", description="Crystal length (m)")
    omega: float = Field(..., alias="Omega", description="Plus-coordinate initial width (m)")
    focal_length: Optional[float] = Field(default=None, alias="f", description="Lens focal length (m)")
    c_scale: float = Field(default=DEFAULT_C_SCALE, description="Scalar replacing c in the lens formulas")
    log_base: str = Field(default=DEFAULT_LOG_BASE, description="Logarithm base for entanglement measures")

    @field_validator("wavelength", "pump_wavelength", "crystal_length", "omega", "c_scale")
    @classmethod
    def validate_positive(cls, v: float, info) -> float:
        return _check_positive(info.field_name, v)

    @field_validator("focal_length")
    @classmethod
    def validate_focal_length(cls, v: Optional[float]) -> Optional[float]:
        if v is not None:
            _check_positive("f", v)
        return v

    @field_validator("log_base", mode="before")
    @classmethod
    def validate_log_base(cls, v) -> str:
        key = str(v).strip().lower()
        if key not in LOG_BASE_ALIASES:
            raise ValueError(LOG_BASE_ERROR)
        return LOG_BASE_ALIASES[key]

    @classmethod
    def source_defaults(cls, omega: float, **overrides) -> "ExperimentParams":
        """Return the degenerate 702 nm / 351.1 nm / 7.0 mm source with the given Omega."""
        values = {
            "wavelength": SOURCE_LAMBDA,
            "pump_wavelength": SOURCE_LAMBDA_P,
            "crystal_length": SOURCE_L_P,
            "omega": omega,
        }
        values.update(overrides)
        return cls(**values)


class DerivedScales(BaseModel):
    """Scale parameters shared by every other module (lengths in meters)."""

    model_config = ConfigDict(frozen=True)

    sigma: float = Field(..., description="Minus-coordinate width (m)")
    k0: float = Field(..., description="Wavenumber 2*pi/lambda (1/m)")
    z0_plus: float = Field(..., description="Rayleigh length k0*Omega**2 (m)")
    z0_minus: float = Field(..., description="Rayleigh length k0*sigma**2 (m)")

    @field_validator("sigma", "k0", "z0_plus", "z0_minus")
    @classmethod
    def validate_positive(cls, v: float, info) -> float:
        return _check_positive(info.field_name, v)

    @model_validator(mode="after")
    def validate_rayleigh_minus(self) -> "DerivedScales":
        expected = self.k0 * self.sigma**2
        if abs(self.z0_minus - expected) > RAYLEIGH_CONSISTENCY_RTOL * expected:
            raise ValueError(RAYLEIGH_MISMATCH_ERROR)
        return self

    @property
    def omega(self) -> float:
        """Plus-coordinate width recovered from z0_plus."""
        return math.sqrt(self.z0_plus / self.k0)

    @property
    def rayleigh_ratio(self) -> float:
        """z0_plus / z0_minus, equal to (Omega / sigma)**2."""
        return self.z0_plus / self.z0_minus

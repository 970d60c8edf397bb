import math

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from constants import (
    FIG5_F,
    FIG5_Z,
    FIG5_Z0_MINUS,
    FIG5_Z_F,
    FIG5_Z_PRIME,
    FIG5_ZETA0,
)
from modules.parameter_management.params_constants import POSITIVE_VALUE_ERROR
from modules.propagation_management.propagation_constants import (
    NEGATIVE_DISTANCE_ERROR,
    ZETA_SUM_ERROR,
)


class BeamGeometry(BaseModel):
    """Widths, curvature radii and Gouy phases of the biphoton at distance z.

    Radii are signed; a flat wavefront at the waist is represented by an
    infinite radius.
    """

    model_config = ConfigDict(frozen=True)

    z: float = Field(..., description="Longitudinal position (m)")
    w_plus: float = Field(..., description="Plus-coordinate width (m)")
    w_minus: float = Field(..., description="Minus-coordinate width (m)")
    r_plus: float = Field(..., description="Plus-coordinate wavefront radius (m)")
    r_minus: float = Field(..., description="Minus-coordinate wavefront radius (m)")
    zeta: float = Field(..., description="Biphoton Gouy phase (rad)")
    zeta_plus: float = Field(..., description="arctan(z / z0_plus) (rad)")
    zeta_minus: float = Field(..., description="arctan(z / z0_minus) (rad)")

    @field_validator("w_plus", "w_minus")
    @classmethod
    def validate_width(cls, v: float, info) -> float:
        if not v > 0:
            raise ValueError(f"{info.field_name} {POSITIVE_VALUE_ERROR}")
        return v

    @model_validator(mode="after")
    def validate_zeta(self) -> "BeamGeometry":
        if self.zeta != (self.zeta_plus + self.zeta_minus) / 2:
            raise ValueError(ZETA_SUM_ERROR)
        return self


class BiphotonAmplitude(BaseModel):
    """Complex value of the biphoton wavefunction at relative coordinates (r, q)."""

    model_config = ConfigDict(frozen=True)

    re: float
    im: float
    r: float = Field(..., description="Relative coordinate (x1 + x2) / 2 (m)")
    q: float = Field(..., description="Relative coordinate (x1 - x2) / 2 (m)")

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @property
    def modulus(self) -> float:
        return abs(self.value)

    @property
    def phase(self) -> float:
        return math.atan2(self.im, self.re)


class LensSetup(BaseModel):
    """Thin lens at distance z from the crystal, observed z_prime after the lens."""

    model_config = ConfigDict(frozen=True)

    f: float = Field(..., description="Focal length (m)")
    z: float = Field(..., description="Crystal-to-lens distance (m)")
    z_prime: float = Field(..., description="Distance after the lens (m)")
    c_scale: float = Field(default=1.0, description="Scalar replacing c in the lens formulas")

    @field_validator("f", "c_scale")
    @classmethod
    def validate_positive(cls, v: float, info) -> float:
        if not (math.isfinite(v) and v > 0):
            raise ValueError(f"{info.field_name} {POSITIVE_VALUE_ERROR}")
        return v

    @field_validator("z", "z_prime")
    @classmethod
    def validate_non_negative(cls, v: float, info) -> float:
        if not (math.isfinite(v) and v >= 0):
            raise ValueError(f"{info.field_name} {NEGATIVE_DISTANCE_ERROR}")
        return v

    @property
    def lens_factor(self) -> float:
        """1 - z_prime / 2f, the denominator of the default effective distance."""
        return 1.0 - self.z_prime / (2.0 * self.f)


class FocusedGeometry(BaseModel):
    """Widths, radii and Gouy phase of the biphoton after a thin lens."""

    model_config = ConfigDict(frozen=True)

    B_plus: float = Field(..., description="Focused plus-coordinate width (m)")
    B_minus: float = Field(..., description="Focused minus-coordinate width (m)")
    R_plus: float = Field(..., description="Focused plus-coordinate radius (m when c_scale = 1)")
    R_minus: float = Field(..., description="Focused minus-coordinate radius")
    zeta: float = Field(..., description="Focused Gouy phase, continuous branch (rad)")

    @field_validator("B_plus", "B_minus")
    @classmethod
    def validate_width(cls, v: float, info) -> float:
        if not v > 0:
            raise ValueError(f"{info.field_name} {POSITIVE_VALUE_ERROR}")
        return v


class FitModelParams(BaseModel):
    """Parameters of the two-dimensional focused Gouy-phase model.

    zeta0 and z_f are the fitted parameters; z, z_prime, f and z0_minus
    describe the fixed optical arrangement.
    """

    model_config = ConfigDict(frozen=True)

    zeta0: float = Field(default=FIG5_ZETA0, description="Reference angle (rad)")
    z_f: float = Field(default=FIG5_Z_F, description="Abscissa offset (m)")
    z: float = Field(default=FIG5_Z, description="Crystal-to-lens distance (m)")
    z_prime: float = Field(default=FIG5_Z_PRIME, description="Distance after the lens (m)")
    f: float = Field(default=FIG5_F, description="Focal length (m)")
    z0_minus: float = Field(default=FIG5_Z0_MINUS, description="Minus-coordinate Rayleigh length (m)")

    @field_validator("zeta0", "z_f", "z", "z_prime")
    @classmethod
    def validate_finite(cls, v: float, info) -> float:
        if not math.isfinite(v):
            raise ValueError(f"{info.field_name} must be finite")
        return v

    @field_validator("f", "z0_minus")
    @classmethod
    def validate_positive(cls, v: float, info) -> float:
        if not (math.isfinite(v) and v > 0):
            raise ValueError(f"{info.field_name} {POSITIVE_VALUE_ERROR}")
        return v

    def with_fit(self, zeta0: float, z_f: float) -> "FitModelParams":
        """Copy with new values for the fitted parameters."""
        return self.model_copy(update={"zeta0": float(zeta0), "z_f": float(z_f)})

import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from modules.entanglement_management.entanglement_constants import (
    MATRIX_SHAPE_ERROR,
    MATRIX_SYMMETRY_ERROR,
    NON_POSITIVE_EIGENVALUE_ERROR,
    SYMMETRY_RTOL,
)

# (position, momentum) indices of each mode
MODE_INDICES = ((0, 1), (2, 3))


class CovarianceMatrix(BaseModel):
    """Dimensionless two-mode covariance matrix in the basis (X1, P1, X2, P2).

    Positions are measured in units of ``length_unit`` and momenta in its
    inverse, so every symplectic invariant is unchanged by the choice.
    Entries are kept in extended precision: far from the waist the
    position-momentum correlations nearly cancel in every determinant.

    Block layout::

        | G    C |
        | C^T  H |
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: np.ndarray = Field(..., description="4x4 entries, extended precision")
    z: float = Field(..., description="Longitudinal position of evaluation (m)")
    length_unit: float = Field(default=1.0, description="Length used to scale positions (m)")

    @field_validator("entries", mode="before")
    @classmethod
    def validate_shape(cls, v) -> np.ndarray:
        array = np.array(v, dtype=np.longdouble)
        if array.shape != (4, 4):
            raise ValueError(MATRIX_SHAPE_ERROR)
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def validate_symmetric(self) -> "CovarianceMatrix":
        m = self.entries
        scale = np.max(np.abs(m))
        if np.max(np.abs(m - m.T)) > SYMMETRY_RTOL * scale:
            raise ValueError(MATRIX_SYMMETRY_ERROR)
        return self

    @property
    def matrix(self) -> np.ndarray:
        """Entries as a float64 array."""
        return self.entries.astype(float)

    def reduced(self) -> np.ndarray:
        """Float64 matrix after a local shear removing each mode's X-P correlation.

        The shear is a local symplectic map, so det G, det H, det C and
        det M are those of the original matrix.
        """
        m = self.entries.copy()
        for x, p in MODE_INDICES:
            shear = np.eye(4, dtype=np.longdouble)
            shear[x, p] = -m[x, p] / m[p, p]
            m = shear @ m @ shear.T
        return m.astype(float)

    @property
    def G(self) -> np.ndarray:
        return self.matrix[:2, :2]

    @property
    def H(self) -> np.ndarray:
        return self.matrix[2:, 2:]

    @property
    def C(self) -> np.ndarray:
        return self.matrix[:2, 2:]

    @property
    def det_G(self) -> float:
        return float(np.linalg.det(self.reduced()[:2, :2]))

    @property
    def det_H(self) -> float:
        return float(np.linalg.det(self.reduced()[2:, 2:]))

    @property
    def det_C(self) -> float:
        return float(np.linalg.det(self.reduced()[:2, 2:]))

    @property
    def det_M(self) -> float:
        return float(np.linalg.det(self.reduced()))

    def standard_form(self) -> Tuple[float, float, float, float]:
        """Return (g, h, c, c') with det G = g**2, det H = h**2, det C = c * c'.

        c**2 and c'**2 are the roots of t**2 - s t + det_C**2 = 0 where
        s = (g**2 h**2 + det_C**2 - det_M) / (g h), which follows from
        det M = (g h - c**2)(g h - c'**2).
        """
        g = math.sqrt(self.det_G)
        h = math.sqrt(self.det_H)
        det_c = self.det_C
        gh = g * h
        s = (gh**2 + det_c**2 - self.det_M) / gh
        disc = max(s * s - 4.0 * det_c**2, 0.0)
        c = math.sqrt(max((s + math.sqrt(disc)) / 2, 0.0))
        if c == 0:
            return g, h, 0.0, 0.0
        return g, h, c, det_c / c

    @property
    def g(self) -> float:
        return self.standard_form()[0]

    @property
    def h(self) -> float:
        return self.standard_form()[1]

    @property
    def c(self) -> float:
        return self.standard_form()[2]

    @property
    def cp(self) -> float:
        return self.standard_form()[3]


class SymplecticSpectrum(BaseModel):
    """Symplectic eigenvalues of the partially transposed covariance matrix."""

    model_config = ConfigDict(frozen=True)

    nu_1: float = Field(..., description="Larger eigenvalue")
    nu_2: float = Field(..., description="Smaller eigenvalue")

    @field_validator("nu_1", "nu_2")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError(NON_POSITIVE_EIGENVALUE_ERROR)
        return v

    @property
    def nu_min(self) -> float:
        return min(self.nu_1, self.nu_2)

"""Entanglement measures of the double-Gaussian biphoton.

The covariance matrix holds the exact second moments of the propagated
state (hbar = 1, p = -i d/dx) for the photon coordinates x1 = r + q and
x2 = r - q. Writing Z = z**2 / (z0_plus * z0_minus):

    <x1**2>   = (sigma**2 + Omega**2) (Z + 1) / 4
    <x1 x2>   = (sigma**2 - Omega**2) (Z - 1) / 4
    <p1**2>   = (1/Omega**2 + 1/sigma**2) / 4
    <p1 p2>   = (1/Omega**2 - 1/sigma**2) / 4
    sigma_xp  = (z/z0_plus + z/z0_minus) / 4 = (tan zeta+ + tan zeta-) / 4
    <x1 p2>   = (z/z0_plus - z/z0_minus) / 4

The partially transposed symplectic eigenvalues are Omega/2sigma and
sigma/2Omega at every z.
"""

import logging
import math
from typing import Optional

import numpy as np

from modules.entanglement_management.entanglement_constants import (
    DISCRIMINANT_RTOL,
    NEGATIVE_DISCRIMINANT_ERROR,
    SCALES_CONSISTENCY_RTOL,
    SCALES_MISMATCH_ERROR,
    SCHMIDT_IDENTITY_RTOL,
    SCHMIDT_MISMATCH_ERROR,
    VACUUM_EIGENVALUE,
)
from modules.entanglement_management.validations import CovarianceMatrix, SymplecticSpectrum
from modules.exceptions import NumericalInconsistencyError
from modules.parameter_management.params import log_in_base
from modules.parameter_management.validations import DerivedScales, ExperimentParams
from modules.propagation_management.freeprop import beam_geometry

logger = logging.getLogger(__name__)


def moments(
    p: Optional[ExperimentParams],
    scales: DerivedScales,
    z: float,
) -> CovarianceMatrix:
    """Covariance matrix of the biphoton at distance z.

    Positions are scaled by sigma and momenta by 1/sigma.

    Args:
        p: Experiment parameters the scales came from, checked when given
        scales: Derived scales
        z: Longitudinal position (m)

    Returns:
        CovarianceMatrix in the basis (X1, P1, X2, P2)

    Raises:
        NumericalInconsistencyError: If ``scales`` does not match ``p``
    """
    if p is not None and not math.isclose(p.omega, scales.omega, rel_tol=SCALES_CONSISTENCY_RTOL):
        raise NumericalInconsistencyError(SCALES_MISMATCH_ERROR)

    # sigma units: Omega**2 -> rho and z/z0_minus -> tau, in extended precision
    rho = np.longdouble(scales.z0_plus) / np.longdouble(scales.z0_minus)
    tau = np.longdouble(z) / np.longdouble(scales.z0_minus)
    t_plus = tau / rho
    t_minus = tau
    Z = t_plus * t_minus

    xx = (1 + rho) * (Z + 1) / 4
    x1x2 = (1 - rho) * (Z - 1) / 4
    pp = (1 / rho + 1) / 4
    p1p2 = (1 / rho - 1) / 4
    sigma_xp = (t_plus + t_minus) / 4
    x1p2 = (t_plus - t_minus) / 4

    entries = [
        [xx, sigma_xp, x1x2, x1p2],
        [sigma_xp, pp, x1p2, p1p2],
        [x1x2, x1p2, xx, sigma_xp],
        [x1p2, p1p2, sigma_xp, pp],
    ]
    return CovarianceMatrix(entries=entries, z=z, length_unit=scales.sigma)


def pt_spectrum(M: CovarianceMatrix) -> SymplecticSpectrum:
    """Symplectic eigenvalues of the partially transposed covariance matrix.

    nu**2 = (D +/- sqrt(D**2 - 4 det M)) / 2 with D = det G + det H - 2 det C.

    Raises:
        NumericalInconsistencyError: If D**2 < 4 det M beyond rounding
    """
    reduced = M.reduced()
    det_g = np.linalg.det(reduced[:2, :2])
    det_h = np.linalg.det(reduced[2:, 2:])
    det_c = np.linalg.det(reduced[:2, 2:])
    det_m = float(np.linalg.det(reduced))
    delta = float(det_g + det_h - 2.0 * det_c)
    disc = delta * delta - 4.0 * det_m
    if disc < 0:
        if disc < -DISCRIMINANT_RTOL * delta * delta:
            logger.error(f"Discriminant {disc} for delta={delta}, det M={det_m}")
            raise NumericalInconsistencyError(NEGATIVE_DISCRIMINANT_ERROR)
        disc = 0.0
    root = math.sqrt(disc)
    nu_sq_large = (delta + root) / 2
    # det M / nu_large**2 avoids cancellation in the smaller root
    nu_sq_small = det_m / nu_sq_large
    return SymplecticSpectrum(nu_1=math.sqrt(nu_sq_large), nu_2=math.sqrt(nu_sq_small))


def log_negativity_from_matrix(M: CovarianceMatrix, base: str = "e") -> float:
    """max(0, -log(2 nu_min)) from the partially transposed spectrum."""
    nu_min = pt_spectrum(M).nu_min
    return max(0.0, -log_in_base(nu_min / VACUUM_EIGENVALUE, base))


def log_negativity(scales: DerivedScales, base: str = "e") -> float:
    """Closed-form logarithmic negativity log(sqrt(z0_max / z0_min)).

    Independent of the propagation distance.
    """
    ratio = scales.z0_plus / scales.z0_minus
    if ratio < 1.0:
        ratio = 1.0 / ratio
    return log_in_base(math.sqrt(ratio), base)


def schmidt_number_at(scales: DerivedScales, z: float) -> float:
    """Schmidt number from the widths and radii at z.

    (w+/w- + w-/w+)**2 + k0**2 w+**2 w-**2 (1/r- - 1/r+)**2
    """
    geom = beam_geometry(z, scales)
    width_term = (geom.w_plus / geom.w_minus + geom.w_minus / geom.w_plus) ** 2
    curvature_gap = 1.0 / geom.r_minus - 1.0 / geom.r_plus
    return width_term + (scales.k0 * geom.w_plus * geom.w_minus * curvature_gap) ** 2


def schmidt_number(scales: DerivedScales, z: float = 0.0) -> float:
    """Double-Gaussian Schmidt number (sqrt(z0-/z0+) + sqrt(z0+/z0-))**2.

    The z-dependent expression is evaluated as well and must agree.

    Raises:
        NumericalInconsistencyError: If the two evaluations disagree
    """
    closed = (
        math.sqrt(scales.z0_minus / scales.z0_plus) + math.sqrt(scales.z0_plus / scales.z0_minus)
    ) ** 2
    at_z = schmidt_number_at(scales, z)
    if not math.isclose(at_z, closed, rel_tol=SCHMIDT_IDENTITY_RTOL):
        logger.error(f"Schmidt number {at_z} at z={z} against closed form {closed}")
        raise NumericalInconsistencyError(SCHMIDT_MISMATCH_ERROR)
    return closed


def negativity_schmidt_gap(scales: DerivedScales, base: str = "e") -> float:
    """log(sqrt(K)) - E_N, which equals log(1 + 1/R) for R = z0_max / z0_min."""
    return log_in_base(math.sqrt(schmidt_number(scales)), base) - log_negativity(scales, base)


def covariance_sweep(scales: DerivedScales, z_values) -> np.ndarray:
    """Logarithmic negativity through the covariance pipeline for each z."""
    return np.array([log_negativity_from_matrix(moments(None, scales, float(z))) for z in z_values])

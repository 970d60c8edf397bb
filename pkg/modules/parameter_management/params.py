"""Scale derivation for the double-Gaussian biphoton.

Every length is in meters. The normalisation constants hbar and L of the
covariance construction are fixed conventions (both cancel from every
dimensionless quantity) and are not runtime inputs.
"""

import logging
import math

from modules.exceptions import DomainError
from modules.parameter_management.validations import DerivedScales, ExperimentParams

logger = logging.getLogger(__name__)


def log_in_base(value: float, base: str) -> float:
    """Logarithm of ``value`` in one of the configured bases ("e", "2", "10")."""
    if base == "2":
        return math.log2(value)
    if base == "10":
        return math.log10(value)
    return math.log(value)


def wavenumber(wavelength: float) -> float:
    if wavelength <= 0:
        raise DomainError("lambda", wavelength)
    return 2.0 * math.pi / wavelength


def derive_sigma(lambda_p: float, L_p: float) -> float:
    """Minus-coordinate width sigma = sqrt(L_p * lambda_p / (6 pi)).

    Args:
        lambda_p: Pump wavelength (m)
        L_p: Crystal length (m)

    Returns:
        sigma in meters

    Raises:
        DomainError: If either input is not strictly positive
    """
    if not lambda_p > 0:
        raise DomainError("lambda_p", lambda_p)
    if not L_p > 0:
        raise DomainError("L_p", L_p)
    return math.sqrt(L_p * lambda_p / (6.0 * math.pi))


def derive_scales(p: ExperimentParams) -> DerivedScales:
    """Derive sigma, k0 and both Rayleigh lengths from the experiment inputs."""
    sigma = derive_sigma(p.pump_wavelength, p.crystal_length)
    k0 = wavenumber(p.wavelength)
    scales = DerivedScales(
        sigma=sigma,
        k0=k0,
        z0_plus=k0 * p.omega**2,
        z0_minus=k0 * sigma**2,
    )
    logger.debug(f"Derived scales {scales.model_dump()} from {p.model_dump()}")
    return scales


def scales_from_rayleigh(k0: float, z0_plus: float, z0_minus: float) -> DerivedScales:
    """Build scales directly from a wavenumber and the two Rayleigh lengths.

    Used by the sweeps that hold z0_minus fixed and vary z0_plus.
    """
    if not k0 > 0:
        raise DomainError("k0", k0)
    if not z0_minus > 0:
        raise DomainError("z0_minus", z0_minus)
    if not z0_plus > 0:
        raise DomainError("z0_plus", z0_plus)
    return DerivedScales(
        sigma=math.sqrt(z0_minus / k0),
        k0=k0,
        z0_plus=z0_plus,
        z0_minus=z0_minus,
    )

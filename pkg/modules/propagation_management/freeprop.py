"""Free-space evolution of the double-Gaussian biphoton.

The state factorises into the relative coordinates r = (x1 + x2)/2 and
q = (x1 - x2)/2, each propagating as a Gaussian beam with its own Rayleigh
length: z0_plus = k0 * Omega**2 for r and z0_minus = k0 * sigma**2 for q.
The widths use their own waist as prefactor, so w_minus(0) == sigma.
"""

import cmath
import logging
import math

from modules.exceptions import DomainError
from modules.parameter_management.validations import DerivedScales
from modules.propagation_management.propagation_constants import INFINITE_RADIUS
from modules.propagation_management.validations import BeamGeometry, BiphotonAmplitude

logger = logging.getLogger(__name__)


def beam_width(z: float, z0: float, w0: float) -> float:
    """Gaussian width w0 * sqrt(1 + (z / z0)**2).

    Raises:
        DomainError: If z0 or w0 is not strictly positive
    """
    if not z0 > 0:
        raise DomainError("z0", z0)
    if not w0 > 0:
        raise DomainError("w0", w0)
    return w0 * math.hypot(1.0, z / z0)


def curvature_radius(z: float, z0: float) -> float:
    """Wavefront radius z * (1 + (z0 / z)**2), signed infinity at the waist."""
    if not z0 > 0:
        raise DomainError("z0", z0)
    if z == 0:
        return math.copysign(INFINITE_RADIUS, z)
    return z * (1.0 + (z0 / z) ** 2)


def gouy_free(z: float, scales: DerivedScales) -> float:
    """Biphoton Gouy phase as the half-sum of the per-coordinate arctangents.

    Continuous and strictly increasing in z with range (-pi/2, pi/2).
    """
    zeta_plus = math.atan(z / scales.z0_plus)
    zeta_minus = math.atan(z / scales.z0_minus)
    return (zeta_plus + zeta_minus) / 2


def gouy_free_single_arctan(z: float, scales: DerivedScales) -> float:
    """Gouy phase through the combined fraction 0.5 * arctan[z (z0+ + z0-) / (z0+ z0- - z**2)].

    Agrees with gouy_free while z**2 < z0_plus * z0_minus and falls short by
    exactly pi/2 beyond it.
    """
    numerator = z * (scales.z0_plus + scales.z0_minus)
    denominator = scales.z0_plus * scales.z0_minus - z * z
    if denominator == 0:
        return math.copysign(math.pi / 4, numerator)
    return 0.5 * math.atan(numerator / denominator)


def beam_geometry(z: float, scales: DerivedScales) -> BeamGeometry:
    """Assemble widths, radii and phases at z.

    Args:
        z: Longitudinal position measured from the crystal (m), may be negative
        scales: Derived scales of the experiment

    Returns:
        BeamGeometry at z
    """
    zeta_plus = math.atan(z / scales.z0_plus)
    zeta_minus = math.atan(z / scales.z0_minus)
    return BeamGeometry(
        z=z,
        w_plus=beam_width(z, scales.z0_plus, scales.omega),
        w_minus=beam_width(z, scales.z0_minus, scales.sigma),
        r_plus=curvature_radius(z, scales.z0_plus),
        r_minus=curvature_radius(z, scales.z0_minus),
        zeta=(zeta_plus + zeta_minus) / 2,
        zeta_plus=zeta_plus,
        zeta_minus=zeta_minus,
    )


def amplitude_prefactor(geom: BeamGeometry, normalized: bool = False) -> float:
    """Real prefactor of the wavefunction.

    The default prefactor is 1/sqrt(4 pi w+ w-); ``normalized`` switches to
    1/sqrt(pi w+ w-), for which the integral of |psi|**2 * 2 dr dq is one.
    """
    product = geom.w_plus * geom.w_minus
    if normalized:
        return 1.0 / math.sqrt(math.pi * product)
    return 1.0 / math.sqrt(4.0 * math.pi * product)


def wavefunction(
    r: float,
    q: float,
    geom: BeamGeometry,
    scales: DerivedScales,
    normalized: bool = False,
) -> BiphotonAmplitude:
    """Evaluate the propagated biphoton wavefunction at (r, q).

    Args:
        r: Relative coordinate (x1 + x2) / 2 (m)
        q: Relative coordinate (x1 - x2) / 2 (m)
        geom: Geometry computed from ``scales`` at the same z
        scales: Derived scales of the experiment
        normalized: Use the unit-norm prefactor

    Returns:
        BiphotonAmplitude holding the complex value
    """
    k0 = scales.k0
    envelope = math.exp(-(r**2) / geom.w_plus**2 - q**2 / geom.w_minus**2)
    # r**2 / inf is 0, so the waist needs no special case
    phase = k0 * r**2 / geom.r_plus + k0 * q**2 / geom.r_minus - geom.zeta
    value = amplitude_prefactor(geom, normalized) * envelope * cmath.exp(1j * phase)
    return BiphotonAmplitude(re=value.real, im=value.imag, r=r, q=q)


def wavefunction_norm(geom: BeamGeometry, normalized: bool = False) -> float:
    """Exact value of the integral of 2 |psi|**2 over the (r, q) plane.

    The Gaussian integral gives prefactor**2 * (pi / 2) * w+ * w-, which is
    independent of z: 1/4 for the default prefactor and 1 when normalised.
    """
    prefactor = amplitude_prefactor(geom, normalized)
    return 2.0 * prefactor**2 * (math.pi / 2.0) * geom.w_plus * geom.w_minus

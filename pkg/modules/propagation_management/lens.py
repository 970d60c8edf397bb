"""Thin-lens focusing of the biphoton.

A lens of focal length f sits a distance z after the crystal and the state
is observed z_prime after the lens. The transmittance exp(-i k0 x**2 / 2f)
combined with the propagation kernel puts 2f wherever a textbook lens law
has f. The symbol c of the width, radius and waist formulas is the
configurable ``c_scale``.
"""

import logging
import math
from typing import Union

import numpy as np

from modules.exceptions import SingularConfigurationError
from modules.parameter_management.validations import DerivedScales
from modules.propagation_management.freeprop import beam_geometry
from modules.propagation_management.propagation_constants import (
    FIT_MODEL_POLE_ERROR,
    GOUY_WRAP_PERIOD,
    INFINITE_RADIUS,
    LENS_POLE_ERROR,
    WAIST_DENOMINATOR_ERROR,
    ZERO_DISTANCE_AFTER_LENS_ERROR,
)
from modules.propagation_management.validations import (
    FitModelParams,
    FocusedGeometry,
    LensSetup,
)

logger = logging.getLogger(__name__)


def _inverse_radius(r: float, c_scale: float) -> float:
    if math.isinf(r):
        return 0.0
    return 1.0 / (c_scale * r)


def _lens_term(r: float, setup: LensSetup, z_prime: float) -> float:
    """1/z' + 1/(c r) - 1/(2f)."""
    return 1.0 / z_prime + _inverse_radius(r, setup.c_scale) - 1.0 / (2.0 * setup.f)


def _width_squared(w: float, r: float, z_prime: float, setup: LensSetup, k0: float) -> float:
    if z_prime == 0:
        raise SingularConfigurationError(ZERO_DISTANCE_AFTER_LENS_ERROR)
    inv_w2 = 1.0 / w**2
    numerator = inv_w2**2 + k0**2 * _lens_term(r, setup, z_prime) ** 2
    return numerator / ((k0 / z_prime) ** 2 * inv_w2)


def _radius(w: float, r: float, w0: float, setup: LensSetup, k0: float) -> float:
    # not a length unless c_scale absorbs the 1/w0**2 term
    z, z_prime, c = setup.z, setup.z_prime, setup.c_scale
    inv_w2 = 1.0 / w**2
    numerator = inv_w2**2 + k0**2 * _lens_term(r, setup, z_prime) ** 2
    z_over_cr = 0.0 if math.isinf(r) else z / (c * r)
    denominator = (c / (z_prime * w**2)) * (1.0 + (z / z_prime + z_over_cr) / w0**2) - k0 / (2.0 * setup.f)
    if denominator == 0:
        return INFINITE_RADIUS
    return numerator / denominator


def plus_width_squared(z_prime: float, setup: LensSetup, scales: DerivedScales) -> float:
    """B_plus**2 as a function of the distance after the lens, other settings fixed.

    Defined for any nonzero z_prime, including negative (virtual) positions.
    """
    geom = beam_geometry(setup.z, scales)
    return _width_squared(geom.w_plus, geom.r_plus, z_prime, setup, scales.k0)


def effective_distance(setup: LensSetup, exact: bool = False) -> float:
    """Free-propagation distance equivalent to the lens arrangement.

    The default argument, shared with the fit model, is z / (1 - z'/2f) + z'.
    The thin-lens ray-matrix value is z + z' / (1 - z'/2f); the two agree
    only when z == z', z' == 0 or the lens is removed. Both have a pole at
    z' = 2f (the default one only when z != 0).

    Raises:
        SingularConfigurationError: At the pole
    """
    d = setup.lens_factor
    if exact:
        if d == 0:
            raise SingularConfigurationError(LENS_POLE_ERROR)
        return setup.z + setup.z_prime / d
    if setup.z == 0:
        return setup.z_prime
    if d == 0:
        raise SingularConfigurationError(LENS_POLE_ERROR)
    return setup.z / d + setup.z_prime


def _coordinate_phase(setup: LensSetup, z0: float, exact: bool) -> float:
    """Continuous arctan(u / z0), lifted by pi past the z' = 2f pole."""
    d = setup.lens_factor
    if exact:
        if d == 0:
            return math.pi / 2
        theta = math.atan(effective_distance(setup, exact=True) / z0)
        return theta + math.pi if d < 0 else theta
    if setup.z == 0:
        return math.atan(setup.z_prime / z0)
    if d == 0:
        return math.copysign(math.pi / 2, setup.z)
    theta = math.atan(effective_distance(setup) / z0)
    if d < 0:
        theta += math.copysign(math.pi, setup.z)
    return theta


def wrap_gouy(zeta: float) -> float:
    """Reduce a continuous Gouy phase into [-pi/4, pi/4).

    This is the value of the single-arctan form 0.5 * arctan(tan 2 zeta).
    """
    half = GOUY_WRAP_PERIOD / 2
    return (zeta + half) % GOUY_WRAP_PERIOD - half


def gouy_lens(
    setup: LensSetup,
    scales: DerivedScales,
    exact: bool = False,
    wrapped: bool = False,
) -> float:
    """Gouy phase of the focused biphoton.

    Args:
        setup: Lens arrangement
        scales: Derived scales of the experiment
        exact: Use the ray-matrix effective distance instead of the default one
        wrapped: Return the single-arctan value in [-pi/4, pi/4), which is
            zero at z' = 2f, instead of the continuous branch

    Returns:
        The phase in radians. The continuous branch equals
        gouy_free(z + z') as f grows without bound and pi/2 at z' = 2f.
    """
    theta_plus = _coordinate_phase(setup, scales.z0_plus, exact)
    theta_minus = _coordinate_phase(setup, scales.z0_minus, exact)
    zeta = (theta_plus + theta_minus) / 2
    return wrap_gouy(zeta) if wrapped else zeta


def focused_geometry(setup: LensSetup, scales: DerivedScales) -> FocusedGeometry:
    """Widths, radii and Gouy phase after the lens.

    Raises:
        SingularConfigurationError: If z_prime is zero
    """
    if setup.z_prime == 0:
        raise SingularConfigurationError(ZERO_DISTANCE_AFTER_LENS_ERROR)
    geom = beam_geometry(setup.z, scales)
    k0 = scales.k0
    focused = FocusedGeometry(
        B_plus=math.sqrt(_width_squared(geom.w_plus, geom.r_plus, setup.z_prime, setup, k0)),
        B_minus=math.sqrt(_width_squared(geom.w_minus, geom.r_minus, setup.z_prime, setup, k0)),
        R_plus=_radius(geom.w_plus, geom.r_plus, scales.omega, setup, k0),
        R_minus=_radius(geom.w_minus, geom.r_minus, scales.sigma, setup, k0),
        zeta=gouy_lens(setup, scales),
    )
    logger.debug(f"Focused geometry for {setup.model_dump()}: {focused.model_dump()}")
    return focused


def fit_model_distance(params: FitModelParams) -> float:
    """Effective distance u of the fit model's fixed lens arrangement."""
    setup = LensSetup.model_construct(f=params.f, z=params.z, z_prime=params.z_prime, c_scale=1.0)
    return effective_distance(setup)


def fit_model(
    z0p_shifted: Union[float, np.ndarray],
    params: FitModelParams,
) -> Union[float, np.ndarray]:
    """Two-dimensional focused Gouy phase as a function of the shifted z0_plus.

    zeta0 + arctan(u / (x - z_f)) + arctan(u / z0_minus), the continuous
    branch of the combined-fraction form, with u the default effective
    distance. Accepts a scalar or an array of abscissae (m).

    Raises:
        SingularConfigurationError: If any abscissa equals z_f, or z' = 2f
    """
    u = fit_model_distance(params)
    offset = np.asarray(z0p_shifted, dtype=float) - params.z_f
    if np.any(offset == 0):
        raise SingularConfigurationError(FIT_MODEL_POLE_ERROR)
    values = params.zeta0 + np.arctan(u / offset) + np.arctan(u / params.z0_minus)
    if values.ndim == 0:
        return float(values)
    return values


def waist_position(z: float, setup: LensSetup, scales: DerivedScales) -> float:
    """Position after the lens of the focused plus-coordinate waist.

    2 c k0**2 w**4 r (c r - 2f) f / [k0**2 w**4 (c r - 2f)**2 + 4 f**2 c**2 r**2]
    with w, r the plus-coordinate width and radius at z. At the crystal
    (flat wavefront) the limit 2 k0**2 w**4 f / (k0**2 w**4 + 4 f**2) is used.

    Raises:
        SingularConfigurationError: If the denominator vanishes
    """
    geom = beam_geometry(z, scales)
    k0, f, c = scales.k0, setup.f, setup.c_scale
    kw4 = k0**2 * geom.w_plus**4
    if math.isinf(geom.r_plus):
        return 2.0 * kw4 * f / (kw4 + 4.0 * f**2)
    cr = c * geom.r_plus
    denominator = kw4 * (cr - 2.0 * f) ** 2 + 4.0 * f**2 * cr**2
    if denominator == 0:
        raise SingularConfigurationError(WAIST_DENOMINATOR_ERROR)
    return 2.0 * c * kw4 * geom.r_plus * (cr - 2.0 * f) * f / denominator

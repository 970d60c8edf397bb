import math

import numpy as np
import pytest
from pydantic import ValidationError

from constants import FIG4_F, FIG4_Z, FIG4_Z0
from modules.exceptions import SingularConfigurationError
from modules.parameter_management.params import scales_from_rayleigh, wavenumber
from modules.propagation_management.freeprop import beam_width, gouy_free
from modules.propagation_management.lens import (
    effective_distance,
    fit_model,
    fit_model_distance,
    focused_geometry,
    gouy_lens,
    plus_width_squared,
    waist_position,
    wrap_gouy,
)
from modules.propagation_management.propagation_constants import LENS_REMOVED_FOCAL_LENGTH
from modules.propagation_management.validations import FitModelParams, LensSetup

K0 = wavenumber(702e-9)


@pytest.fixture
def equal_scales():
    return scales_from_rayleigh(K0, FIG4_Z0, FIG4_Z0)


def _setup(z_prime, f=FIG4_F, z=FIG4_Z, c_scale=1.0):
    return LensSetup(f=f, z=z, z_prime=z_prime, c_scale=c_scale)


def test_wrapped_phase_vanishes_at_twice_the_focal_length(equal_scales):
    assert gouy_lens(_setup(2 * FIG4_F), equal_scales, wrapped=True) == pytest.approx(0.0, abs=1e-9)
    assert gouy_lens(_setup(2 * FIG4_F), equal_scales) == pytest.approx(math.pi / 2)


def test_wrapped_phase_variation_is_bounded(equal_scales):
    values = [gouy_lens(_setup(zp), equal_scales, wrapped=True) for zp in np.linspace(0, 12e-3, 1201)]
    assert max(values) - min(values) <= math.pi / 2 + 1e-6
    assert all(-math.pi / 4 <= v < math.pi / 4 for v in values)


@pytest.mark.parametrize("exact", [False, True])
def test_continuous_branch_is_continuous_through_the_pole(equal_scales, exact):
    below = gouy_lens(_setup(2 * FIG4_F - 1e-9), equal_scales, exact=exact)
    above = gouy_lens(_setup(2 * FIG4_F + 1e-9), equal_scales, exact=exact)
    at = gouy_lens(_setup(2 * FIG4_F), equal_scales, exact=exact)
    assert below < at < above
    assert above - below < 1e-5


@pytest.mark.parametrize("exact", [False, True])
def test_continuous_branch_has_no_jumps_on_a_fine_grid(equal_scales, exact):
    z_primes = np.linspace(0.0, 12e-3, 10001)
    values = np.array([gouy_lens(_setup(zp), equal_scales, exact=exact) for zp in z_primes])
    assert np.max(np.abs(np.diff(values))) < 0.01
    wrapped = np.array([gouy_lens(_setup(zp), equal_scales, wrapped=True) for zp in z_primes])
    assert np.max(np.abs(np.diff(wrapped))) > 1.0


def test_continuous_branch_matches_wrapped_modulo_quarter_turns(equal_scales):
    for zp in np.linspace(0.5e-3, 12e-3, 37):
        setup = _setup(zp)
        continuous = gouy_lens(setup, equal_scales)
        wrapped = gouy_lens(setup, equal_scales, wrapped=True)
        turns = (continuous - wrapped) / (math.pi / 2)
        assert turns == pytest.approx(round(turns), abs=1e-9)


@pytest.mark.parametrize("exact", [False, True])
def test_removing_the_lens_recovers_free_propagation(scales, exact):
    rng = np.random.default_rng(11)
    for z, zp in zip(rng.uniform(0.0, 1.0, 20), rng.uniform(1e-3, 1.0, 20)):
        setup = _setup(zp, f=LENS_REMOVED_FOCAL_LENGTH, z=z)
        assert gouy_lens(setup, scales, exact=exact) == pytest.approx(gouy_free(z + zp, scales), abs=1e-9)
        focused = focused_geometry(setup, scales)
        assert focused.B_plus == pytest.approx(beam_width(z + zp, scales.z0_plus, scales.omega), rel=1e-8)
        assert focused.B_minus == pytest.approx(beam_width(z + zp, scales.z0_minus, scales.sigma), rel=1e-8)


def test_effective_distance_forms():
    same = _setup(4e-3, z=4e-3)
    assert effective_distance(same) == pytest.approx(effective_distance(same, exact=True))
    at_lens = _setup(0.0)
    assert effective_distance(at_lens) == effective_distance(at_lens, exact=True) == FIG4_Z
    general = _setup(2e-3)
    d = 1 - 2e-3 / (2 * FIG4_F)
    assert effective_distance(general) == pytest.approx(FIG4_Z / d + 2e-3)
    assert effective_distance(general, exact=True) == pytest.approx(FIG4_Z + 2e-3 / d)
    assert effective_distance(general) != pytest.approx(effective_distance(general, exact=True))
    with pytest.raises(SingularConfigurationError):
        effective_distance(_setup(2 * FIG4_F))


def test_crystal_at_the_lens_reduces_to_z_prime(scales):
    setup = _setup(2 * FIG4_F, z=0.0)
    assert effective_distance(setup) == 2 * FIG4_F
    assert gouy_lens(setup, scales) == pytest.approx(gouy_free(2 * FIG4_F, scales))


def test_wrap_gouy_range():
    assert wrap_gouy(0.0) == 0.0
    assert wrap_gouy(math.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert wrap_gouy(math.pi / 4 - 1e-3) == pytest.approx(math.pi / 4 - 1e-3)
    assert wrap_gouy(math.pi / 4 + 1e-3) == pytest.approx(-math.pi / 4 + 1e-3)


def test_focused_geometry_needs_distance_after_lens(scales):
    with pytest.raises(SingularConfigurationError):
        focused_geometry(_setup(0.0), scales)


def test_lens_setup_validation():
    with pytest.raises(ValidationError):
        LensSetup(f=0.0, z=1.0, z_prime=1.0)
    with pytest.raises(ValidationError):
        LensSetup(f=1.0, z=-1.0, z_prime=1.0)
    with pytest.raises(ValidationError):
        LensSetup(f=1.0, z=1.0, z_prime=1.0, c_scale=-2.0)


def test_radius_is_evaluated_as_written(scales):
    focused = focused_geometry(_setup(0.5, f=0.2, z=0.5), scales)
    assert math.isfinite(focused.R_plus)
    assert math.isfinite(focused.R_minus)
    assert focused.R_plus != focused.R_minus


def test_fit_model_distance_for_default_arrangement():
    assert fit_model_distance(FitModelParams()) == pytest.approx(1.27756, rel=1e-5)


def test_fit_model_values():
    params = FitModelParams()
    u = fit_model_distance(params)
    far = fit_model(1e7, params)
    assert far == pytest.approx(params.zeta0 + math.atan(u / params.z0_minus), abs=1e-6)
    below = fit_model(params.z_f - 1e-3, params)
    above = fit_model(params.z_f + 1e-3, params)
    assert above - below == pytest.approx(math.pi, abs=1e-5)
    x = np.array([0.0, 0.01, 0.02])
    np.testing.assert_allclose(fit_model(x, params), [fit_model(float(v), params) for v in x])


def test_fit_model_pole():
    params = FitModelParams()
    with pytest.raises(SingularConfigurationError):
        fit_model(params.z_f, params)
    with pytest.raises(SingularConfigurationError):
        fit_model(0.0, FitModelParams(z_prime=2 * params.f))


def test_waist_at_the_crystal_uses_the_flat_wavefront_limit(scales):
    setup = _setup(0.4, f=0.2, z=0.0)
    kw4 = scales.k0**2 * scales.omega**4
    expected = 2 * kw4 * 0.2 / (kw4 + 4 * 0.2**2)
    assert waist_position(0.0, setup, scales) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("c_scale", [1.0, 2.0])
def test_waist_is_a_stationary_point_of_the_width(scales, c_scale):
    setup = _setup(0.4, f=0.2, z=0.5, c_scale=c_scale)
    position = waist_position(0.5, setup, scales)
    h = 1e-6 * abs(position)
    at = plus_width_squared(position, setup, scales)
    assert plus_width_squared(position - h, setup, scales) >= at
    assert plus_width_squared(position + h, setup, scales) >= at

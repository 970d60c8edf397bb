import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from modules.exceptions import DomainError
from modules.parameter_management.params import derive_scales, scales_from_rayleigh
from modules.propagation_management.freeprop import (
    beam_geometry,
    beam_width,
    curvature_radius,
    gouy_free,
    gouy_free_single_arctan,
    wavefunction,
    wavefunction_norm,
)


def test_unit_example_is_exact():
    # atan(1/2) + atan(2) == pi/2
    scales = scales_from_rayleigh(1.0, 4.0, 1.0)
    assert gouy_free(2.0, scales) == pytest.approx(math.pi / 4, abs=1e-15)


def test_gouy_asymptote(scales):
    z = 1e3 * max(scales.z0_plus, scales.z0_minus)
    assert gouy_free(z, scales) > math.pi / 2 - 1e-3
    assert gouy_free(-z, scales) < -math.pi / 2 + 1e-3
    assert gouy_free(0.0, scales) == 0.0


def test_gouy_is_odd_and_increasing(scales):
    z = np.linspace(-50 * scales.z0_plus, 50 * scales.z0_plus, 201)
    values = np.array([gouy_free(v, scales) for v in z])
    assert np.all(np.diff(values) > 0)
    np.testing.assert_allclose(values, -values[::-1], atol=1e-12)


def test_wider_correlation_accumulates_less_phase(source_params, sigma):
    narrow = derive_scales(source_params.model_copy(update={"omega": 5 * sigma}))
    wide = derive_scales(source_params.model_copy(update={"omega": 10 * sigma}))
    for z in np.linspace(1e-4, 0.5, 50):
        assert gouy_free(z, narrow) > gouy_free(z, wide)


def test_single_arctan_form_agrees_inside_and_drops_outside(scales):
    crossover = math.sqrt(scales.z0_plus * scales.z0_minus)
    for z in (0.1 * crossover, 0.5 * crossover, 0.9 * crossover):
        assert gouy_free_single_arctan(z, scales) == pytest.approx(gouy_free(z, scales), abs=1e-12)
    for z in (1.5 * crossover, 10 * crossover):
        assert gouy_free_single_arctan(z, scales) == pytest.approx(
            gouy_free(z, scales) - math.pi / 2, abs=1e-12
        )
    assert gouy_free_single_arctan(crossover, scales) == pytest.approx(math.pi / 4)


def test_beam_width_and_radius():
    assert beam_width(0.0, 2.0, 0.5) == 0.5
    assert beam_width(2.0, 2.0, 0.5) == pytest.approx(0.5 * math.sqrt(2))
    assert curvature_radius(0.0, 2.0) == math.inf
    assert curvature_radius(2.0, 2.0) == pytest.approx(4.0)
    assert curvature_radius(-2.0, 2.0) == pytest.approx(-4.0)
    with pytest.raises(DomainError):
        beam_width(1.0, 0.0, 1.0)


def test_widths_start_at_their_own_waist(scales):
    geom = beam_geometry(0.0, scales)
    assert geom.w_minus == pytest.approx(scales.sigma, rel=1e-15)
    assert geom.w_plus == pytest.approx(scales.omega, rel=1e-15)
    assert math.isinf(geom.r_plus) and math.isinf(geom.r_minus)


def test_geometry_at_rayleigh_length(scales):
    geom = beam_geometry(scales.z0_minus, scales)
    assert geom.w_minus == pytest.approx(math.sqrt(2) * scales.sigma)
    assert geom.r_minus == pytest.approx(2 * scales.z0_minus)
    assert geom.zeta_minus == pytest.approx(math.pi / 4)
    assert geom.zeta == (geom.zeta_plus + geom.zeta_minus) / 2


def test_wavefunction_at_origin(scales):
    psi = wavefunction(0.0, 0.0, beam_geometry(0.0, scales), scales)
    assert psi.modulus == pytest.approx(1 / math.sqrt(4 * math.pi * scales.omega * scales.sigma))
    assert psi.phase == 0.0


def test_wavefunction_on_axis_phase_is_minus_gouy(scales):
    for z in np.linspace(-50.0, 50.0, 101) * scales.z0_minus:
        psi = wavefunction(0.0, 0.0, beam_geometry(z, scales), scales)
        gap = (psi.phase + gouy_free(z, scales) + math.pi) % (2 * math.pi) - math.pi
        assert gap == pytest.approx(0.0, abs=1e-12), z


def test_wavefunction_envelope(scales):
    geom = beam_geometry(2 * scales.z0_minus, scales)
    center = wavefunction(0.0, 0.0, geom, scales).modulus
    off = wavefunction(geom.w_plus, geom.w_minus, geom, scales).modulus
    assert off / center == pytest.approx(math.exp(-2.0))


@pytest.mark.parametrize("normalized, expected", [(False, 0.25), (True, 1.0)])
def test_norm_is_z_independent(scales, normalized, expected):
    for z in (0.0, scales.z0_minus, -40 * scales.z0_plus):
        assert wavefunction_norm(beam_geometry(z, scales), normalized) == pytest.approx(expected)
    rng = np.random.default_rng(3)
    for ratio, multiple in zip(rng.uniform(0.05, 20.0, 10), rng.uniform(-100.0, 100.0, 10)):
        random_scales = scales_from_rayleigh(scales.k0, ratio * scales.z0_minus, scales.z0_minus)
        geom = beam_geometry(multiple * random_scales.z0_minus, random_scales)
        assert wavefunction_norm(geom, normalized) == pytest.approx(expected, rel=1e-12)


def test_norm_by_grid_integration(scales):
    geom = beam_geometry(1.5 * scales.z0_minus, scales)
    r = np.linspace(-6 * geom.w_plus, 6 * geom.w_plus, 241)
    q = np.linspace(-6 * geom.w_minus, 6 * geom.w_minus, 241)
    density = np.array(
        [[wavefunction(a, b, geom, scales, normalized=True).modulus ** 2 for b in q] for a in r]
    )
    total = 2.0 * trapezoid(trapezoid(density, q, axis=1), r)
    assert total == pytest.approx(1.0, rel=1e-6)

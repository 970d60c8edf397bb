import math

import numpy as np
import pytest

from constants import FIG3_Z, FIG3_Z0_MINUS
from modules.entanglement_management.entangle import (
    covariance_sweep,
    log_negativity,
    log_negativity_from_matrix,
    moments,
    negativity_schmidt_gap,
    pt_spectrum,
    schmidt_number,
    schmidt_number_at,
)
from modules.entanglement_management.validations import CovarianceMatrix
from modules.exceptions import NumericalInconsistencyError
from modules.parameter_management.params import scales_from_rayleigh, wavenumber
from modules.propagation_management.freeprop import beam_geometry, gouy_free

K0 = wavenumber(702e-9)
Z0_MINUS = 1.2e-3


def _scales(omega_over_sigma: float):
    return scales_from_rayleigh(K0, omega_over_sigma**2 * Z0_MINUS, Z0_MINUS)


def test_negativity_is_z_independent_and_matches_closed_form():
    rng = np.random.default_rng(2024)
    for ratio in rng.uniform(0.1, 10.0, size=20):
        scales = _scales(ratio)
        z_values = [m * Z0_MINUS for m in (0, 1, -1, 10, -10, 100, -100)]
        values = covariance_sweep(scales, z_values)
        np.testing.assert_allclose(values, abs(math.log(ratio)), atol=1e-10)
        assert log_negativity(scales) == pytest.approx(abs(math.log(ratio)), abs=1e-12)


def test_mixed_moment_follows_the_gouy_angles(scales):
    for z in np.linspace(-30.0, 30.0, 50) * scales.z0_minus:
        geom = beam_geometry(float(z), scales)
        sigma_xp = float(moments(None, scales, float(z)).matrix[0, 1])
        expected = (math.tan(geom.zeta_plus) + math.tan(geom.zeta_minus)) / 4
        assert sigma_xp == pytest.approx(expected, rel=1e-12, abs=1e-15)


def _total_variation(values) -> float:
    return float(np.sum(np.abs(np.diff(values))))


def test_negativity_dominates_gouy_below_equal_rayleigh_lengths():
    ratios = np.geomspace(0.01, 1.0, 200)
    sweeps = [scales_from_rayleigh(K0, r * FIG3_Z0_MINUS, FIG3_Z0_MINUS) for r in ratios]
    negativity = [covariance_sweep(s, [FIG3_Z])[0] for s in sweeps]
    gouy = [gouy_free(FIG3_Z, s) for s in sweeps]
    assert _total_variation(negativity) > 10 * _total_variation(gouy)


def test_gouy_varies_above_equal_rayleigh_lengths():
    ratios = np.geomspace(1.0, 20.0, 200)
    gouy = [gouy_free(FIG3_Z, scales_from_rayleigh(K0, r * FIG3_Z0_MINUS, FIG3_Z0_MINUS)) for r in ratios]
    assert max(gouy) - min(gouy) > 0.1


def test_partial_transpose_spectrum(scales):
    omega_over_sigma = scales.omega / scales.sigma
    for z in (0.0, 2 * scales.z0_minus, -7 * scales.z0_plus):
        spectrum = pt_spectrum(moments(None, scales, z))
        assert spectrum.nu_1 == pytest.approx(omega_over_sigma / 2, rel=1e-10)
        assert spectrum.nu_2 == pytest.approx(1 / (2 * omega_over_sigma), rel=1e-10)
        assert spectrum.nu_min == spectrum.nu_2


def test_separable_at_equal_widths():
    M = moments(None, _scales(1.0), 3 * Z0_MINUS)
    assert log_negativity_from_matrix(M) == pytest.approx(0.0, abs=1e-12)


def test_covariance_matrix_is_a_pure_state(scales):
    for z in (0.0, scales.z0_minus, 30 * scales.z0_minus):
        M = moments(None, scales, z)
        np.testing.assert_array_equal(M.matrix, M.matrix.T)
        assert M.det_M == pytest.approx(1 / 16, rel=1e-9)
        assert M.det_G == pytest.approx(M.det_H, rel=1e-12)


def test_standard_form_reproduces_determinants(scales):
    M = moments(None, scales, 4 * scales.z0_minus)
    g, h, c, cp = M.standard_form()
    assert g**2 == pytest.approx(M.det_G, rel=1e-10)
    assert h**2 == pytest.approx(M.det_H, rel=1e-10)
    assert c * cp == pytest.approx(M.det_C, rel=1e-9)
    assert (g * h - c**2) * (g * h - cp**2) == pytest.approx(M.det_M, rel=1e-8)


def test_moments_check_omega(source_params, scales):
    other = source_params.model_copy(update={"omega": 2 * source_params.omega})
    moments(source_params, scales, 0.0)
    with pytest.raises(NumericalInconsistencyError):
        moments(other, scales, 0.0)


def test_covariance_matrix_validation():
    with pytest.raises(ValueError):
        CovarianceMatrix(entries=np.eye(3), z=0.0)
    asymmetric = np.eye(4)
    asymmetric[0, 1] = 0.3
    with pytest.raises(ValueError):
        CovarianceMatrix(entries=asymmetric, z=0.0)


def test_schmidt_unit_example():
    # Omega = 2 sigma, k0 = 1, z = 2
    scales = scales_from_rayleigh(1.0, 4.0, 1.0)
    assert schmidt_number(scales, z=2.0) == pytest.approx(6.25, abs=1e-12)
    assert schmidt_number_at(scales, 2.0) == pytest.approx(6.25, abs=1e-12)


def test_schmidt_identity_over_random_states():
    rng = np.random.default_rng(7)
    for ratio, z_over in zip(rng.uniform(0.1, 10.0, 100), rng.uniform(-200.0, 200.0, 100)):
        scales = _scales(ratio)
        closed = (1 / ratio + ratio) ** 2
        assert schmidt_number_at(scales, z_over * Z0_MINUS) == pytest.approx(closed, rel=1e-9)


def test_schmidt_minimum_is_four():
    assert schmidt_number(_scales(1.0)) == pytest.approx(4.0)


@pytest.mark.parametrize("ratio", [0.05, 0.3, 1.0, 3.0, 10.0, 40.0, 1000.0])
def test_gap_between_schmidt_and_negativity(ratio):
    scales = scales_from_rayleigh(K0, ratio * Z0_MINUS, Z0_MINUS)
    R = max(ratio, 1 / ratio)
    gap = negativity_schmidt_gap(scales)
    assert gap == pytest.approx(math.log(1 + 1 / R), abs=1e-10)
    if R >= 10:
        assert gap <= 1 / R


def test_log_base_two(scales):
    assert log_negativity(scales, "2") == pytest.approx(log_negativity(scales) / math.log(2))
    M = moments(None, scales, scales.z0_minus)
    assert log_negativity_from_matrix(M, "10") == pytest.approx(math.log10(5.0), rel=1e-10)

"""Closed forms checked against the quadrature oracle and against each other.

Each check compares a set of configurations and reports its largest
deviation; a numerical failure inside a check fails that check only.
"""

import cmath
import logging
import math
from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np

from constants import SOURCE_L_P, SOURCE_LAMBDA_P

from modules.entanglement_management.entangle import (
    covariance_sweep,
    log_negativity,
    moments,
    schmidt_number_at,
)
from modules.exceptions import BiphotonError
from modules.oracle_management.oracle import (
    FresnelOracle,
    gaussian_moments,
    waist_by_minimization,
)
from modules.oracle_management.validations import QuadratureSpec
from modules.parameter_management.params import derive_scales, derive_sigma
from modules.parameter_management.validations import DerivedScales, ExperimentParams
from modules.propagation_management.freeprop import gouy_free
from modules.propagation_management.lens import gouy_lens, waist_position
from modules.propagation_management.validations import LensSetup
from modules.verification_management.validations import CheckResult, VerificationReport
from modules.verification_management.verification_constants import (
    DEFAULT_OMEGA_MULTIPLIER,
    FREE_PHASE_DISTANCES,
    LENS_SETUPS,
    MOMENT_DISTANCES,
    MOMENT_RTOL,
    NEGATIVITY_ATOL,
    NEGATIVITY_DISTANCES,
    NORM_DISTANCES,
    NORM_RTOL,
    PHASE_ATOL,
    SCHMIDT_DISTANCES,
    SCHMIDT_RTOL,
    VERIFY_HALF_WIDTH,
    VERIFY_QUAD_POINTS,
    WAIST_RTOL,
    WAIST_SETUPS,
)

logger = logging.getLogger(__name__)

# (moment key, matrix row, matrix column)
MOMENT_ENTRIES = (
    ("x1_sq", 0, 0),
    ("sigma_xp", 0, 1),
    ("x1x2", 0, 2),
    ("x1p2", 0, 3),
    ("p1_sq", 1, 1),
    ("p1p2", 1, 3),
)


def _phase_difference(a: float, b: float) -> float:
    """|a - b| reduced modulo 2 pi."""
    return abs((a - b + math.pi) % (2.0 * math.pi) - math.pi)


def _relative_error(value: float, reference: float) -> float:
    if reference == 0:
        return abs(value)
    return abs(value - reference) / abs(reference)


class VerificationSuite:
    """Runs the closed-form consistency checks for one parameter set."""

    def __init__(self, params: ExperimentParams, spec: Optional[QuadratureSpec] = None):
        self.params = params
        self.scales: DerivedScales = derive_scales(params)
        self.oracle = FresnelOracle(
            spec or QuadratureSpec(half_width=VERIFY_HALF_WIDTH, n_points=VERIFY_QUAD_POINTS)
        )

    def _run(self, name: str, tolerance: float, errors: Callable[[], Iterable[float]]) -> CheckResult:
        try:
            values: List[float] = list(errors())
        except BiphotonError as e:
            logger.error(f"Check {name} raised: {e}")
            return CheckResult(
                name=name, passed=False, max_error=math.inf, tolerance=tolerance, cases=0, detail=str(e)
            )
        max_error = max(values) if values else 0.0
        passed = bool(max_error <= tolerance)
        if not passed:
            logger.warning(f"Check {name} failed: max error {max_error:.3e} > {tolerance:.3e}")
        return CheckResult(
            name=name, passed=passed, max_error=max_error, tolerance=tolerance, cases=len(values)
        )

    def free_phase_errors(self) -> Iterable[float]:
        """On-axis oracle phase against -gouy_free."""
        s = self.scales
        for multiple in FREE_PHASE_DISTANCES:
            z = multiple * s.z0_minus
            field_plus = self.oracle.propagate_1d(s.omega, z, s.k0, 0.0)
            field_minus = self.oracle.propagate_1d(s.sigma, z, s.k0, 0.0)
            phase = cmath.phase(field_plus) + cmath.phase(field_minus)
            yield _phase_difference(phase, -gouy_free(z, s))

    def lens_phase_errors(self) -> Iterable[float]:
        """On-axis lensed oracle phase against -gouy_lens on the ray-matrix branch."""
        s = self.scales
        for f, z, z_prime in LENS_SETUPS:
            setup = LensSetup(f=f, z=z, z_prime=z_prime, c_scale=self.params.c_scale)
            field_plus = self.oracle.propagate_lens_1d(s.omega, z, f, z_prime, s.k0, 0.0)
            field_minus = self.oracle.propagate_lens_1d(s.sigma, z, f, z_prime, s.k0, 0.0)
            phase = cmath.phase(field_plus) + cmath.phase(field_minus)
            yield _phase_difference(phase, -gouy_lens(setup, s, exact=True))

    def norm_errors(self) -> Iterable[float]:
        s = self.scales
        for w0 in (s.omega, s.sigma):
            initial = w0 * math.sqrt(math.pi / 2.0)
            for multiple in NORM_DISTANCES:
                yield _relative_error(self.oracle.norm(w0, multiple * s.z0_minus, s.k0), initial)

    def moment_errors(self) -> Iterable[float]:
        """Covariance entries against per-coordinate Gaussian integrals."""
        s = self.scales
        for multiple in MOMENT_DISTANCES:
            z = multiple * s.z0_minus
            matrix = moments(self.params, s, z).matrix
            reference = gaussian_moments(self.params, s, z).dimensionless(s.sigma)
            scale = float(np.max(np.abs(matrix)))
            for key, row, column in MOMENT_ENTRIES:
                yield abs(matrix[row, column] - reference[key]) / scale
                yield abs(matrix[column, row] - reference[key]) / scale

    def waist_errors(self) -> Iterable[float]:
        """Closed-form waist position against a direct minimisation of B_plus**2."""
        for f, z in WAIST_SETUPS:
            setup = LensSetup(f=f, z=z, z_prime=2.0 * f, c_scale=self.params.c_scale)
            closed = waist_position(z, setup, self.scales)
            searched = waist_by_minimization(setup, self.scales)
            yield abs(closed - searched) / max(abs(closed), f)

    def schmidt_errors(self) -> Iterable[float]:
        s = self.scales
        closed = (math.sqrt(s.z0_minus / s.z0_plus) + math.sqrt(s.z0_plus / s.z0_minus)) ** 2
        for multiple in SCHMIDT_DISTANCES:
            yield _relative_error(schmidt_number_at(s, multiple * s.z0_minus), closed)

    def negativity_errors(self) -> Iterable[float]:
        """Covariance-pipeline negativity at several z against the closed form."""
        s = self.scales
        closed = log_negativity(s)
        z_values = [multiple * s.z0_minus for multiple in NEGATIVITY_DISTANCES]
        for value in covariance_sweep(s, z_values):
            yield abs(float(value) - closed)

    def checks(self) -> Tuple[Tuple[str, float, Callable[[], Iterable[float]]], ...]:
        return (
            ("free_phase", PHASE_ATOL, self.free_phase_errors),
            ("lens_phase", PHASE_ATOL, self.lens_phase_errors),
            ("norm", NORM_RTOL, self.norm_errors),
            ("moments", MOMENT_RTOL, self.moment_errors),
            ("waist", WAIST_RTOL, self.waist_errors),
            ("schmidt_identity", SCHMIDT_RTOL, self.schmidt_errors),
            ("negativity_z_independence", NEGATIVITY_ATOL, self.negativity_errors),
        )

    def run(self) -> VerificationReport:
        results = tuple(self._run(name, tolerance, errors) for name, tolerance, errors in self.checks())
        report = VerificationReport(checks=results)
        logger.info(f"Verification finished: {sum(r.passed for r in results)}/{len(results)} passed")
        return report


def default_verification_params() -> ExperimentParams:
    """Default source with Omega = 5 sigma, so that the state is entangled."""
    sigma = derive_sigma(SOURCE_LAMBDA_P, SOURCE_L_P)
    return ExperimentParams.source_defaults(omega=DEFAULT_OMEGA_MULTIPLIER * sigma)


def verify(
    params: Optional[ExperimentParams] = None,
    spec: Optional[QuadratureSpec] = None,
) -> VerificationReport:
    """Run every consistency check.

    Args:
        params: Experiment parameters (Omega = 5 sigma default source if None)
        spec: Quadrature settings for the oracle checks

    Returns:
        VerificationReport; ``report.passed`` is True iff every check passed
    """
    return VerificationSuite(params or default_verification_params(), spec).run()

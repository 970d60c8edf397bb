"""Direct-quadrature oracle for the closed-form propagation results.

The propagation kernel is integrated numerically on a uniform grid,
never by completing the square, so agreement with the closed forms is an
independent check. The kernel is sqrt(k0 / (i pi z)) * exp(i k0 (x - x')**2 / z)
and the thin lens multiplies by exp(-i k0 x**2 / 2f).
"""

import cmath
import logging
import math
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import minimize_scalar

from modules.exceptions import DomainError, QuadratureError
from modules.oracle_management.oracle_constants import (
    CHUNK_ELEMENTS,
    DOUBLING_RTOL,
    MAX_PHASE_STEP,
    MAX_QUADRATURE_NODES,
    NEGATIVE_LENS_DISTANCE_ERROR,
    NODE_BUDGET_ERROR,
    NORM_SAMPLE_POINTS,
    NOT_CONVERGED_ERROR,
    WIDTH_RATIO_ERROR,
    WIDTH_SAMPLE_FACTOR,
)
from modules.oracle_management.validations import MomentSet, QuadratureSpec
from modules.parameter_management.validations import DerivedScales, ExperimentParams
from modules.propagation_management.lens import plus_width_squared
from modules.propagation_management.validations import LensSetup

logger = logging.getLogger(__name__)

Points = Union[float, np.ndarray]


class FresnelOracle:
    """Numerical Fresnel propagation by composite trapezoid quadrature."""

    def __init__(self, spec: Optional[QuadratureSpec] = None):
        """Initialize the oracle.

        Args:
            spec: Quadrature settings (environment defaults if None)
        """
        self.spec = spec or QuadratureSpec()

    def _node_count(self, spec: QuadratureSpec, half_window: float, phase_rate: float) -> int:
        """Nodes keeping the phase step below MAX_PHASE_STEP at the window edge.

        Raises:
            QuadratureError: If the doubled grid would exceed the node budget
        """
        needed = math.ceil(2.0 * half_window * phase_rate / MAX_PHASE_STEP) + 1
        n = max(spec.n_points, needed)
        n += n % 2
        if 2 * n - 1 > MAX_QUADRATURE_NODES:
            logger.error(f"Quadrature needs {2 * n - 1} nodes (budget {MAX_QUADRATURE_NODES})")
            raise QuadratureError(f"{NODE_BUDGET_ERROR} ({2 * n - 1} > {MAX_QUADRATURE_NODES})")
        return n

    @staticmethod
    def _kernel_sums(
        nodes: np.ndarray,
        values: np.ndarray,
        eval_points: np.ndarray,
        k0: float,
        z: float,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Trapezoid rule for the kernel integral on ``nodes`` and on every other node.

        ``nodes`` is uniform with an odd count. Both sums share one evaluation of
        the kernel; the coarse weights vanish on the odd nodes.

        Returns:
            (coarse, fine) complex arrays over ``eval_points``
        """
        h = nodes[1] - nodes[0]
        weights = np.zeros((len(nodes), 2), dtype=complex)
        weights[:, 1] = values * h
        weights[::2, 0] = values[::2] * 2.0 * h
        weights[[0, -1], :] *= 0.5
        prefactor = cmath.sqrt(k0 / (1j * math.pi * z))

        result = np.zeros((len(eval_points), 2), dtype=complex)
        block = min(len(nodes), CHUNK_ELEMENTS)
        rows = max(1, CHUNK_ELEMENTS // block)
        for start in range(0, len(nodes), block):
            node_block = nodes[start:start + block]
            weight_block = weights[start:start + block]
            for row in range(0, len(eval_points), rows):
                x = eval_points[row:row + rows, None]
                phase = k0 * (x - node_block[None, :]) ** 2 / z
                result[row:row + rows] += np.exp(1j * phase) @ weight_block
        return prefactor * result[:, 0], prefactor * result[:, 1]

    @staticmethod
    def _check_doubling(coarse: np.ndarray, fine: np.ndarray, reference: float) -> None:
        scale = max(float(np.max(np.abs(fine))), reference)
        change = float(np.max(np.abs(fine - coarse)))
        if change > DOUBLING_RTOL * scale:
            logger.error(f"Quadrature change {change:.3e} against scale {scale:.3e}")
            raise QuadratureError(f"{NOT_CONVERGED_ERROR} ({change / scale:.3e})")

    @staticmethod
    def _as_points(eval_at: Points) -> np.ndarray:
        return np.atleast_1d(np.asarray(eval_at, dtype=float))

    @staticmethod
    def _unwrap(result: np.ndarray, eval_at: Points):
        if np.ndim(eval_at) == 0:
            return complex(result[0])
        return result

    def propagate_1d(
        self,
        w0: float,
        z: float,
        k0: float,
        eval_at: Points,
        spec: Optional[QuadratureSpec] = None,
    ):
        """Propagate exp(-x**2 / w0**2) over distance z by direct quadrature.

        Args:
            w0: Initial width (m)
            z: Propagation distance (m); z == 0 returns the initial field
            k0: Wavenumber (1/m)
            eval_at: Observation point(s) (m)
            spec: Quadrature settings overriding the oracle's own

        Returns:
            Complex amplitude, or an array of them for array input

        Raises:
            QuadratureError: On node-budget overflow or failed doubling check
        """
        spec = spec or self.spec
        x = self._as_points(eval_at)
        if z == 0:
            return self._unwrap(np.exp(-(x**2) / w0**2).astype(complex), eval_at)

        half_window = spec.half_width * w0
        phase_rate = 2.0 * k0 * (np.max(np.abs(x)) + half_window) / abs(z)
        n = self._node_count(spec, half_window, phase_rate)

        fine_nodes = np.linspace(-half_window, half_window, 2 * n - 1)
        source = np.exp(-(fine_nodes**2) / w0**2).astype(complex)
        coarse, fine = self._kernel_sums(fine_nodes, source, x, k0, z)

        # on-axis modulus of the propagated unit Gaussian bounds |psi|
        peak = (1.0 + (z / (k0 * w0**2)) ** 2) ** -0.25
        self._check_doubling(coarse, fine, peak)
        logger.debug(f"propagate_1d w0={w0} z={z} used {2 * n - 1} nodes")
        return self._unwrap(fine, eval_at)

    def propagate_lens_1d(
        self,
        w0: float,
        z: float,
        f: float,
        z_prime: float,
        k0: float,
        eval_at: Points,
        spec: Optional[QuadratureSpec] = None,
    ):
        """Propagate over z, apply the thin lens, then propagate over z_prime.

        The lens-plane field is itself computed by quadrature on the fine
        second-stage grid; the coarse grid reuses every other node.

        Raises:
            DomainError: If z or z_prime is not strictly positive
            QuadratureError: As for propagate_1d
        """
        if not (z > 0 and z_prime > 0):
            raise DomainError("z, z_prime", (z, z_prime), NEGATIVE_LENS_DISTANCE_ERROR)
        spec = spec or self.spec
        x = self._as_points(eval_at)

        z0 = k0 * w0**2
        # sizes the window only
        width_at_lens = w0 * math.hypot(1.0, z / z0)
        half_window = spec.half_width * width_at_lens
        field_curvature = abs(z / (z * z + z0 * z0) - 1.0 / (2.0 * f))
        phase_rate = (
            2.0 * k0 * half_window * field_curvature
            + 2.0 * k0 * (np.max(np.abs(x)) + half_window) / z_prime
        )
        n = self._node_count(spec, half_window, phase_rate)

        fine_nodes = np.linspace(-half_window, half_window, 2 * n - 1)
        at_lens = self.propagate_1d(w0, z, k0, fine_nodes, spec)
        after_lens = at_lens * np.exp(-1j * k0 * fine_nodes**2 / (2.0 * f))

        coarse, fine = self._kernel_sums(fine_nodes, after_lens, x, k0, z_prime)
        self._check_doubling(coarse, fine, float(np.max(np.abs(at_lens))))
        logger.debug(f"propagate_lens_1d z={z} f={f} z_prime={z_prime} used {2 * n - 1} nodes")
        return self._unwrap(fine, eval_at)

    @staticmethod
    def _width_from_field(field: Callable[[np.ndarray], np.ndarray], first_sample: float) -> float:
        """1/e**2 width B from |psi(x)|**2 / |psi(0)|**2 = exp(-2 x**2 / B**2).

        Sampled twice: the second sample sits near the estimated width.

        Raises:
            QuadratureError: If the sampled intensity ratio is not in (0, 1)
        """
        sample = first_sample
        width = first_sample
        for _ in range(2):
            values = field(np.array([0.0, sample]))
            ratio = abs(values[1]) ** 2 / abs(values[0]) ** 2 if values[0] != 0 else math.nan
            if not 0.0 < ratio < 1.0:
                logger.error(f"Width estimate at x={sample:.3e} saw intensity ratio {ratio}")
                raise QuadratureError(f"{WIDTH_RATIO_ERROR} (got {ratio})")
            width = math.sqrt(-2.0 * sample**2 / math.log(ratio))
            sample = WIDTH_SAMPLE_FACTOR * width
        return width

    def beam_width(self, w0: float, z: float, k0: float, spec: Optional[QuadratureSpec] = None) -> float:
        return self._width_from_field(lambda x: self.propagate_1d(w0, z, k0, x, spec), w0)

    def lens_beam_width(
        self,
        w0: float,
        z: float,
        f: float,
        z_prime: float,
        k0: float,
        spec: Optional[QuadratureSpec] = None,
    ) -> float:
        return self._width_from_field(
            lambda x: self.propagate_lens_1d(w0, z, f, z_prime, k0, x, spec), w0
        )

    def norm(self, w0: float, z: float, k0: float, spec: Optional[QuadratureSpec] = None) -> float:
        """Integral of |psi|**2 over a sampled line at distance z.

        The initial value is w0 * sqrt(pi / 2).
        """
        spec = spec or self.spec
        width = w0 * math.hypot(1.0, z / (k0 * w0**2))
        x = np.linspace(-spec.half_width * width, spec.half_width * width, NORM_SAMPLE_POINTS + 1)
        density = np.abs(self.propagate_1d(w0, z, k0, x, spec)) ** 2
        return float(trapezoid(density, x))


def gaussian_moments(
    p: Optional[ExperimentParams],
    scales: DerivedScales,
    z: float,
) -> MomentSet:
    """Second moments of the biphoton by Gaussian integration, coordinate by coordinate.

    Each relative coordinate u in {r, q} carries exp(-a u**2) with
    a = 1 / (w0**2 + i z / k0), for which

        <u**2> = 1 / (4 Re a),  <p**2> = |a|**2 / Re a,  sym<u p> = -Im a / (2 Re a).

    The photon moments follow from x1 = r + q, x2 = r - q, p1 = (p_r + p_q) / 2.
    Omega is taken from ``p`` when given.
    """
    omega = p.omega if p is not None else scales.omega
    k0 = scales.k0

    def coordinate(w0: float):
        a = 1.0 / complex(w0**2, z / k0)
        position = 1.0 / (4.0 * a.real)
        momentum = abs(a) ** 2 / a.real
        mixed = -a.imag / (2.0 * a.real)
        return position, momentum, mixed

    rr, pr, sr = coordinate(omega)
    qq, pq, sq = coordinate(scales.sigma)
    return MomentSet(
        z=z,
        x1_sq=rr + qq,
        x1x2=rr - qq,
        p1_sq=(pr + pq) / 4.0,
        p1p2=(pr - pq) / 4.0,
        x1p2=(sr - sq) / 2.0,
        sigma_xp=(sr + sq) / 2.0,
    )


def waist_by_minimization(setup: LensSetup, scales: DerivedScales) -> float:
    """z_prime minimising B_plus**2, found by golden-section search."""
    start = 2.0 * setup.f
    result = minimize_scalar(
        lambda z_prime: plus_width_squared(z_prime, setup, scales),
        bracket=(0.5 * start, start),
        method="golden",
        options={"xtol": 1e-12},
    )
    logger.debug(f"Golden-section waist {result.x} after {result.nfev} evaluations")
    return float(result.x)


# Global oracle instance
fresnel_oracle = FresnelOracle()


def propagate_1d(w0: float, z: float, k0: float, eval_at: Points, spec: Optional[QuadratureSpec] = None):
    """Free propagation by quadrature (see FresnelOracle.propagate_1d)."""
    return fresnel_oracle.propagate_1d(w0, z, k0, eval_at, spec)


def propagate_lens_1d(
    w0: float,
    z: float,
    f: float,
    z_prime: float,
    k0: float,
    eval_at: Points,
    spec: Optional[QuadratureSpec] = None,
):
    """Lensed propagation by quadrature (see FresnelOracle.propagate_lens_1d)."""
    return fresnel_oracle.propagate_lens_1d(w0, z, f, z_prime, k0, eval_at, spec)


def oracle_beam_width(w0: float, z: float, k0: float, spec: Optional[QuadratureSpec] = None) -> float:
    return fresnel_oracle.beam_width(w0, z, k0, spec)


def oracle_lens_beam_width(
    w0: float,
    z: float,
    f: float,
    z_prime: float,
    k0: float,
    spec: Optional[QuadratureSpec] = None,
) -> float:
    return fresnel_oracle.lens_beam_width(w0, z, f, z_prime, k0, spec)


def oracle_norm(w0: float, z: float, k0: float, spec: Optional[QuadratureSpec] = None) -> float:
    return fresnel_oracle.norm(w0, z, k0, spec)

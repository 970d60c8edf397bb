"""Least-squares fit of the focused Gouy-phase model to (z0p, zeta) data.

The model zeta0 + arctan(u / (x - z_f)) + arctan(u / z0_minus) is nearly
flat in x away from the pole at x = z_f, where it jumps by pi. The pole
therefore fixes z_f to the interval between two neighbouring data points,
and zeta0 enters linearly. The fit:

1. scans one candidate z_f per interval between sorted abscissae, with
   zeta0 profiled out as a weighted mean, and keeps the best interval;
2. minimises the profiled rss over z_f inside that interval;
3. polishes (zeta0, z_f) jointly with Nelder-Mead, restarting from the
   best vertex until the rss stops improving.

Optimiser coordinates are zeta0 in radians and z_f in millimetres.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from modules.exceptions import DomainError, FitPreconditionError, SingularConfigurationError
from modules.fit_management.fit_constants import (
    DEFAULT_FIT_TOL,
    GRID_POLE_ERROR,
    INITIAL_SIMPLEX_STEP,
    MAX_MODEL_EVALUATIONS,
    MAX_RESTARTS,
    MIN_FIT_ROWS,
    NOISE_ERROR,
    POLE_MARGIN,
    RESIDUAL_NOISE_EPS,
    STEP_TOL,
    SYNTH_OFFSETS_MM,
    SYNTH_POLE_CLEARANCE,
    TOO_FEW_ROWS_ERROR,
    Z_F_SCALE,
)
from modules.fit_management.validations import DataSet, FitResult
from modules.propagation_management.lens import fit_model, fit_model_distance
from modules.propagation_management.validations import FitModelParams

logger = logging.getLogger(__name__)


class _Objective:
    """Weighted rss with an evaluation counter and budget."""

    def __init__(self, data: DataSet, fixed: FitModelParams):
        self.x = data.z0p
        self.y = data.zeta
        self.w = data.weight
        self.fixed = fixed
        self.count = 0

    @property
    def remaining(self) -> int:
        return MAX_MODEL_EVALUATIONS - self.count

    def shape(self, z_f_scaled: float) -> Optional[np.ndarray]:
        """Model with zeta0 = 0, or None on a pole or past the budget."""
        if self.remaining <= 0:
            return None
        self.count += 1
        try:
            return fit_model(self.x, self.fixed.with_fit(0.0, z_f_scaled * Z_F_SCALE))
        except SingularConfigurationError:
            return None

    def profiled(self, z_f_scaled: float) -> Tuple[float, float]:
        """(rss, zeta0) with zeta0 set to its optimum for this z_f."""
        shape = self.shape(z_f_scaled)
        if shape is None:
            return np.inf, np.nan
        zeta0 = float(np.sum(self.w * (self.y - shape)) / np.sum(self.w))
        return float(np.sum(self.w * (shape + zeta0 - self.y) ** 2)), zeta0

    def __call__(self, theta: np.ndarray) -> float:
        shape = self.shape(float(theta[1]))
        if shape is None:
            return np.inf
        return float(np.sum(self.w * (shape + theta[0] - self.y) ** 2))


def _best_interval(objective: _Objective, init_scaled: float) -> Tuple[float, float, float]:
    """Pick the gap between sorted abscissae whose candidate z_f fits best.

    Returns:
        (lower, upper, candidate) in scaled units
    """
    xs = np.unique(objective.x / Z_F_SCALE)
    span = xs[-1] - xs[0]
    edges = np.concatenate(([xs[0] - span], xs, [xs[-1] + span]))
    best = (np.inf, edges[0], edges[1], 0.5 * (edges[0] + edges[1]))
    for lower, upper in zip(edges[:-1], edges[1:]):
        candidate = init_scaled if lower < init_scaled < upper else 0.5 * (lower + upper)
        rss, _ = objective.profiled(candidate)
        if rss < best[0]:
            best = (rss, lower, upper, candidate)
    logger.debug(f"Bracket scan picked z_f in ({best[1]:.6g}, {best[2]:.6g}) mm, rss={best[0]:.6g}")
    return best[1], best[2], best[3]


def fit(
    data: DataSet,
    fixed: Optional[FitModelParams] = None,
    init: Optional[Tuple[float, float]] = None,
    tol: float = DEFAULT_FIT_TOL,
) -> FitResult:
    """Fit (zeta0, z_f) of the focused Gouy-phase model.

    Args:
        data: Observations, at least four rows
        fixed: Optical arrangement (z, z_prime, f, z0_minus); its zeta0 and
            z_f are the default starting point
        init: Starting (zeta0 [rad], z_f [m]), overriding ``fixed``
        tol: Relative rss change below which a restart counts as converged

    Returns:
        FitResult; ``converged`` is False when the evaluation budget or the
        restart limit ran out

    Raises:
        FitPreconditionError: If there are fewer than four rows
        SingularConfigurationError: If z_prime == 2f makes the model undefined
    """
    if len(data) < MIN_FIT_ROWS:
        raise FitPreconditionError(f"{TOO_FEW_ROWS_ERROR} (got {len(data)})")
    fixed = fixed or FitModelParams()
    zeta0_init, z_f_init = init if init is not None else (fixed.zeta0, fixed.z_f)
    # fails fast on the lens pole
    fit_model_distance(fixed)

    objective = _Objective(data, fixed)
    lower, upper, candidate = _best_interval(objective, z_f_init / Z_F_SCALE)

    start_rss, start_zeta0 = objective.profiled(candidate)
    start_z_f = candidate
    bounded = minimize_scalar(
        lambda z_f: objective.profiled(z_f)[0],
        bounds=(lower + POLE_MARGIN, upper - POLE_MARGIN),
        method="bounded",
        options={"xatol": STEP_TOL},
    )
    if bounded.fun < start_rss:
        start_rss, start_zeta0 = objective.profiled(float(bounded.x))
        start_z_f = float(bounded.x)

    theta_best = np.array([start_zeta0, start_z_f])
    rss_best = start_rss
    noise_floor = float(np.sum(objective.w)) * (
        RESIDUAL_NOISE_EPS * max(1.0, float(np.max(np.abs(objective.y))))
    ) ** 2

    converged = False
    message = ""
    iterations = 0
    for restart in range(MAX_RESTARTS):
        if objective.remaining <= 0:
            message = "model evaluation budget exhausted"
            break
        simplex = np.array(
            [theta_best, theta_best + [INITIAL_SIMPLEX_STEP, 0.0], theta_best + [0.0, INITIAL_SIMPLEX_STEP]]
        )
        result = minimize(
            objective,
            theta_best,
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "xatol": STEP_TOL,
                "fatol": max(tol * rss_best, noise_floor),
                "maxfev": objective.remaining,
                "maxiter": objective.remaining,
            },
        )
        iterations += int(result.nit)
        previous_rss, previous_theta = rss_best, theta_best
        if result.fun <= rss_best:
            theta_best, rss_best = np.array(result.x), float(result.fun)
        if not result.success:
            message = str(result.message)
            break
        step = float(np.max(np.abs(theta_best - previous_theta)))
        improvement = previous_rss - rss_best
        logger.debug(f"Restart {restart}: rss={rss_best:.6g}, step={step:.3g}")
        if improvement <= tol * previous_rss or step < STEP_TOL or rss_best <= noise_floor:
            converged = True
            message = "converged"
            break
    else:
        message = "restart limit reached"

    zeta0, z_f = float(theta_best[0]), float(theta_best[1]) * Z_F_SCALE
    model = fit_model(objective.x, fixed.with_fit(zeta0, z_f))
    residuals = model - objective.y
    fit_result = FitResult(
        zeta0=zeta0,
        z_f=z_f,
        residuals=tuple(float(r) for r in residuals),
        rss=float(np.sum(objective.w * residuals**2)),
        iterations=iterations,
        evaluations=objective.count,
        converged=converged,
        message=message,
    )
    if converged:
        logger.info(f"Fit converged: zeta0={zeta0:.6g} rad, z_f={z_f / Z_F_SCALE:.6g} mm, rss={fit_result.rss:.3g}")
    else:
        logger.warning(f"Fit did not converge ({message}) after {objective.count} evaluations")
    return fit_result


def synthesize(
    params: FitModelParams,
    grid: Sequence[float],
    noise_std: float = 0.0,
    seed: int = 0,
) -> DataSet:
    """Data on the model curve with optional seeded Gaussian noise.

    Raises:
        DomainError: If a grid point lies within 1e-6 m of z_f or noise_std < 0
    """
    z0p = np.asarray(grid, dtype=float)
    if noise_std < 0:
        raise DomainError("noise_std", noise_std, NOISE_ERROR)
    if np.any(np.abs(z0p - params.z_f) < SYNTH_POLE_CLEARANCE):
        raise DomainError("grid", params.z_f, GRID_POLE_ERROR)
    zeta = np.asarray(fit_model(z0p, params), dtype=float)
    if noise_std > 0:
        rng = np.random.default_rng(seed)
        zeta = zeta + rng.normal(0.0, noise_std, size=zeta.shape)
    logger.debug(f"Synthesized {len(z0p)} rows with noise_std={noise_std}, seed={seed}")
    return DataSet.from_arrays(z0p, zeta)


def synthetic_grid(z_f: float, offsets_mm: Sequence[float] = SYNTH_OFFSETS_MM) -> np.ndarray:
    """Sorted abscissae z_f +/- offsets (m), dense near the pole and sparse far from it."""
    offsets = np.asarray(offsets_mm, dtype=float) * Z_F_SCALE
    return np.sort(np.concatenate([z_f - offsets, z_f + offsets]))

"""Constants for the closed-form versus oracle verification suite.

This module contains the configurations, tolerances and report layout used
by ``verify``. Distances are multiples of z0_minus unless stated otherwise.
"""

from scipy.constants import milli

# Omega used when no configuration is given
DEFAULT_OMEGA_MULTIPLIER = 5.0

# Quadrature settings for the suite
VERIFY_HALF_WIDTH = 8.0
VERIFY_QUAD_POINTS = 1024

# Free propagation: on-axis phase and norm
FREE_PHASE_DISTANCES = (0.5, 1.0, 2.0, 5.0, 10.0)
NORM_DISTANCES = (1.0, 10.0)

# Lensed propagation, as (f, z, z_prime) in meters. Short z and z_prime widen
# both quadrature grids, so the setups keep z at 7 mm.
LENS_SETUPS = (
    (3.0 * milli, 7.0 * milli, 4.0 * milli),
    (3.0 * milli, 7.0 * milli, 5.0 * milli),
    (3.0 * milli, 7.0 * milli, 8.0 * milli),
    (3.0 * milli, 7.0 * milli, 12.0 * milli),
    (5.0 * milli, 7.0 * milli, 12.0 * milli),
)

# Waist position, as (f, z) in meters
WAIST_SETUPS = (
    (200.0 * milli, 500.0 * milli),
    (3.0 * milli, 7.0 * milli),
    (50.0 * milli, 100.0 * milli),
    (100.0 * milli, 20.0 * milli),
    (500.0 * milli, 1000.0 * milli),
)

# Covariance checks
MOMENT_DISTANCES = (0.0, 0.3, 1.0, 7.0, 40.0)
NEGATIVITY_DISTANCES = (0.0, 1.0, -1.0, 10.0, -10.0, 100.0, -100.0)
SCHMIDT_DISTANCES = (0.0, 0.5, 2.0, -3.0, 25.0)

# Tolerances
PHASE_ATOL = 1e-5
NORM_RTOL = 1e-6
MOMENT_RTOL = 1e-10
WAIST_RTOL = 1e-4
SCHMIDT_RTOL = 1e-9
NEGATIVITY_ATOL = 1e-10

# Report
REPORT_COLUMNS = ("check", "status", "max_error", "tolerance", "cases")
PASS_LABEL = "PASS"
FAIL_LABEL = "FAIL"
ERROR_FLOAT_FORMAT = "{:.3e}"

"""Constants for fitting the focused Gouy-phase model.

This module contains optimiser settings, data-file column names and error
messages used by the fit package.
"""

from scipy.constants import milli

# Data requirements
MIN_FIT_ROWS = 4
DUPLICATE_ABSCISSA_TOL = 1e-12

# Optimiser scaling: zeta0 in radians, z_f in millimetres
Z_F_SCALE = milli

# Convergence
DEFAULT_FIT_TOL = 1e-10
STEP_TOL = 1e-12
MAX_MODEL_EVALUATIONS = 100_000
MAX_RESTARTS = 20
INITIAL_SIMPLEX_STEP = 1e-3
# Rounding noise of one residual, relative to the largest |zeta|
RESIDUAL_NOISE_EPS = 1e-14
# Keeps the bounded search off the poles at the interval ends (scaled units)
POLE_MARGIN = 1e-9

# Synthetic data
SYNTH_POLE_CLEARANCE = 1e-6
# Default abscissae, z_f +/- these offsets (mm)
SYNTH_OFFSETS_MM = (0.25, 0.6, 1.2, 2.5, 5.0, 10.0, 25.0, 50.0, 100.0, 250.0, 500.0, 1000.0, 2000.0, 4000.0, 8000.0)

# Data file columns
Z0P_COLUMN = "z0_plus_mm"
ZETA_COLUMN = "zeta_rad"
WEIGHT_COLUMN = "weight"
MODEL_COLUMN = "zeta_model_rad"
RESIDUAL_COLUMNS = ("z0_plus_mm", "zeta_model_rad", "zeta_data_rad", "residual_rad")

# Error messages
TOO_FEW_ROWS_ERROR = f"at least {MIN_FIT_ROWS} data rows are needed to fit two parameters"
DUPLICATE_ROWS_ERROR = "duplicate z0_plus values in data set"
NON_FINITE_ERROR = "data values must be finite"
WEIGHT_ERROR = "weights must be strictly positive"
EMPTY_DATA_ERROR = "data file contains no rows"
MISSING_COLUMNS_ERROR = "data file must have columns"
NON_NUMERIC_ERROR = "data file contains non-numeric values"
GRID_POLE_ERROR = "grid point too close to the z_f pole"
NOISE_ERROR = "noise_std must be non-negative"

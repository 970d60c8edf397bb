"""Constants for free propagation and thin-lens focusing.

This module contains sentinels, tolerances and error messages used by the
propagation package.
"""

import math

# Flat-wavefront sentinel returned by curvature_radius at the waist
INFINITE_RADIUS = math.inf

# A focal length this long stands in for "lens removed"
LENS_REMOVED_FOCAL_LENGTH = 1.0e12

# Gouy phase range
GOUY_MAX_VARIATION = math.pi / 2
GOUY_WRAP_PERIOD = math.pi / 2

# Tolerances
GEOMETRY_CONSISTENCY_RTOL = 1e-12

# Error messages
ZERO_DISTANCE_AFTER_LENS_ERROR = "z_prime must be nonzero: the focused width has a pole at z_prime = 0"
LENS_POLE_ERROR = "z_prime == 2f is a pole of z/(1 - z_prime/2f)"
FIT_MODEL_POLE_ERROR = "z0p_shifted equals z_f (pole of the fit model)"
WAIST_DENOMINATOR_ERROR = "waist-position denominator vanishes"
NEGATIVE_DISTANCE_ERROR = "must be non-negative"
WIDTH_ORDER_ERROR = "beam widths cannot be smaller than the waist widths"
ZETA_SUM_ERROR = "zeta must equal (zeta_plus + zeta_minus) / 2"

"""Constants for the direct-quadrature oracle.

This module contains quadrature limits, convergence tolerances and error
messages used by the oracle package.
"""

import math

# Quadrature limits
MIN_HALF_WIDTH = 8.0
MIN_QUADRATURE_POINTS = 512
MAX_QUADRATURE_NODES = 2**24
QUADRATURE_SCHEME = "trapezoid"

# Kernel phase advance allowed between neighbouring nodes at the window edge
MAX_PHASE_STEP = math.pi / 4

# Complex values per evaluation chunk (rows x nodes)
CHUNK_ELEMENTS = 2**21

# Convergence
DOUBLING_RTOL = 1e-8

# Width extraction: second sample taken where |psi|**2 has dropped by e**-2
WIDTH_SAMPLE_FACTOR = 1.0

# Norm integration
NORM_SAMPLE_POINTS = 1024

# Error messages
NOT_CONVERGED_ERROR = "quadrature changed by more than the tolerance when the node count doubled"
NODE_BUDGET_ERROR = "required quadrature nodes exceed the node budget"
HALF_WIDTH_ERROR = f"half_width must be at least {MIN_HALF_WIDTH:g}"
POINTS_ERROR = f"n_points must be an even integer of at least {MIN_QUADRATURE_POINTS}"
SCHEME_ERROR = f"only the {QUADRATURE_SCHEME!r} scheme is available"
NEGATIVE_LENS_DISTANCE_ERROR = "lensed propagation needs z > 0 and z_prime > 0"
WIDTH_RATIO_ERROR = "intensity ratio for the width estimate must lie strictly between 0 and 1"

"""Constants for figure tables and their optional SVG renderings.

This module contains default sweep ranges (SI units), CSV formatting and
rendering settings used by the figure package.
"""

from scipy.constants import milli

# CSV output
CSV_FLOAT_FORMAT = "%.12g"

# fig1: Gouy phase against z for two correlation widths
FIG1_Z_RANGE = (-500 * milli, 500 * milli)
FIG1_OMEGA_MULTIPLIERS = (5.0, 10.0)

# fig2: negativity and Schmidt number against z0_plus / z0_minus
FIG2A_RATIO_RANGE = (0.01, 1.0)
FIG2B_RATIO_RANGE = (1.0, 100.0)

# fig3: negativity and Gouy phase at fixed z
FIG3_LOW_RATIO_RANGE = (0.01, 1.0)
FIG3_HIGH_RATIO_RANGE = (1.0, 20.0)

# fig4: focused Gouy phase against z_prime
FIG4_Z_PRIME_MIN = 0.0

# fig6: waist position against z0_plus
FIG6_Z0_PLUS_RANGE = (0.5 * milli, 5000 * milli)

# SVG rendering
SVG_HASH_SALT = "biphoton-figures"
SVG_FIGSIZE = (6.0, 4.0)

# Error messages
UNKNOWN_FIGURE_ERROR = "unknown figure id"
GRID_POINTS_ERROR = "grid_points must be at least"
MISSING_DATA_ERROR = "fig5 needs an experimental data file"

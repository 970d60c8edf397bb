"""Application constants for the biphoton command-line tool.

This module contains constants shared by the command-line front end:
exit codes, figure identifiers and the parameter sets the figures
fall back to.
"""

# ==========================================
# Exit Codes
# ==========================================

EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_PARSE_ERROR = 2
EXIT_FIT_NOT_CONVERGED = 3

# ==========================================
# Figure Identifiers
# ==========================================

FIGURE_IDS = (
    "fig1",
    "fig2a",
    "fig2b",
    "fig3a",
    "fig3b",
    "fig3c",
    "fig3d",
    "fig4",
    "fig5",
    "fig6",
)
MIN_GRID_POINTS = 50

# ==========================================
# Default Parameter Sets (SI units)
# ==========================================

# Degenerate type-I source
SOURCE_LAMBDA = 702e-9
SOURCE_LAMBDA_P = 351.1e-9
SOURCE_L_P = 7.0e-3

# fig3
FIG3_Z = 20e-3
FIG3_Z0_MINUS = 1.2e-3

# fig4
FIG4_Z0 = 1.2e-3
FIG4_F = 3.0e-3
FIG4_Z = 7.0e-3
FIG4_Z_PRIME_MAX = 12e-3

# fig5 and fig6
FIG5_F = 200e-3
FIG5_Z = 500e-3
FIG5_Z_PRIME = 1465.3e-3
FIG5_Z0_MINUS = 1.2e-3
FIG5_ZETA0 = 1.68
FIG5_Z_F = 7.15e-3

# ==========================================
# Output Files
# ==========================================

FIT_RESULT_SUFFIX = ".fit.txt"
FIT_RESIDUALS_SUFFIX = ".residuals.csv"
SVG_SUFFIX = ".svg"

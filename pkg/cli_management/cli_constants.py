"""Constants for the biphoton command-line front end.

This module contains help texts, output formats and messages used by the
click command group.
"""

# Help texts
CLI_HELP = "Double-Gaussian biphoton: scales, Gouy phase, entanglement, lens focusing and fits."
CONFIG_HELP = "Experiment configuration file (key = value lines)."
OUT_HELP = "Output file; results go to stdout when omitted."
POINTS_HELP = "Sweep points for figure tables."
SVG_HELP = "Also render the figure as <out>.svg."
LOG_LEVEL_HELP = "Override the configured log level."
Z_HELP = "Longitudinal position, with unit (e.g. 20 mm)."
ZPRIME_HELP = "Distance after the lens, with unit."
F_HELP = "Focal length, with unit (config f when omitted)."
LENS_Z_HELP = "Crystal-to-lens distance (7 mm when omitted)."
WAIST_Z_HELP = "Crystal-to-lens distance (500 mm when omitted)."
WAIST_F_HELP = "Focal length (config f, else 200 mm)."
DATA_HELP = "Experimental data CSV (z0_plus_mm,zeta_rad[,weight])."

# Human-readable output units, as (suffix, factor in meters)
HUMAN_SIGMA_UNIT = ("um", 1e-6)
HUMAN_RAYLEIGH_UNIT = ("mm", 1e-3)

# Messages
MISSING_CONFIG_ERROR = "this command needs --config with at least Omega set"
MISSING_FOCAL_LENGTH_ERROR = "focal length needed: pass --f or set f in the configuration"
SVG_NEEDS_OUT_ERROR = "--svg needs --out"
VERIFY_FAILED_MESSAGE = "verification failed:"

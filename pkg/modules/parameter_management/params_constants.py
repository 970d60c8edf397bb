"""Constants for parameter derivation and configuration parsing.

This module contains unit factors, configuration keys, tolerances and
error messages used by the parameter package.
"""

from scipy.constants import centi, micro, milli, nano

# Length units accepted as value suffixes (values are stored in meters)
LENGTH_UNITS = {
    "": 1.0,
    "m": 1.0,
    "cm": centi,
    "mm": milli,
    "um": micro,
    "μm": micro,
    "µm": micro,
    "nm": nano,
}
SIGMA_MULTIPLIER_UNIT = "sigma"

# Configuration keys
REQUIRED_KEYS = ("Omega",)
OPTIONAL_KEYS = ("lambda", "lambda_p", "L_p", "f", "c_scale", "log_base")
LENGTH_KEYS = ("lambda", "lambda_p", "L_p", "Omega", "f")
ALLOWED_KEYS = REQUIRED_KEYS + OPTIONAL_KEYS

# Logarithm bases for entanglement measures
LOG_BASE_ALIASES = {
    "e": "e",
    "ln": "e",
    "natural": "e",
    "2": "2",
    "10": "10",
}
DEFAULT_LOG_BASE = "e"
DEFAULT_C_SCALE = 1.0

# Tolerances
RAYLEIGH_CONSISTENCY_RTOL = 1e-12

# Error messages
POSITIVE_VALUE_ERROR = "must be strictly positive"
FINITE_VALUE_ERROR = "must be finite"
LOG_BASE_ERROR = "log_base must be one of: e, 2, 10"
RAYLEIGH_MISMATCH_ERROR = "z0_minus must equal k0 * sigma**2"
UNKNOWN_KEY_ERROR = "unknown configuration key"
UNPARSEABLE_LINE_ERROR = "expected 'key = value'"
DUPLICATE_KEY_ERROR = "duplicate configuration key"
BAD_QUANTITY_ERROR = "cannot read a number with an optional unit from"
BAD_UNIT_ERROR = "unknown length unit"
SIGMA_FORM_ERROR = "the '<n> sigma' form is only allowed for Omega"

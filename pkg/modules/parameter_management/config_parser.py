"""Reader for flat ``key = value`` experiment configuration files.

Lines are tokenised by python-dotenv's parser, which keeps the line number
of every binding; values carry an optional length unit suffix, and Omega
may also be written as a multiple of sigma (``Omega = 5 sigma``).

Example::

    # degenerate 702 nm source, Omega five times sigma
    lambda   = 702 nm
    lambda_p = 351.1 nm
    L_p      = 7.0 mm
    Omega    = 5 sigma
"""

import io
import logging
import re
from pathlib import Path
from typing import Dict, Tuple, Union

from dotenv.parser import parse_stream
from pydantic import ValidationError

from constants import SOURCE_L_P, SOURCE_LAMBDA, SOURCE_LAMBDA_P
from modules.exceptions import ConfigParseError
from modules.parameter_management.params import derive_sigma
from modules.parameter_management.params_constants import (
    ALLOWED_KEYS,
    BAD_QUANTITY_ERROR,
    BAD_UNIT_ERROR,
    DUPLICATE_KEY_ERROR,
    LENGTH_KEYS,
    LENGTH_UNITS,
    OPTIONAL_KEYS,
    REQUIRED_KEYS,
    SIGMA_FORM_ERROR,
    SIGMA_MULTIPLIER_UNIT,
    UNKNOWN_KEY_ERROR,
    UNPARSEABLE_LINE_ERROR,
)
from modules.parameter_management.validations import ExperimentParams

logger = logging.getLogger(__name__)

_QUANTITY_PATTERN = re.compile(
    r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([^\s\d]*)\s*$"
)


def parse_quantity(text: str) -> Tuple[float, str]:
    """Split ``"351.1 nm"`` into ``(351.1, "nm")``."""
    match = _QUANTITY_PATTERN.match(text)
    if not match:
        raise ValueError(f"{BAD_QUANTITY_ERROR} {text!r}")
    return float(match.group(1)), match.group(2)


def parse_length(text: str, sigma: float | None = None) -> float:
    """Convert a length with an optional unit suffix to meters.

    Args:
        text: Value such as ``"7 mm"``, ``"57um"``, ``"1e-3"`` or ``"5 sigma"``
        sigma: Value of sigma in meters, required for the ``sigma`` multiplier

    Returns:
        The length in meters
    """
    number, unit = parse_quantity(text)
    if unit == SIGMA_MULTIPLIER_UNIT:
        if sigma is None:
            raise ValueError(SIGMA_FORM_ERROR)
        return number * sigma
    if unit not in LENGTH_UNITS:
        raise ValueError(f"{BAD_UNIT_ERROR} {unit!r}")
    return number * LENGTH_UNITS[unit]


def read_bindings(stream: io.TextIOBase) -> Dict[str, Tuple[str, int]]:
    """Read ``key -> (raw value, line number)`` from a configuration stream."""
    bindings: Dict[str, Tuple[str, int]] = {}
    for binding in parse_stream(stream):
        line = binding.original.line
        if binding.error:
            raise ConfigParseError(UNPARSEABLE_LINE_ERROR, line=line)
        if binding.key is None:
            continue
        if binding.value is None or not binding.value.strip():
            raise ConfigParseError(f"{UNPARSEABLE_LINE_ERROR} for {binding.key!r}", line=line)
        if binding.key not in ALLOWED_KEYS:
            raise ConfigParseError(f"{UNKNOWN_KEY_ERROR} {binding.key!r}", line=line)
        if binding.key in bindings:
            raise ConfigParseError(f"{DUPLICATE_KEY_ERROR} {binding.key!r}", line=line)
        bindings[binding.key] = (binding.value.strip(), line)
    return bindings


def params_from_bindings(bindings: Dict[str, Tuple[str, int]]) -> ExperimentParams:
    """Convert raw bindings to validated experiment parameters.

    lambda, lambda_p and L_p default to the degenerate 702 nm source; Omega
    has no default.
    """
    missing = [key for key in REQUIRED_KEYS if key not in bindings]
    if missing:
        raise ConfigParseError(
            f"missing required key(s): {', '.join(missing)} "
            f"(required: {', '.join(REQUIRED_KEYS)}; optional: {', '.join(OPTIONAL_KEYS)})"
        )

    values: Dict[str, object] = {
        "lambda": SOURCE_LAMBDA,
        "lambda_p": SOURCE_LAMBDA_P,
        "L_p": SOURCE_L_P,
    }
    # sigma-independent keys first, so that "Omega = 5 sigma" can be resolved
    for key in sorted(bindings, key=lambda k: k == "Omega"):
        raw, line = bindings[key]
        try:
            if key in LENGTH_KEYS:
                sigma = None
                if key == "Omega":
                    sigma = derive_sigma(float(values["lambda_p"]), float(values["L_p"]))
                values[key] = parse_length(raw, sigma=sigma)
            elif key == "c_scale":
                values[key] = float(raw)
            else:
                values[key] = raw
        except ValueError as exc:
            raise ConfigParseError(f"{key}: {exc}", line=line) from exc

    try:
        return ExperimentParams(**values)
    except ValidationError as exc:
        first = exc.errors()[0]
        key = str(first["loc"][0]) if first["loc"] else ""
        line = bindings.get(key, (None, None))[1]
        raise ConfigParseError(first["msg"], line=line) from exc


def load_experiment(source: Union[str, Path, io.TextIOBase]) -> ExperimentParams:
    """Load experiment parameters from a configuration file path or open stream.

    Raises:
        ConfigParseError: On unreadable files, malformed lines, unknown keys,
            bad units, missing Omega or invalid values
    """
    if isinstance(source, io.TextIOBase):
        bindings = read_bindings(source)
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                bindings = read_bindings(fh)
        except OSError as exc:
            raise ConfigParseError(f"cannot read configuration file {str(source)!r}: {exc}") from exc
    params = params_from_bindings(bindings)
    logger.info(f"Loaded experiment configuration with keys {sorted(bindings)}")
    return params

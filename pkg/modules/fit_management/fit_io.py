"""Reading and writing fit data files.

Input CSV::

    # comment lines are ignored
    z0_plus_mm,zeta_rad[,weight]

Rows without a measured phase (as in the dense model rows of a fig5
table) are skipped, so figure output can be fed straight back to the fit.
"""

import logging
from pathlib import Path
from typing import Mapping, Optional, Union

import numpy as np
import pandas as pd
from pydantic import ValidationError

from modules.exceptions import DataFileError
from modules.figure_management.tables import write_table
from modules.fit_management.fit_constants import (
    EMPTY_DATA_ERROR,
    MISSING_COLUMNS_ERROR,
    NON_NUMERIC_ERROR,
    RESIDUAL_COLUMNS,
    WEIGHT_COLUMN,
    Z0P_COLUMN,
    Z_F_SCALE,
    ZETA_COLUMN,
)
from modules.fit_management.validations import DataSet, FitResult

logger = logging.getLogger(__name__)


def load_dataset(path: Union[str, Path]) -> DataSet:
    """Load (z0p, zeta, weight) rows; z0p is converted from mm to m.

    Raises:
        DataFileError: If the file is missing, empty, malformed or invalid
    """
    try:
        frame = pd.read_csv(path, comment="#", skipinitialspace=True)
    except FileNotFoundError as exc:
        raise DataFileError(f"data file not found: {path}") from exc
    except pd.errors.EmptyDataError as exc:
        raise DataFileError(f"{EMPTY_DATA_ERROR}: {path}") from exc
    except (pd.errors.ParserError, OSError, UnicodeDecodeError) as exc:
        raise DataFileError(f"cannot parse data file {path}: {exc}") from exc

    frame.columns = [str(column).strip() for column in frame.columns]
    if Z0P_COLUMN not in frame.columns or ZETA_COLUMN not in frame.columns:
        raise DataFileError(f"{MISSING_COLUMNS_ERROR} {Z0P_COLUMN},{ZETA_COLUMN}[,{WEIGHT_COLUMN}] (got {list(frame.columns)})")

    columns = [Z0P_COLUMN, ZETA_COLUMN] + ([WEIGHT_COLUMN] if WEIGHT_COLUMN in frame.columns else [])
    try:
        numeric = frame[columns].apply(pd.to_numeric, errors="raise")
    except (ValueError, TypeError) as exc:
        raise DataFileError(f"{NON_NUMERIC_ERROR}: {path}") from exc

    measured = numeric.dropna(subset=[ZETA_COLUMN])
    skipped = len(numeric) - len(measured)
    if skipped:
        logger.info(f"Skipped {skipped} rows without {ZETA_COLUMN} in {path}")
    if measured.empty:
        raise DataFileError(f"{EMPTY_DATA_ERROR}: {path}")

    weight = measured[WEIGHT_COLUMN].fillna(1.0).to_numpy() if WEIGHT_COLUMN in measured else None
    try:
        data = DataSet.from_arrays(
            measured[Z0P_COLUMN].to_numpy() * Z_F_SCALE,
            measured[ZETA_COLUMN].to_numpy(),
            weight,
        )
    except ValidationError as exc:
        raise DataFileError(f"invalid data in {path}: {exc.errors()[0]['msg']}") from exc
    logger.info(f"Loaded {len(data)} data rows from {path}")
    return data


def dataset_frame(data: DataSet) -> pd.DataFrame:
    return pd.DataFrame(
        {
            Z0P_COLUMN: data.z0p / Z_F_SCALE,
            ZETA_COLUMN: data.zeta,
            WEIGHT_COLUMN: data.weight,
        }
    )


def write_dataset(
    data: DataSet,
    path: Union[str, Path],
    metadata: Optional[Mapping[str, object]] = None,
) -> Path:
    return write_table(path, dataset_frame(data), metadata)


def format_fit_result(result: FitResult, n_rows: Optional[int] = None) -> str:
    """Flat key=value text of a fit result."""
    values = {
        "zeta0_rad": repr(result.zeta0),
        "z_f_mm": repr(result.z_f / Z_F_SCALE),
        "rss": repr(result.rss),
        "max_abs_residual_rad": repr(result.max_abs_residual),
        "iterations": result.iterations,
        "evaluations": result.evaluations,
        "converged": str(result.converged).lower(),
        "message": result.message,
    }
    if n_rows is not None:
        values["n_rows"] = n_rows
    return "".join(f"{key}={value}\n" for key, value in values.items())


def write_fit_result(result: FitResult, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_fit_result(result, n_rows=len(result.residuals)))
    return path


def write_residuals(
    result: FitResult,
    data: DataSet,
    path: Union[str, Path],
    metadata: Optional[Mapping[str, object]] = None,
) -> Path:
    """Residual table z0_plus_mm, zeta_model_rad, zeta_data_rad, residual_rad."""
    residuals = np.asarray(result.residuals)
    frame = pd.DataFrame(
        dict(
            zip(
                RESIDUAL_COLUMNS,
                (data.z0p / Z_F_SCALE, data.zeta + residuals, data.zeta, residuals),
            )
        )
    )
    return write_table(path, frame, metadata)

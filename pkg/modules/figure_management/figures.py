"""Plot tables for the figure identifiers fig1 ... fig6.

Each builder returns a FigureTable whose metadata records every parameter
used, so a CSV can be regenerated from its own header. Lengths in tables
are in millimetres, phases in radians.
"""

import logging
from typing import Callable, Dict, Optional

import numpy as np
import pandas as pd
from scipy.constants import milli

from constants import (
    FIG3_Z,
    FIG3_Z0_MINUS,
    FIG4_F,
    FIG4_Z,
    FIG4_Z0,
    FIG4_Z_PRIME_MAX,
    FIG5_F,
    FIG5_Z,
    FIG5_Z0_MINUS,
    FIG5_Z_PRIME,
    SOURCE_L_P,
    SOURCE_LAMBDA_P,
)
from modules.entanglement_management.entangle import (
    log_negativity,
    log_negativity_from_matrix,
    moments,
    schmidt_number,
)
from modules.exceptions import FigureError
from modules.figure_management.figure_constants import (
    FIG1_OMEGA_MULTIPLIERS,
    FIG1_Z_RANGE,
    FIG2A_RATIO_RANGE,
    FIG2B_RATIO_RANGE,
    FIG3_HIGH_RATIO_RANGE,
    FIG3_LOW_RATIO_RANGE,
    FIG4_Z_PRIME_MIN,
    FIG6_Z0_PLUS_RANGE,
    MISSING_DATA_ERROR,
    UNKNOWN_FIGURE_ERROR,
)
from modules.figure_management.validations import FigureRequest, FigureTable
from modules.fit_management.fit_constants import MODEL_COLUMN, WEIGHT_COLUMN, Z0P_COLUMN, ZETA_COLUMN
from modules.fit_management.validations import DataSet
from modules.parameter_management.params import (
    derive_scales,
    derive_sigma,
    log_in_base,
    scales_from_rayleigh,
    wavenumber,
)
from modules.parameter_management.validations import ExperimentParams
from modules.propagation_management.freeprop import gouy_free
from modules.propagation_management.lens import fit_model, gouy_lens, waist_position
from modules.propagation_management.validations import FitModelParams, LensSetup

logger = logging.getLogger(__name__)


def source_params(params: Optional[ExperimentParams]) -> ExperimentParams:
    """Configured parameters, or the degenerate 702 nm source with Omega = sigma."""
    if params is not None:
        return params
    return ExperimentParams.source_defaults(omega=derive_sigma(SOURCE_LAMBDA_P, SOURCE_L_P))


def _source_metadata(figure_id: str, title: str, params: ExperimentParams) -> Dict[str, str]:
    return {
        "figure": figure_id,
        "title": title,
        "lambda_m": f"{params.wavelength:.12g}",
        "lambda_p_m": f"{params.pump_wavelength:.12g}",
        "L_p_m": f"{params.crystal_length:.12g}",
        "log_base": params.log_base,
    }


def _ratio_grid(bounds, points: int) -> np.ndarray:
    return np.logspace(np.log10(bounds[0]), np.log10(bounds[1]), points)


def figure_1(params: ExperimentParams, points: int) -> FigureTable:
    z = np.linspace(FIG1_Z_RANGE[0], FIG1_Z_RANGE[1], points)
    sigma = derive_sigma(params.pump_wavelength, params.crystal_length)
    columns = {"z_mm": z / milli}
    metadata = _source_metadata("fig1", "Biphoton Gouy phase against z", params)
    for multiplier in FIG1_OMEGA_MULTIPLIERS:
        scales = derive_scales(params.model_copy(update={"omega": multiplier * sigma}))
        columns[f"zeta_omega_{multiplier:g}sigma_rad"] = [gouy_free(float(v), scales) for v in z]
        metadata[f"z0_plus_omega_{multiplier:g}sigma_m"] = f"{scales.z0_plus:.12g}"
    metadata["sigma_m"] = f"{sigma:.12g}"
    frame = pd.DataFrame(columns)
    return FigureTable(
        figure_id="fig1",
        title=metadata["title"],
        frame=frame,
        metadata=metadata,
        x_column="z_mm",
        line_columns=tuple(frame.columns[1:]),
        x_label="z (mm)",
        y_label="Gouy phase (rad)",
    )


def _figure_2(figure_id: str, bounds, params: ExperimentParams, points: int) -> FigureTable:
    k0 = wavenumber(params.wavelength)
    sigma = derive_sigma(params.pump_wavelength, params.crystal_length)
    z0_minus = k0 * sigma**2
    ratios = _ratio_grid(bounds, points)
    negativity, schmidt = [], []
    for ratio in ratios:
        scales = scales_from_rayleigh(k0, float(ratio) * z0_minus, z0_minus)
        negativity.append(log_negativity(scales, params.log_base))
        schmidt.append(log_in_base(np.sqrt(schmidt_number(scales)), params.log_base))
    metadata = _source_metadata(figure_id, "Logarithmic negativity and log(sqrt(K))", params)
    metadata["z0_minus_m"] = f"{z0_minus:.12g}"
    metadata["ratio_range"] = f"{bounds[0]:g}..{bounds[1]:g} (log-spaced)"
    frame = pd.DataFrame(
        {"z0_ratio": ratios, "log_negativity": negativity, "log_sqrt_schmidt": schmidt}
    )
    return FigureTable(
        figure_id=figure_id,
        title=metadata["title"],
        frame=frame,
        metadata=metadata,
        x_column="z0_ratio",
        line_columns=("log_negativity", "log_sqrt_schmidt"),
        x_label="z0+ / z0-",
        y_label="entanglement",
        log_x=True,
    )


def _figure_3(figure_id: str, bounds, quantity: str, params: ExperimentParams, points: int) -> FigureTable:
    k0 = wavenumber(params.wavelength)
    ratios = _ratio_grid(bounds, points)
    values = []
    for ratio in ratios:
        scales = scales_from_rayleigh(k0, float(ratio) * FIG3_Z0_MINUS, FIG3_Z0_MINUS)
        if quantity == "log_negativity":
            values.append(log_negativity_from_matrix(moments(None, scales, FIG3_Z), params.log_base))
        else:
            values.append(gouy_free(FIG3_Z, scales))
    column = "log_negativity" if quantity == "log_negativity" else "zeta_rad"
    title = "Logarithmic negativity" if quantity == "log_negativity" else "Gouy phase"
    metadata = _source_metadata(figure_id, f"{title} against z0+/z0- at fixed z", params)
    metadata["z_m"] = f"{FIG3_Z:.12g}"
    metadata["z0_minus_m"] = f"{FIG3_Z0_MINUS:.12g}"
    metadata["ratio_range"] = f"{bounds[0]:g}..{bounds[1]:g} (log-spaced)"
    frame = pd.DataFrame({"z0_ratio": ratios, column: values})
    return FigureTable(
        figure_id=figure_id,
        title=metadata["title"],
        frame=frame,
        metadata=metadata,
        x_column="z0_ratio",
        line_columns=(column,),
        x_label="z0+ / z0-",
        y_label="log negativity" if column == "log_negativity" else "Gouy phase (rad)",
        log_x=True,
    )


def figure_4(params: ExperimentParams, points: int) -> FigureTable:
    k0 = wavenumber(params.wavelength)
    scales = scales_from_rayleigh(k0, FIG4_Z0, FIG4_Z0)
    z_prime = np.linspace(FIG4_Z_PRIME_MIN, FIG4_Z_PRIME_MAX, points)
    wrapped, continuous, ray_matrix = [], [], []
    for value in z_prime:
        setup = LensSetup(f=FIG4_F, z=FIG4_Z, z_prime=float(value), c_scale=params.c_scale)
        wrapped.append(gouy_lens(setup, scales, wrapped=True))
        continuous.append(gouy_lens(setup, scales))
        ray_matrix.append(gouy_lens(setup, scales, exact=True))
    metadata = _source_metadata("fig4", "Focused Gouy phase against z'", params)
    metadata.update(
        {
            "z0_plus_m": f"{FIG4_Z0:.12g}",
            "z0_minus_m": f"{FIG4_Z0:.12g}",
            "f_m": f"{FIG4_F:.12g}",
            "z_m": f"{FIG4_Z:.12g}",
            "c_scale": f"{params.c_scale:.12g}",
        }
    )
    frame = pd.DataFrame(
        {
            "z_prime_mm": z_prime / milli,
            "zeta_wrapped_rad": wrapped,
            "zeta_continuous_rad": continuous,
            "zeta_ray_matrix_rad": ray_matrix,
        }
    )
    return FigureTable(
        figure_id="fig4",
        title=metadata["title"],
        frame=frame,
        metadata=metadata,
        x_column="z_prime_mm",
        line_columns=("zeta_wrapped_rad", "zeta_continuous_rad", "zeta_ray_matrix_rad"),
        x_label="z' (mm)",
        y_label="Gouy phase (rad)",
    )


def figure_5(
    params: ExperimentParams,
    points: int,
    data: Optional[DataSet],
    model: Optional[FitModelParams] = None,
) -> FigureTable:
    """Data rows with the model at each abscissa, then a dense model curve.

    Raises:
        FigureError: If no data set is given
    """
    if data is None:
        raise FigureError(MISSING_DATA_ERROR)
    model = model or FitModelParams()
    x = data.z0p
    dense = np.linspace(float(np.min(x)), float(np.max(x)), points)
    dense = dense[dense != model.z_f]

    data_rows = pd.DataFrame(
        {
            Z0P_COLUMN: x / milli,
            ZETA_COLUMN: data.zeta,
            WEIGHT_COLUMN: data.weight,
            MODEL_COLUMN: fit_model(x, model),
        }
    )
    model_rows = pd.DataFrame(
        {
            Z0P_COLUMN: dense / milli,
            ZETA_COLUMN: np.nan,
            WEIGHT_COLUMN: np.nan,
            MODEL_COLUMN: fit_model(dense, model),
        }
    )
    metadata = _source_metadata("fig5", "Gouy phase against shifted z0+: data and model", params)
    metadata.update(
        {
            "zeta0_rad": f"{model.zeta0:.12g}",
            "z_f_m": f"{model.z_f:.12g}",
            "z_m": f"{model.z:.12g}",
            "z_prime_m": f"{model.z_prime:.12g}",
            "f_m": f"{model.f:.12g}",
            "z0_minus_m": f"{model.z0_minus:.12g}",
            "data_rows": str(len(data)),
        }
    )
    frame = pd.concat([data_rows, model_rows], ignore_index=True)
    return FigureTable(
        figure_id="fig5",
        title=metadata["title"],
        frame=frame,
        metadata=metadata,
        x_column=Z0P_COLUMN,
        line_columns=(MODEL_COLUMN,),
        point_columns=(ZETA_COLUMN,),
        x_label="shifted z0+ (mm)",
        y_label="Gouy phase (rad)",
    )


def figure_6(params: ExperimentParams, points: int) -> FigureTable:
    k0 = wavenumber(params.wavelength)
    z0_plus = _ratio_grid(FIG6_Z0_PLUS_RANGE, points)
    setup = LensSetup(f=FIG5_F, z=FIG5_Z, z_prime=FIG5_Z_PRIME, c_scale=params.c_scale)
    waist = [
        waist_position(FIG5_Z, setup, scales_from_rayleigh(k0, float(value), FIG5_Z0_MINUS))
        for value in z0_plus
    ]
    metadata = _source_metadata("fig6", "Focused waist position against z0+", params)
    metadata.update(
        {
            "f_m": f"{FIG5_F:.12g}",
            "z_m": f"{FIG5_Z:.12g}",
            "z0_minus_m": f"{FIG5_Z0_MINUS:.12g}",
            "c_scale": f"{params.c_scale:.12g}",
        }
    )
    frame = pd.DataFrame({"z0_plus_mm": z0_plus / milli, "waist_position_mm": np.asarray(waist) / milli})
    return FigureTable(
        figure_id="fig6",
        title=metadata["title"],
        frame=frame,
        metadata=metadata,
        x_column="z0_plus_mm",
        line_columns=("waist_position_mm",),
        x_label="z0+ (mm)",
        y_label="waist position (mm)",
        log_x=True,
    )


_BUILDERS: Dict[str, Callable[[ExperimentParams, int], FigureTable]] = {
    "fig1": figure_1,
    "fig2a": lambda p, n: _figure_2("fig2a", FIG2A_RATIO_RANGE, p, n),
    "fig2b": lambda p, n: _figure_2("fig2b", FIG2B_RATIO_RANGE, p, n),
    "fig3a": lambda p, n: _figure_3("fig3a", FIG3_LOW_RATIO_RANGE, "log_negativity", p, n),
    "fig3b": lambda p, n: _figure_3("fig3b", FIG3_LOW_RATIO_RANGE, "zeta", p, n),
    "fig3c": lambda p, n: _figure_3("fig3c", FIG3_HIGH_RATIO_RANGE, "log_negativity", p, n),
    "fig3d": lambda p, n: _figure_3("fig3d", FIG3_HIGH_RATIO_RANGE, "zeta", p, n),
    "fig4": figure_4,
    "fig6": figure_6,
}


def build_figure(
    request: FigureRequest,
    params: Optional[ExperimentParams] = None,
    data: Optional[DataSet] = None,
    model: Optional[FitModelParams] = None,
) -> FigureTable:
    """Build the table for a figure request.

    ``data`` and ``model`` are only used by fig5; the model defaults to the
    default fit parameters.

    Raises:
        FigureError: For an unknown figure id, or fig5 without data
    """
    params = source_params(params)
    if request.figure_id == "fig5":
        table = figure_5(params, request.grid_points, data, model)
    elif request.figure_id in _BUILDERS:
        table = _BUILDERS[request.figure_id](params, request.grid_points)
    else:
        raise FigureError(f"{UNKNOWN_FIGURE_ERROR} {request.figure_id!r}")
    table = table.model_copy(update={"metadata": {**table.metadata, "grid_points": str(request.grid_points)}})
    logger.info(f"Built {request.figure_id} with {len(table.frame)} rows")
    return table

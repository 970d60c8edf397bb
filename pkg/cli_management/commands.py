"""Command-line interface.

Every command writes its result to ``--out`` or stdout; logs go to stderr.
Exit codes: 0 success, 1 failure, 2 configuration or data error, 3 fit
not converged.
"""

import functools
import logging
from pathlib import Path
from typing import Callable, Dict, Mapping, Optional

import click
from pydantic import ValidationError

from cli_management.cli_constants import (
    CLI_HELP,
    CONFIG_HELP,
    DATA_HELP,
    F_HELP,
    HUMAN_RAYLEIGH_UNIT,
    HUMAN_SIGMA_UNIT,
    LENS_Z_HELP,
    LOG_LEVEL_HELP,
    MISSING_CONFIG_ERROR,
    MISSING_FOCAL_LENGTH_ERROR,
    OUT_HELP,
    POINTS_HELP,
    SVG_HELP,
    SVG_NEEDS_OUT_ERROR,
    VERIFY_FAILED_MESSAGE,
    WAIST_F_HELP,
    WAIST_Z_HELP,
    Z_HELP,
    ZPRIME_HELP,
)
from constants import (
    EXIT_FAILURE,
    EXIT_FIT_NOT_CONVERGED,
    EXIT_PARSE_ERROR,
    FIGURE_IDS,
    FIT_RESIDUALS_SUFFIX,
    FIT_RESULT_SUFFIX,
    FIG4_Z,
    FIG5_F,
    FIG5_Z,
    SVG_SUFFIX,
)
from modules.entanglement_management.entangle import (
    log_negativity,
    log_negativity_from_matrix,
    moments,
    negativity_schmidt_gap,
    pt_spectrum,
    schmidt_number,
)
from modules.exceptions import BiphotonError, ConfigParseError, DataFileError
from modules.figure_management.figures import build_figure
from modules.figure_management.plotting import render_svg
from modules.figure_management.tables import render_table, write_table
from modules.figure_management.validations import FigureRequest
from modules.fit_management.fit import fit, synthesize, synthetic_grid
from modules.fit_management.fit_constants import DEFAULT_FIT_TOL, Z_F_SCALE
from modules.fit_management.fit_io import (
    dataset_frame,
    format_fit_result,
    load_dataset,
    write_fit_result,
    write_residuals,
)
from modules.parameter_management.config_parser import load_experiment, parse_length
from modules.parameter_management.params import derive_scales
from modules.parameter_management.validations import ExperimentParams
from modules.propagation_management.freeprop import beam_geometry
from modules.propagation_management.lens import focused_geometry, gouy_lens, waist_position
from modules.propagation_management.validations import FitModelParams, LensSetup
from modules.verification_management.verify import verify
from system.system.default_configs.biphoton_conf import BIPHOTON_DATA_PATH, BIPHOTON_GRID_POINTS
from system.system.default_configs.logging_conf import configure_logging

logger = logging.getLogger(__name__)


class CliState:
    """Global options shared by every command."""

    def __init__(self, config: Optional[str], out: Optional[str], points: int, svg: bool):
        self.config = config
        self.out = out
        self.points = points
        self.svg = svg

    def params(self, required: bool = True) -> Optional[ExperimentParams]:
        """Experiment parameters from --config.

        Raises:
            ConfigParseError: If the file is invalid, or absent while required
        """
        if self.config is None:
            if required:
                raise ConfigParseError(MISSING_CONFIG_ERROR)
            return None
        return load_experiment(self.config)

    def emit(self, text: str) -> None:
        if self.out is None:
            click.echo(text, nl=False)
            return
        path = Path(self.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        logger.info(f"Wrote {path}")


def _key_values(values: Mapping[str, object]) -> str:
    return "".join(f"{key}={value}\n" for key, value in values.items())


def _length(_ctx, _param, value: Optional[str]) -> Optional[float]:
    if value is None:
        return None
    try:
        return parse_length(value)
    except ValueError as e:
        raise click.BadParameter(str(e))


def handle_errors(command: Callable) -> Callable:
    """Map domain errors to exit codes."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return command(*args, **kwargs)
        except (ConfigParseError, DataFileError) as e:
            logger.error(str(e))
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_PARSE_ERROR)
        except ValidationError as e:
            message = e.errors()[0]["msg"]
            logger.error(message)
            click.echo(f"error: {message}", err=True)
            ctx.exit(EXIT_PARSE_ERROR)
        except (BiphotonError, OSError) as e:
            logger.error(str(e))
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_FAILURE)

    return wrapper


def _focal_length(f: Optional[float], params: ExperimentParams) -> float:
    if f is not None:
        return f
    if params.focal_length is None:
        raise ConfigParseError(MISSING_FOCAL_LENGTH_ERROR)
    return params.focal_length


@click.group(help=CLI_HELP)
@click.option("--config", type=click.Path(dir_okay=False), default=None, help=CONFIG_HELP)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help=OUT_HELP)
@click.option("--points", type=int, default=BIPHOTON_GRID_POINTS, show_default=True, help=POINTS_HELP)
@click.option("--svg", is_flag=True, default=False, help=SVG_HELP)
@click.option("--log-level", default=None, help=LOG_LEVEL_HELP)
@click.pass_context
def cli(ctx, config, out, points, svg, log_level):
    configure_logging(log_level)
    ctx.obj = CliState(config=config, out=out, points=points, svg=svg)


@cli.command()
@click.pass_obj
@handle_errors
def derive(state: CliState):
    """Print sigma, k0 and both Rayleigh lengths."""
    scales = derive_scales(state.params())
    sigma_unit, sigma_factor = HUMAN_SIGMA_UNIT
    z0_unit, z0_factor = HUMAN_RAYLEIGH_UNIT
    human = (
        f"# sigma    = {scales.sigma / sigma_factor:.4g} {sigma_unit}\n"
        f"# k0       = {scales.k0:.6g} 1/m\n"
        f"# z0_plus  = {scales.z0_plus / z0_factor:.4g} {z0_unit}\n"
        f"# z0_minus = {scales.z0_minus / z0_factor:.4g} {z0_unit}\n"
    )
    machine = _key_values(
        {
            "sigma_m": repr(scales.sigma),
            "k0_per_m": repr(scales.k0),
            "z0_plus_m": repr(scales.z0_plus),
            "z0_minus_m": repr(scales.z0_minus),
            "omega_m": repr(scales.omega),
        }
    )
    state.emit(human + machine)


@cli.command()
@click.argument("figure_id", type=click.Choice(FIGURE_IDS))
@click.option("--data", "data_path", type=click.Path(dir_okay=False), default=BIPHOTON_DATA_PATH, help=DATA_HELP)
@click.pass_obj
@handle_errors
def figure(state: CliState, figure_id: str, data_path: str):
    """Write the plot table of a figure as CSV."""
    if state.svg and state.out is None:
        raise click.UsageError(SVG_NEEDS_OUT_ERROR)
    request = FigureRequest(figure_id=figure_id, grid_points=state.points, output_path=state.out)
    data = load_dataset(data_path) if figure_id == "fig5" else None
    table = build_figure(request, state.params(required=False), data)
    if request.output_path is None:
        click.echo(render_table(table.frame, table.metadata), nl=False)
        return
    write_table(request.output_path, table.frame, table.metadata)
    if state.svg:
        render_svg(table, Path(request.output_path).with_suffix(SVG_SUFFIX))


@cli.command(name="verify")
@click.pass_obj
@handle_errors
def verify_command(state: CliState):
    """Check the closed forms against the quadrature oracle."""
    report = verify(state.params(required=False))
    state.emit(render_table(report.to_frame()))
    if not report.passed:
        click.echo(f"{VERIFY_FAILED_MESSAGE} {', '.join(report.failed)}", err=True)
        click.get_current_context().exit(EXIT_FAILURE)


@cli.command(name="fit")
@click.option("--data", "data_path", type=click.Path(dir_okay=False), default=BIPHOTON_DATA_PATH, help=DATA_HELP)
@click.option("--zeta0", type=float, default=None, help="Starting zeta0 (rad).")
@click.option("--z-f", "z_f", callback=_length, default=None, help="Starting z_f, with unit.")
@click.option("--z", callback=_length, default=None, help="Crystal-to-lens distance, with unit.")
@click.option("--zprime", callback=_length, default=None, help=ZPRIME_HELP)
@click.option("--f", callback=_length, default=None, help=F_HELP)
@click.option("--z0-minus", "z0_minus", callback=_length, default=None, help="Minus-coordinate Rayleigh length.")
@click.option("--tol", type=float, default=DEFAULT_FIT_TOL, show_default=True)
@click.pass_obj
@handle_errors
def fit_command(state: CliState, data_path, zeta0, z_f, z, zprime, f, z0_minus, tol):
    """Fit zeta0 and z_f of the focused Gouy-phase model to measured data."""
    data = load_dataset(data_path)
    overrides = {"z": z, "z_prime": zprime, "f": f, "z0_minus": z0_minus}
    fixed = FitModelParams(**{k: v for k, v in overrides.items() if v is not None})
    init = None
    if zeta0 is not None or z_f is not None:
        init = (fixed.zeta0 if zeta0 is None else zeta0, fixed.z_f if z_f is None else z_f)
    result = fit(data, fixed=fixed, init=init, tol=tol)

    if state.out is not None:
        stem = Path(state.out)
        metadata = {"data": data_path, "zeta0_rad": repr(result.zeta0), "z_f_mm": repr(result.z_f / Z_F_SCALE)}
        write_fit_result(result, stem.with_suffix(FIT_RESULT_SUFFIX))
        write_residuals(result, data, stem.with_suffix(FIT_RESIDUALS_SUFFIX), metadata)
    click.echo(format_fit_result(result, n_rows=len(data)), nl=False)
    if not result.converged:
        click.get_current_context().exit(EXIT_FIT_NOT_CONVERGED)


@cli.command()
@click.option("--z", required=True, callback=_length, help=Z_HELP)
@click.pass_obj
@handle_errors
def gouy(state: CliState, z: float):
    """Free-space Gouy phase, widths and radii at z."""
    geom = beam_geometry(z, derive_scales(state.params()))
    state.emit(
        _key_values(
            {
                "z_m": repr(geom.z),
                "zeta_rad": repr(geom.zeta),
                "zeta_plus_rad": repr(geom.zeta_plus),
                "zeta_minus_rad": repr(geom.zeta_minus),
                "w_plus_m": repr(geom.w_plus),
                "w_minus_m": repr(geom.w_minus),
                "r_plus_m": repr(geom.r_plus),
                "r_minus_m": repr(geom.r_minus),
            }
        )
    )


@cli.command()
@click.option("--z", callback=_length, default="0", show_default=True, help=Z_HELP)
@click.pass_obj
@handle_errors
def entangle(state: CliState, z: float):
    """Logarithmic negativity and Schmidt number."""
    params = state.params()
    scales = derive_scales(params)
    M = moments(params, scales, z)
    spectrum = pt_spectrum(M)
    state.emit(
        _key_values(
            {
                "log_base": params.log_base,
                "z_m": repr(z),
                "nu_1": repr(spectrum.nu_1),
                "nu_2": repr(spectrum.nu_2),
                "log_negativity_covariance": repr(log_negativity_from_matrix(M, params.log_base)),
                "log_negativity": repr(log_negativity(scales, params.log_base)),
                "schmidt_number": repr(schmidt_number(scales, z)),
                "negativity_schmidt_gap": repr(negativity_schmidt_gap(scales, params.log_base)),
            }
        )
    )


@cli.command()
@click.option("--zprime", required=True, callback=_length, help=ZPRIME_HELP)
@click.option("--z", callback=_length, default=None, help=LENS_Z_HELP)
@click.option("--f", callback=_length, default=None, help=F_HELP)
@click.pass_obj
@handle_errors
def lens(state: CliState, zprime: float, z: Optional[float], f: Optional[float]):
    """Focused widths, radii and Gouy phase after a thin lens.

    zeta_rad is the continuous Gouy phase and passes pi/2 at zprime = 2f.
    zeta_wrapped_rad is the single-arctan value in [-pi/4, pi/4), which
    vanishes at zprime = 2f. zeta_ray_matrix_rad uses the ray-matrix
    distance z + zprime / d.
    """
    params = state.params()
    scales = derive_scales(params)
    setup = LensSetup(
        f=_focal_length(f, params),
        z=FIG4_Z if z is None else z,
        z_prime=zprime,
        c_scale=params.c_scale,
    )
    focused = focused_geometry(setup, scales)
    values: Dict[str, object] = {
        "f_m": repr(setup.f),
        "z_m": repr(setup.z),
        "z_prime_m": repr(setup.z_prime),
        "c_scale": repr(setup.c_scale),
        "B_plus_m": repr(focused.B_plus),
        "B_minus_m": repr(focused.B_minus),
        "R_plus": repr(focused.R_plus),
        "R_minus": repr(focused.R_minus),
        "zeta_rad": repr(focused.zeta),
        "zeta_wrapped_rad": repr(gouy_lens(setup, scales, wrapped=True)),
        "zeta_ray_matrix_rad": repr(gouy_lens(setup, scales, exact=True)),
    }
    state.emit(_key_values(values))


@cli.command()
@click.option("--z", callback=_length, default=None, help=WAIST_Z_HELP)
@click.option("--f", callback=_length, default=None, help=WAIST_F_HELP)
@click.pass_obj
@handle_errors
def waist(state: CliState, z: Optional[float], f: Optional[float]):
    """Position after the lens of the focused plus-coordinate waist."""
    params = state.params()
    scales = derive_scales(params)
    focal = f if f is not None else (params.focal_length or FIG5_F)
    z = FIG5_Z if z is None else z
    setup = LensSetup(f=focal, z=z, z_prime=2.0 * focal, c_scale=params.c_scale)
    position = waist_position(z, setup, scales)
    state.emit(
        _key_values(
            {
                "f_m": repr(focal),
                "z_m": repr(z),
                "c_scale": repr(params.c_scale),
                "waist_position_m": repr(position),
                "waist_position_mm": repr(position / Z_F_SCALE),
            }
        )
    )


@cli.command(name="synthesize")
@click.option("--zeta0", type=float, default=None, help="Model zeta0 (rad).")
@click.option("--z-f", "z_f", callback=_length, default=None, help="Model z_f, with unit.")
@click.option("--noise", type=float, default=0.0, show_default=True, help="Gaussian noise std (rad).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_obj
@handle_errors
def synthesize_command(state: CliState, zeta0, z_f, noise, seed):
    """Write model data in the fit input format."""
    model = FitModelParams()
    model = model.with_fit(model.zeta0 if zeta0 is None else zeta0, model.z_f if z_f is None else z_f)
    data = synthesize(model, synthetic_grid(model.z_f), noise_std=noise, seed=seed)
    metadata = {
        "source": "synthetic",
        "zeta0_rad": repr(model.zeta0),
        "z_f_mm": repr(model.z_f / Z_F_SCALE),
        "noise_std_rad": repr(noise),
        "seed": seed,
    }
    state.emit(render_table(dataset_frame(data), metadata))

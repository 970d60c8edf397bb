import math

import numpy as np
import pytest
from pydantic import ValidationError

from constants import FIGURE_IDS
from modules.exceptions import FigureError
from modules.figure_management.figures import build_figure
from modules.figure_management.plotting import render_svg
from modules.figure_management.tables import render_table, write_table
from modules.figure_management.validations import FigureRequest
from modules.fit_management.fit_io import load_dataset

POINTS = 50
TABLE_FIGURES = [figure_id for figure_id in FIGURE_IDS if figure_id != "fig5"]


@pytest.fixture
def shipped_data(shipped_data_path):
    return load_dataset(shipped_data_path)


def _build(figure_id, points=POINTS, **kwargs):
    return build_figure(FigureRequest(figure_id=figure_id, grid_points=points), **kwargs)


@pytest.mark.parametrize("figure_id", TABLE_FIGURES)
def test_figures_build_deterministically(figure_id):
    first = _build(figure_id)
    second = _build(figure_id)
    assert len(first.frame) == POINTS
    assert np.all(np.isfinite(first.frame.to_numpy(dtype=float)))
    assert render_table(first.frame, first.metadata) == render_table(second.frame, second.metadata)
    assert first.metadata["grid_points"] == str(POINTS)


def test_fig1_phase_is_odd_and_smaller_for_wider_pump():
    frame = _build("fig1").frame
    narrow = frame["zeta_omega_5sigma_rad"].to_numpy()
    wide = frame["zeta_omega_10sigma_rad"].to_numpy()
    np.testing.assert_allclose(narrow, -narrow[::-1], atol=1e-12)
    positive = frame["z_mm"].to_numpy() > 0
    assert np.all(narrow[positive] > wide[positive])


def test_fig2a_ends_at_equal_rayleigh_lengths():
    last = _build("fig2a").frame.iloc[-1]
    assert last["z0_ratio"] == pytest.approx(1.0)
    assert last["log_negativity"] == pytest.approx(0.0, abs=1e-12)
    assert last["log_sqrt_schmidt"] == pytest.approx(math.log(2.0))


def test_fig3_negativity_matches_the_closed_form():
    frame = _build("fig3c").frame
    expected = np.abs(np.log(np.sqrt(frame["z0_ratio"].to_numpy())))
    np.testing.assert_allclose(frame["log_negativity"], expected, atol=1e-9)


def test_fig4_wrapped_phase_vanishes_at_twice_the_focal_length():
    frame = _build("fig4", points=401).frame
    assert frame["zeta_wrapped_rad"].abs().min() < 1e-9
    continuous = frame["zeta_continuous_rad"].to_numpy()
    assert np.all(np.abs(np.diff(continuous)) < 0.5)


def test_fig5_needs_data():
    with pytest.raises(FigureError):
        _build("fig5")


def test_fig5_rows(shipped_data):
    table = _build("fig5", data=shipped_data)
    frame = table.frame
    measured = frame["zeta_rad"].notna()
    assert measured.sum() == len(shipped_data)
    assert frame.loc[~measured, "zeta_model_rad"].notna().all()
    assert frame.loc[~measured, "weight"].isna().all()
    assert table.point_columns == ("zeta_rad",)


def test_fig6_waist_is_finite_and_positive():
    frame = _build("fig6").frame
    assert np.all(np.isfinite(frame["waist_position_mm"]))
    assert np.all(frame["waist_position_mm"] > 0)


def test_written_csv_is_byte_identical(tmp_path):
    table = _build("fig4")
    a = write_table(tmp_path / "a.csv", table.frame, table.metadata).read_bytes()
    b = write_table(tmp_path / "b.csv", table.frame, table.metadata).read_bytes()
    assert a == b
    assert b"\r\n" not in a
    assert a.startswith(b"# figure: fig4\n")


@pytest.mark.parametrize("figure_id", ["fig2b", "fig5"])
def test_svg_is_byte_identical(tmp_path, shipped_data, figure_id):
    table = _build(figure_id, data=shipped_data)
    a = render_svg(table, tmp_path / "a.svg").read_bytes()
    b = render_svg(table, tmp_path / "b.svg").read_bytes()
    assert a == b
    assert b"<svg" in a


def test_figure_request_validation():
    with pytest.raises(ValidationError):
        FigureRequest(figure_id="fig7")
    with pytest.raises(ValidationError):
        FigureRequest(figure_id="fig1", grid_points=10)

import numpy as np
import pytest
from pydantic import ValidationError

from modules.exceptions import DataFileError, DomainError, FitPreconditionError, SingularConfigurationError
from modules.figure_management.figures import figure_5, source_params
from modules.figure_management.tables import write_table
from modules.fit_management.fit import fit, synthesize, synthetic_grid
from modules.fit_management.fit_io import (
    format_fit_result,
    load_dataset,
    write_dataset,
    write_fit_result,
    write_residuals,
)
from modules.fit_management.validations import DataSet
from modules.propagation_management.lens import fit_model
from modules.propagation_management.validations import FitModelParams

MODEL = FitModelParams()


@pytest.fixture
def noiseless():
    return synthesize(MODEL, synthetic_grid(MODEL.z_f))


def test_noiseless_recovery(noiseless):
    result = fit(noiseless)
    assert result.converged
    assert result.zeta0 == pytest.approx(MODEL.zeta0, rel=1e-6)
    assert result.z_f == pytest.approx(MODEL.z_f, rel=1e-6)
    assert result.max_abs_residual < 1e-6


def test_recovery_from_a_distant_start(noiseless):
    result = fit(noiseless, init=(0.5, 60e-3))
    assert result.zeta0 == pytest.approx(MODEL.zeta0, rel=1e-6)
    assert result.z_f == pytest.approx(MODEL.z_f, rel=1e-6)


def test_noisy_recovery_is_mostly_within_five_percent():
    grid = synthetic_grid(MODEL.z_f)
    hits = 0
    for seed in range(20):
        result = fit(synthesize(MODEL, grid, noise_std=0.05, seed=seed))
        if abs(result.zeta0 / MODEL.zeta0 - 1) < 0.05 and abs(result.z_f / MODEL.z_f - 1) < 0.05:
            hits += 1
    assert hits >= 18


def test_translation_moves_only_z_f(noiseless):
    shift = 3e-3
    base = fit(noiseless)
    moved = fit(DataSet.from_arrays(noiseless.z0p + shift, noiseless.zeta), init=(MODEL.zeta0, MODEL.z_f + shift))
    assert moved.z_f == pytest.approx(base.z_f + shift, rel=1e-6)
    assert moved.zeta0 == pytest.approx(base.zeta0, rel=1e-6)


def test_fit_is_deterministic():
    data = synthesize(MODEL, synthetic_grid(MODEL.z_f), noise_std=0.05, seed=3)
    assert fit(data) == fit(data)


def test_too_few_rows():
    data = synthesize(MODEL, [1e-3, 2e-3, 20e-3])
    with pytest.raises(FitPreconditionError):
        fit(data)


def test_lens_pole_in_fixed_arrangement(noiseless):
    with pytest.raises(SingularConfigurationError):
        fit(noiseless, fixed=FitModelParams(z_prime=2 * MODEL.f))


def test_weights_downplay_outliers(noiseless):
    zeta = noiseless.zeta.copy()
    zeta[0] += 1.0
    weight = np.ones(len(zeta))
    weight[0] = 1e-12
    result = fit(DataSet.from_arrays(noiseless.z0p, zeta, weight))
    assert result.zeta0 == pytest.approx(MODEL.zeta0, rel=1e-4)


def test_dataset_validation():
    with pytest.raises(ValidationError):
        DataSet.from_arrays([1e-3, 1e-3, 2e-3, 3e-3], [1.0, 1.0, 2.0, 3.0])
    with pytest.raises(ValidationError):
        DataSet.from_arrays([1e-3, 2e-3], [1.0, float("nan")])
    with pytest.raises(ValidationError):
        DataSet.from_arrays([1e-3, 2e-3], [1.0, 2.0], [1.0, 0.0])


def test_synthesize_guards():
    with pytest.raises(DomainError):
        synthesize(MODEL, [MODEL.z_f + 1e-8, 1e-3])
    with pytest.raises(DomainError):
        synthesize(MODEL, [1e-3, 2e-3], noise_std=-1.0)


def test_synthesize_is_seeded():
    grid = synthetic_grid(MODEL.z_f)
    a = synthesize(MODEL, grid, noise_std=0.1, seed=5)
    b = synthesize(MODEL, grid, noise_std=0.1, seed=5)
    c = synthesize(MODEL, grid, noise_std=0.1, seed=6)
    assert a == b
    assert a != c


def test_synthetic_grid_straddles_the_pole():
    grid = synthetic_grid(MODEL.z_f)
    assert len(grid) == 30
    assert np.all(np.diff(grid) > 0)
    below = grid[grid < MODEL.z_f].max()
    above = grid[grid > MODEL.z_f].min()
    assert below == pytest.approx(6.9e-3) and above == pytest.approx(7.4e-3)


def test_shipped_data_fit(shipped_data_path):
    data = load_dataset(shipped_data_path)
    result = fit(data)
    assert result.converged
    assert result.zeta0 == pytest.approx(1.68, rel=0.10)
    assert result.z_f == pytest.approx(7.15e-3, rel=0.10)
    close = np.abs(np.asarray(result.residuals)) <= 0.2
    assert close.mean() >= 0.8


def test_load_dataset_converts_mm(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("# digitised\nz0_plus_mm,zeta_rad,weight\n1.0,1.7,2\n20.0,4.8,\n", encoding="utf-8")
    data = load_dataset(path)
    np.testing.assert_allclose(data.z0p, [1e-3, 20e-3])
    np.testing.assert_allclose(data.weight, [2.0, 1.0])


@pytest.mark.parametrize(
    "text",
    [
        "",
        "# only comments\n",
        "z0_plus_mm,phase\n1,2\n",
        "z0_plus_mm,zeta_rad\n1,abc\n",
        "z0_plus_mm,zeta_rad\n1,2\n1,3\n",
    ],
)
def test_load_dataset_rejects_bad_files(tmp_path, text):
    path = tmp_path / "bad.csv"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(DataFileError):
        load_dataset(path)


def test_load_dataset_missing_file(tmp_path):
    with pytest.raises(DataFileError):
        load_dataset(tmp_path / "absent.csv")


def test_written_dataset_reloads(tmp_path, noiseless):
    path = write_dataset(noiseless, tmp_path / "synthetic.csv", {"source": "synthetic"})
    reloaded = load_dataset(path)
    np.testing.assert_allclose(reloaded.z0p, noiseless.z0p, rtol=1e-11)
    np.testing.assert_allclose(reloaded.zeta, noiseless.zeta, rtol=1e-11)


def test_fig5_table_feeds_back_into_the_fit(tmp_path, shipped_data_path):
    data = load_dataset(shipped_data_path)
    table = figure_5(source_params(None), 60, data)
    path = write_table(tmp_path / "fig5.csv", table.frame, table.metadata)
    reloaded = load_dataset(path)
    assert len(reloaded) == len(data)
    np.testing.assert_allclose(reloaded.zeta, data.zeta)


def test_result_files(tmp_path, noiseless):
    result = fit(noiseless)
    text = format_fit_result(result, n_rows=len(noiseless))
    keys = [line.split("=", 1)[0] for line in text.splitlines()]
    assert keys == [
        "zeta0_rad",
        "z_f_mm",
        "rss",
        "max_abs_residual_rad",
        "iterations",
        "evaluations",
        "converged",
        "message",
        "n_rows",
    ]
    write_fit_result(result, tmp_path / "out.fit.txt")
    residuals = write_residuals(result, noiseless, tmp_path / "out.residuals.csv")
    lines = residuals.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "z0_plus_mm,zeta_model_rad,zeta_data_rad,residual_rad"
    assert len(lines) == len(noiseless) + 1
    model = fit_model(noiseless.z0p, MODEL.with_fit(result.zeta0, result.z_f))
    first = [float(v) for v in lines[1].split(",")]
    assert first[1] == pytest.approx(model[0], abs=1e-10)

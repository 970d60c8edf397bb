from pathlib import Path

import pytest

from constants import SOURCE_L_P, SOURCE_LAMBDA_P
from modules.oracle_management.validations import QuadratureSpec
from modules.parameter_management.params import derive_scales, derive_sigma
from modules.parameter_management.validations import ExperimentParams

REPO_ROOT = Path(__file__).resolve().parents[1]
SHIPPED_DATA = REPO_ROOT / "data" / "fig5_experimental.csv"


@pytest.fixture
def sigma():
    return derive_sigma(SOURCE_LAMBDA_P, SOURCE_L_P)


@pytest.fixture
def source_params(sigma):
    """Default 702 nm source with Omega = 5 sigma."""
    return ExperimentParams.source_defaults(omega=5.0 * sigma)


@pytest.fixture
def scales(source_params):
    return derive_scales(source_params)


@pytest.fixture
def fast_spec():
    return QuadratureSpec(half_width=8.0, n_points=1024)


@pytest.fixture
def shipped_data_path():
    return SHIPPED_DATA


@pytest.fixture
def config_file(tmp_path):
    """Write a configuration file and return its path."""

    def write(text: str, name: str = "experiment.conf") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write

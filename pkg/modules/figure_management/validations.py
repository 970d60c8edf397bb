from pathlib import Path
from typing import Dict, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from constants import FIGURE_IDS, MIN_GRID_POINTS
from modules.figure_management.figure_constants import GRID_POINTS_ERROR, UNKNOWN_FIGURE_ERROR
from system.system.default_configs.biphoton_conf import BIPHOTON_GRID_POINTS


class FigureRequest(BaseModel):
    model_config = ConfigDict(frozen=True)

    figure_id: str = Field(..., description="One of the figure identifiers")
    grid_points: int = Field(default=BIPHOTON_GRID_POINTS, description="Sweep points")
    output_path: Optional[Path] = Field(default=None, description="CSV destination (stdout if None)")

    @field_validator("figure_id")
    @classmethod
    def validate_figure_id(cls, v: str) -> str:
        if v not in FIGURE_IDS:
            raise ValueError(f"{UNKNOWN_FIGURE_ERROR} {v!r}; expected one of {', '.join(FIGURE_IDS)}")
        return v

    @field_validator("grid_points")
    @classmethod
    def validate_grid_points(cls, v: int) -> int:
        if v < MIN_GRID_POINTS:
            raise ValueError(f"{GRID_POINTS_ERROR} {MIN_GRID_POINTS}")
        return v


class FigureTable(BaseModel):
    """Plot data of one figure with its metadata and axis description."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    figure_id: str
    title: str
    frame: pd.DataFrame
    metadata: Dict[str, str]
    x_column: str
    line_columns: Tuple[str, ...]
    point_columns: Tuple[str, ...] = ()
    x_label: str
    y_label: str
    log_x: bool = False

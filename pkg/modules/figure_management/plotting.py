"""SVG rendering of figure tables.

The SVG is a convenience view of the CSV: lines for model columns, square
markers for data columns. A fixed hash salt and an empty date keep the
output byte-identical between runs.
"""

import logging
from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from modules.exceptions import FigureError  # noqa: E402
from modules.figure_management.figure_constants import SVG_FIGSIZE, SVG_HASH_SALT  # noqa: E402
from modules.figure_management.validations import FigureTable  # noqa: E402

logger = logging.getLogger(__name__)


def render_svg(table: FigureTable, path: Union[str, Path]) -> Path:
    """Render a figure table to an SVG file.

    Raises:
        FigureError: If the file cannot be written
    """
    path = Path(path)
    frame = table.frame
    with plt.rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=SVG_FIGSIZE)
        try:
            for column in table.line_columns:
                rows = frame[column].notna()
                ax.plot(frame.loc[rows, table.x_column], frame.loc[rows, column], label=column)
            for column in table.point_columns:
                rows = frame[column].notna()
                ax.plot(
                    frame.loc[rows, table.x_column],
                    frame.loc[rows, column],
                    linestyle="none",
                    marker="s",
                    markersize=4,
                    label=column,
                )
            if table.log_x:
                ax.set_xscale("log")
            ax.set_xlabel(table.x_label)
            ax.set_ylabel(table.y_label)
            ax.set_title(table.title)
            ax.legend()
            path.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(path, format="svg", metadata={"Date": None})
        except OSError as e:
            logger.error(f"Could not write {path}: {e}")
            raise FigureError(f"cannot write {path}: {e}") from e
        finally:
            plt.close(fig)
    logger.info(f"Rendered {table.figure_id} to {path}")
    return path

"""CSV emission shared by the figure and fit commands.

Every table is UTF-8 with LF line endings, ``#``-prefixed metadata lines,
one header row and floats in a fixed format so repeated runs are
byte-identical.
"""

import io
import logging
from pathlib import Path
from typing import Mapping, Optional, Union

import pandas as pd

from modules.figure_management.figure_constants import CSV_FLOAT_FORMAT

logger = logging.getLogger(__name__)


def format_metadata(metadata: Mapping[str, object]) -> str:
    return "".join(f"# {key}: {value}\n" for key, value in metadata.items())


def render_table(frame: pd.DataFrame, metadata: Optional[Mapping[str, object]] = None) -> str:
    """Table as CSV text with a metadata comment block."""
    buffer = io.StringIO()
    buffer.write(format_metadata(metadata or {}))
    frame.to_csv(buffer, index=False, lineterminator="\n", float_format=CSV_FLOAT_FORMAT, na_rep="")
    return buffer.getvalue()


def write_table(
    path: Union[str, Path],
    frame: pd.DataFrame,
    metadata: Optional[Mapping[str, object]] = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_table(frame, metadata))
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path

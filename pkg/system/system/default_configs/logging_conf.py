"""Logging setup shared by the CLI and the verify suite."""

import logging
import logging.config
import os

from system.system.default_configs.biphoton_conf import (
    BIPHOTON_LOG_LEVEL,
    BIPHOTON_LOGGING_INI,
)


def configure_logging(level: str | None = None) -> None:
    """Configure logging from the ini file, or a stderr handler when it is absent.

    Args:
        level: Optional level name overriding the configured root level
    """
    if os.path.exists(BIPHOTON_LOGGING_INI):
        logging.config.fileConfig(BIPHOTON_LOGGING_INI, disable_existing_loggers=False)
    else:
        logging.basicConfig(
            level=BIPHOTON_LOG_LEVEL,
            format="%(levelname)-5.5s [%(name)s] %(message)s",
        )
    if level:
        logging.getLogger().setLevel(level.upper())

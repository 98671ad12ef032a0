"""
Logging Configuration Utilities

This module provides logging configuration for the simulator. Console output
uses a compact format; an optional rotating log file records line numbers.

Author: Adryan R A
"""

import logging
import logging.config
import sys
from pathlib import Path
from typing import Any, Dict, Optional

from ..core.config import settings

CONSOLE_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
FILE_FORMAT = "%(asctime)s [%(levelname)s] %(name)s:%(lineno)d [%(threadName)s]: %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# pandas imports numexpr, which logs its thread count at INFO
QUIET_LIBRARIES = ("numexpr",)

LOG_FILE_BYTES = 10 * 1024 * 1024
LOG_FILE_BACKUPS = 5


def _logger_entry(level: str, handlers: list) -> Dict[str, Any]:
    return {"level": level, "handlers": list(handlers), "propagate": False}


def build_logging_config(level: str, log_file: Optional[str] = None) -> Dict[str, Any]:
    """
    dictConfig mapping for the `src` tree, the entry point and quiet libraries.

    Args:
        level (str): Level of the simulator's own loggers
        log_file (Optional[str]): Rotating log file; console only if None

    Returns:
        Dict[str, Any]: Mapping accepted by logging.config.dictConfig
    """
    handlers: Dict[str, Dict[str, Any]] = {
        "console": {
            "level": level,
            "class": "logging.StreamHandler",
            "formatter": "console",
            "stream": sys.stderr,
        }
    }
    if log_file:
        handlers["file"] = {
            "level": level,
            "class": "logging.handlers.RotatingFileHandler",
            "formatter": "file",
            "filename": log_file,
            "maxBytes": LOG_FILE_BYTES,
            "backupCount": LOG_FILE_BACKUPS,
            "encoding": "utf-8",
        }
    names = list(handlers)

    loggers = {"src": _logger_entry(level, names), "__main__": _logger_entry(level, names)}
    for library in QUIET_LIBRARIES:
        loggers[library] = _logger_entry("WARNING", names)

    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "console": {"format": CONSOLE_FORMAT, "datefmt": DATE_FORMAT},
            "file": {"format": FILE_FORMAT, "datefmt": DATE_FORMAT},
        },
        "handlers": handlers,
        "loggers": loggers,
        "root": {"level": "WARNING", "handlers": names},
    }


def setup_logging(log_file: Optional[str] = None, level: Optional[str] = None) -> None:
    """
    Set up logging configuration for the application.

    Args:
        log_file (Optional[str]): Path to log file. If None, logs only to console.
        level (Optional[str]): Level override; defaults to settings.LOG_LEVEL.
    """
    log_level = (level or settings.LOG_LEVEL).upper()
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
    logging.config.dictConfig(build_logging_config(log_level, log_file))


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance with the specified name.

    Args:
        name (str): Logger name

    Returns:
        logging.Logger: Configured logger instance
    """
    return logging.getLogger(name)

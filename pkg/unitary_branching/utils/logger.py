"""Centralized logging configuration for unitary-branching."""

import logging
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

ROOT_LOGGER = "unitary_branching"

DETAILED_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s'
SIMPLE_FORMAT = '%(levelname)s: %(message)s'


def setup_logger(
    name: str = ROOT_LOGGER,
    log_dir: Optional[Path] = None,
    verbose: bool = False,
    log_to_file: bool = True
) -> logging.Logger:
    """
    Set up logger with console and rotating file handlers.

    Args:
        name: Logger name
        log_dir: Directory for daily log files
        verbose: If True, log DEBUG and use the detailed console format
        log_to_file: If True and log_dir is given, also write to file

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)

    # Already configured
    if logger.handlers:
        return logger

    logger.setLevel(logging.DEBUG if verbose else logging.INFO)

    detailed_formatter = logging.Formatter(DETAILED_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')
    simple_formatter = logging.Formatter(SIMPLE_FORMAT)

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(logging.DEBUG if verbose else logging.INFO)
    console_handler.setFormatter(detailed_formatter if verbose else simple_formatter)
    logger.addHandler(console_handler)

    if log_to_file and log_dir:
        log_dir = Path(log_dir).expanduser()
        log_dir.mkdir(parents=True, exist_ok=True)

        log_file = log_dir / f"{datetime.now():%Y-%m-%d}.log"

        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=10 * 1024 * 1024,
            backupCount=30
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(detailed_formatter)
        logger.addHandler(file_handler)

    logger.propagate = False

    return logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Return the package logger, or a child such as ``unitary_branching.algebra.group``."""
    if name:
        return logging.getLogger(f"{ROOT_LOGGER}.{name}")
    return logging.getLogger(ROOT_LOGGER)


def log_banner(logger: logging.Logger, title: str, width: int = 60) -> None:
    """Log a title framed by rules, used at the start of long runs."""
    logger.info("=" * width)
    logger.info(title)
    logger.info("=" * width)

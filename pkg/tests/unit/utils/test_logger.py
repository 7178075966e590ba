"""
Tests for the logging system.

Tests the centralized logging configuration in unitary_branching/utils/logger.py.
"""

import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path

from freezegun import freeze_time

from unitary_branching.utils.logger import get_logger, log_banner, setup_logger


class TestSetupLogger:
    """Test cases for setup_logger function."""

    def test_setup_logger_creates_logger(self, temp_dir):
        """Test that setup_logger creates a named logger instance."""
        logger = setup_logger(name="test_logger", log_dir=temp_dir)

        assert isinstance(logger, logging.Logger)
        assert logger.name == "test_logger"

    def test_setup_logger_sets_info_level_by_default(self, temp_dir):
        """Test that default log level is INFO when verbose=False."""
        logger = setup_logger(name="test_info", log_dir=temp_dir, verbose=False)

        assert logger.level == logging.INFO

    def test_setup_logger_sets_debug_level_when_verbose(self, temp_dir):
        """Test that log level is DEBUG when verbose=True."""
        logger = setup_logger(name="test_debug", log_dir=temp_dir, verbose=True)

        assert logger.level == logging.DEBUG

    def test_setup_logger_creates_file_handler(self, temp_dir):
        """Test that a rotating file handler is attached."""
        logger = setup_logger(name="test_file_handler", log_dir=temp_dir, log_to_file=True)

        assert any(isinstance(h, RotatingFileHandler) for h in logger.handlers)

    def test_setup_logger_without_file_logging(self, temp_dir):
        """Test that no file handler is created when log_to_file=False."""
        logger = setup_logger(name="test_no_file", log_dir=temp_dir, log_to_file=False)

        assert not any(isinstance(h, RotatingFileHandler) for h in logger.handlers)
        assert len(logger.handlers) == 1

    def test_setup_logger_creates_log_directory(self, temp_dir):
        """Test that log directory is created if it doesn't exist."""
        log_dir = temp_dir / "new_logs"

        setup_logger(name="test_mkdir", log_dir=log_dir)

        assert log_dir.is_dir()

    @freeze_time("2026-03-14 09:26:53")
    def test_setup_logger_creates_dated_log_file(self, temp_dir):
        """Test that log file name is the current date."""
        logger = setup_logger(name="test_dated_file", log_dir=temp_dir)

        file_handler = next(h for h in logger.handlers if isinstance(h, RotatingFileHandler))
        assert Path(file_handler.baseFilename).name == "2026-03-14.log"

    def test_setup_logger_prevents_duplicate_handlers(self, temp_dir):
        """Test that calling setup_logger twice doesn't duplicate handlers."""
        logger1 = setup_logger(name="test_duplicate", log_dir=temp_dir)
        count = len(logger1.handlers)

        logger2 = setup_logger(name="test_duplicate", log_dir=temp_dir)

        assert logger1 is logger2
        assert len(logger2.handlers) == count

    def test_setup_logger_file_rotation_settings(self, temp_dir):
        """Test that file handler has correct rotation settings."""
        logger = setup_logger(name="test_rotation", log_dir=temp_dir)

        file_handler = next(h for h in logger.handlers if isinstance(h, RotatingFileHandler))
        assert file_handler.maxBytes == 10 * 1024 * 1024
        assert file_handler.backupCount == 30

    def test_setup_logger_actually_logs_to_file(self, temp_dir):
        """Test that logger actually writes to file."""
        logger = setup_logger(name="test_actual_logging", log_dir=temp_dir)

        logger.info("enumerated 7776 elements")

        log_files = list(temp_dir.glob("*.log"))
        assert len(log_files) == 1
        assert "enumerated 7776 elements" in log_files[0].read_text()


class TestGetLogger:
    """Test cases for get_logger function."""

    def test_get_logger_creates_child_logger(self):
        """Test that get_logger creates a child of the package logger."""
        logger = get_logger("algebra.group")

        assert logger.name == "unitary_branching.algebra.group"

    def test_get_logger_without_name(self):
        """Test that get_logger without a name returns the package logger."""
        assert get_logger().name == "unitary_branching"

    def test_get_logger_returns_same_instance(self):
        """Test that get_logger returns same instance for same name."""
        assert get_logger("same_component") is get_logger("same_component")

    def test_get_logger_inherits_parent_config(self, temp_dir):
        """Test that child logger inherits the package level."""
        setup_logger(log_dir=temp_dir, verbose=True)

        assert get_logger("core.session").getEffectiveLevel() == logging.DEBUG


class TestLogBanner:
    """Test cases for log_banner."""

    def test_banner_frames_title(self, temp_dir, caplog):
        """Test that the title sits between two rules."""
        logger = setup_logger(name="test_banner", log_dir=temp_dir, log_to_file=False)
        logger.propagate = True

        with caplog.at_level(logging.INFO, logger="test_banner"):
            log_banner(logger, "Enumerating K/K_2 at p=3", width=20)

        messages = [r.getMessage() for r in caplog.records]
        assert messages == ["=" * 20, "Enumerating K/K_2 at p=3", "=" * 20]

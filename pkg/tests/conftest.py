"""
Shared pytest fixtures for unitary-branching tests.

This module provides common fixtures used across all test suites.
"""

import logging

import pytest

from unitary_branching.algebra.ring import ring_make
from unitary_branching.core.session import SessionPool


@pytest.fixture
def temp_dir(tmp_path):
    """Provide a temporary directory for test files."""
    test_dir = tmp_path / "unitary_branching_test"
    test_dir.mkdir(exist_ok=True)
    return test_dir


@pytest.fixture
def temp_db_path(temp_dir):
    """Provide path to temporary SQLite database."""
    return temp_dir / "test_state.db"


@pytest.fixture
def sample_config_dict(temp_dir):
    """Provide sample configuration dictionary for testing."""
    return {
        "paths": {
            "data_dir": str(temp_dir / "data"),
            "cache_dir": str(temp_dir / "cache"),
            "output_dir": str(temp_dir / "certificates"),
            "logs_dir": str(temp_dir / "logs"),
        },
        "field": {
            "p": 3,
            "N": 1,
        },
        "enumeration": {
            "budget": 100_000,
        },
        "verify": {
            "workers": 1,
            "suites": ["level-one"],
        },
    }


@pytest.fixture
def config_file(temp_dir, sample_config_dict):
    """Write the sample configuration to a YAML file."""
    import yaml

    path = temp_dir / "config.yaml"
    path.write_text(yaml.dump(sample_config_dict))
    return path


@pytest.fixture
def ctx_3_1():
    """O_E/p at p = 3."""
    return ring_make(3, None, 1)


@pytest.fixture
def ctx_3_2():
    """O_E/p^2 at p = 3."""
    return ring_make(3, None, 2)


@pytest.fixture(scope="session")
def pool():
    """Session pool shared by every test; tables are built once."""
    return SessionPool(budget=2_000_000)


@pytest.fixture(scope="session")
def session_3_1(pool):
    """Tables for K/K_1 at p = 3 (order 96)."""
    return pool.get(3, None, 1)


@pytest.fixture(scope="session")
def session_3_2(pool):
    """Tables for K/K_2 at p = 3 (order 7776)."""
    return pool.get(3, None, 2)


@pytest.fixture(autouse=True)
def reset_loggers():
    """Reset logging configuration between tests."""
    logger = logging.getLogger("unitary_branching")
    logger.handlers.clear()
    logger.setLevel(logging.NOTSET)

    yield

    logger.handlers.clear()


@pytest.fixture
def capture_logs(caplog):
    """Fixture to easily capture log messages."""
    caplog.set_level(logging.DEBUG)
    return caplog

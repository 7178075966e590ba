"""Database migration system."""

import importlib.util
import sqlite3
from pathlib import Path

from unitary_branching.utils.logger import get_logger

logger = get_logger("storage.migrations")


def run_migrations(db_path: Path):
    """
    Run all pending migrations.

    Args:
        db_path: Path to SQLite database file
    """
    conn = sqlite3.connect(db_path)

    try:
        conn.execute("""
            CREATE TABLE IF NOT EXISTS schema_migrations (
                version INTEGER PRIMARY KEY,
                applied_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
            )
        """)

        applied = {row[0] for row in conn.execute("SELECT version FROM schema_migrations")}

        migrations_dir = Path(__file__).parent
        for migration_file in sorted(migrations_dir.glob("[0-9]*.py")):
            # 001_initial.py -> 1
            version = int(migration_file.stem.split('_')[0])
            if version in applied:
                continue

            logger.debug(f"Running migration {version}")
            spec = importlib.util.spec_from_file_location(
                f"unitary_branching_migration_{version}",
                migration_file
            )
            module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(module)

            module.up(conn)
            conn.execute("INSERT INTO schema_migrations (version) VALUES (?)", (version,))
            conn.commit()
            logger.debug(f"Migration {version} completed")

    finally:
        conn.close()

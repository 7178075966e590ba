"""Initial schema: verification runs and their claims."""

import sqlite3


def up(conn: sqlite3.Connection):
    """Create initial schema."""
    conn.executescript("""
    CREATE TABLE IF NOT EXISTS verification_runs (
        id INTEGER PRIMARY KEY AUTOINCREMENT,
        run_date TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
        command TEXT NOT NULL,
        p INTEGER NOT NULL,
        epsilon INTEGER NOT NULL,
        level INTEGER NOT NULL,
        status TEXT NOT NULL,
        claims_total INTEGER DEFAULT 0,
        claims_failed INTEGER DEFAULT 0,
        output_path TEXT,
        runtime_seconds REAL,
        error_log TEXT
    );

    CREATE TABLE IF NOT EXISTS claims (
        id INTEGER PRIMARY KEY AUTOINCREMENT,
        run_id INTEGER NOT NULL REFERENCES verification_runs(id) ON DELETE CASCADE,
        suite TEXT NOT NULL,
        claim TEXT NOT NULL,
        passed INTEGER NOT NULL,
        detail TEXT
    );

    CREATE INDEX IF NOT EXISTS idx_claims_run ON claims(run_id);
    CREATE INDEX IF NOT EXISTS idx_claims_passed ON claims(passed);
    """)


def down(conn: sqlite3.Connection):
    """Rollback initial schema."""
    conn.executescript("""
    DROP INDEX IF EXISTS idx_claims_passed;
    DROP INDEX IF EXISTS idx_claims_run;
    DROP TABLE IF EXISTS claims;
    DROP TABLE IF EXISTS verification_runs;
    """)

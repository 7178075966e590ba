"""Record which verification rung produced each claim."""

import sqlite3


def up(conn: sqlite3.Connection):
    """Add rung and level columns to claims."""
    conn.execute("ALTER TABLE claims ADD COLUMN rung TEXT DEFAULT 'full'")
    conn.execute("ALTER TABLE claims ADD COLUMN level INTEGER")


def down(conn: sqlite3.Connection):
    """SQLite before 3.35 has no DROP COLUMN; the columns are left in place."""
    pass

"""Run history in SQLite."""

import json
import sqlite3
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from unitary_branching.suites.base import Claim


class StateManager:
    """
    Manages the SQLite database for:
    - Verification run history
    - Per-claim results, so failures can be listed across runs
    """

    def __init__(self, db_path: Path):
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self._init_db()

    @contextmanager
    def _get_conn(self):
        """Context manager for database connections."""
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        conn.execute("PRAGMA foreign_keys = ON")
        try:
            yield conn
            conn.commit()
        except Exception:
            conn.rollback()
            raise
        finally:
            conn.close()

    def _init_db(self):
        from unitary_branching.storage.migrations import run_migrations
        run_migrations(self.db_path)

    def record_run(
        self,
        command: str,
        p: int,
        epsilon: int,
        N: int,
        claims: Sequence[Claim],
        output_path: Optional[Path],
        runtime_seconds: float,
        status: Optional[str] = None,
        error_log: Optional[str] = None
    ) -> int:
        """
        Record a verification run and its claims.

        Status defaults to 'success' when every claim passed and 'failed'
        otherwise.

        Returns:
            Run ID
        """
        failed = sum(1 for c in claims if not c.passed)
        if status is None:
            status = 'success' if failed == 0 else 'failed'

        with self._get_conn() as conn:
            cursor = conn.execute("""
                INSERT INTO verification_runs (
                    command, p, epsilon, level, status, claims_total,
                    claims_failed, output_path, runtime_seconds, error_log
                ) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
            """, (
                command,
                p,
                epsilon,
                N,
                status,
                len(claims),
                failed,
                str(output_path) if output_path else None,
                runtime_seconds,
                error_log
            ))
            run_id = cursor.lastrowid

            conn.executemany("""
                INSERT INTO claims (run_id, suite, claim, passed, detail, rung, level)
                VALUES (?, ?, ?, ?, ?, ?, ?)
            """, [
                (
                    run_id,
                    c.suite,
                    c.claim,
                    int(c.passed),
                    json.dumps(c.detail, sort_keys=True, default=str),
                    c.rung,
                    c.level,
                )
                for c in claims
            ])

            return run_id

    def get_recent_runs(self, limit: int = 10) -> List[Dict]:
        """Get recent verification runs, newest first."""
        with self._get_conn() as conn:
            cursor = conn.execute("""
                SELECT * FROM verification_runs
                ORDER BY run_date DESC, id DESC
                LIMIT ?
            """, (limit,))
            return [dict(row) for row in cursor.fetchall()]

    def get_claims(self, run_id: int) -> List[Dict]:
        """Claims of one run in insertion order."""
        with self._get_conn() as conn:
            cursor = conn.execute(
                "SELECT * FROM claims WHERE run_id = ? ORDER BY id",
                (run_id,)
            )
            return [self._claim_row(row) for row in cursor.fetchall()]

    def get_failed_claims(self, limit: int = 50) -> List[Dict]:
        """Failed claims across all runs, newest first."""
        with self._get_conn() as conn:
            cursor = conn.execute("""
                SELECT claims.*, verification_runs.run_date, verification_runs.command
                FROM claims
                JOIN verification_runs ON claims.run_id = verification_runs.id
                WHERE claims.passed = 0
                ORDER BY claims.id DESC
                LIMIT ?
            """, (limit,))
            return [self._claim_row(row) for row in cursor.fetchall()]

    @staticmethod
    def _claim_row(row: sqlite3.Row) -> Dict:
        record = dict(row)
        record['passed'] = bool(record['passed'])
        if record.get('detail'):
            try:
                record['detail'] = json.loads(record['detail'])
            except json.JSONDecodeError:
                pass
        return record

"""Base class for verification suites."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from unitary_branching.utils.logger import get_logger


@dataclass
class Claim:
    """One checked statement and its outcome."""

    suite: str
    claim: str
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)
    rung: str = 'full'
    level: Optional[int] = None

    def to_record(self) -> Dict[str, Any]:
        return {
            'kind': 'claim',
            'suite': self.suite,
            'claim': self.claim,
            'passed': self.passed,
            'rung': self.rung,
            'level': self.level,
            'detail': self.detail,
        }


class VerificationSuite(ABC):
    """
    Abstract base class for verification suites.

    Each suite must implement run() to return a list of claims. Tables come
    from a shared ``SessionPool`` so suites running in parallel reuse them.
    """

    name = ''
    default_level = 2

    def __init__(
        self,
        pool,
        p: int = 3,
        epsilon: Optional[int] = None,
        level: Optional[int] = None,
        options: Optional[Dict[str, Any]] = None,
    ):
        self.pool = pool
        self.p = p
        self.epsilon = epsilon
        self.level = level or self.default_level
        self.options = options or {}
        self.logger = get_logger(f"suites.{self.name}")

    def session(self, N: Optional[int] = None):
        return self.pool.get(self.p, self.epsilon, N or self.level)

    @abstractmethod
    def run(self) -> List[Claim]:
        """
        Check every statement the suite covers.

        Returns:
            List of claims, in a fixed order. Failed comparisons are claims
            with passed=False, not exceptions; unexpected errors may propagate
            and are recorded by the runner.
        """
        pass

    def _claim(
        self,
        claim: str,
        passed: bool,
        rung: str = 'full',
        level: Optional[int] = None,
        **detail
    ) -> Claim:
        """
        Create a claim for this suite.

        Args:
            claim: Short description of the statement checked
            passed: Outcome
            rung: 'full' for class-function checks, 'data' or 'dimensions'
                for the cheaper routes
            level: Truncation level used (default: the suite level)
            **detail: Values shown in the report

        Returns:
            Claim
        """
        if not passed:
            self.logger.warning(f"FAILED: {claim} {detail}")
        return Claim(
            suite=self.name,
            claim=claim,
            passed=bool(passed),
            detail=detail,
            rung=rung,
            level=level if level is not None else self.level,
        )

    def _guarded(self, claim: str, fn, level: Optional[int] = None, **detail) -> Claim:
        """Run fn() -> (passed, detail dict, rung); an exception becomes a failed claim."""
        try:
            passed, extra, rung = fn()
        except Exception as e:
            return self._claim(claim, False, level=level, error=f"{type(e).__name__}: {e}",
                               **detail)
        return self._claim(claim, passed, rung=rung, level=level, **detail, **extra)

"""Suite runner agent."""

from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Dict, List, Optional, Sequence

from unitary_branching.core.errors import InvalidParameter
from unitary_branching.suites import SUITES, Claim, VerificationSuite
from unitary_branching.utils.logger import get_logger


class SuiteAgent:
    """
    Coordinates verification suites.

    Runs suites in parallel over a shared session pool and merges their
    claims in the order the suites were requested.
    """

    def __init__(self, pool, p: int = 3, epsilon: Optional[int] = None,
                 level: Optional[int] = None, workers: int = 2,
                 options: Optional[Dict] = None):
        self.pool = pool
        self.p = p
        self.epsilon = epsilon
        self.level = level
        self.workers = max(int(workers), 1)
        self.options = options or {}
        self.logger = get_logger("agents.suite")

    def build(self, names: Sequence[str]) -> List[VerificationSuite]:
        """
        Instantiate suites by name.

        Raises:
            InvalidParameter: unknown suite name
        """
        unknown = [name for name in names if name not in SUITES]
        if unknown:
            raise InvalidParameter(
                f"unknown suite(s) {unknown}; available: {', '.join(SUITES)}"
            )
        return [
            SUITES[name](self.pool, self.p, self.epsilon, self.level, self.options)
            for name in names
        ]

    def run_all(self, suites: Sequence[VerificationSuite]) -> List[Claim]:
        """
        Run suites in parallel.

        A suite that raises is recorded as one failed claim carrying the error;
        the other suites keep running.

        Returns:
            Claims grouped by suite, in the order given
        """
        results: Dict[str, List[Claim]] = {}
        if not suites:
            self.logger.warning("No suites selected")
            return []

        with ThreadPoolExecutor(max_workers=min(self.workers, len(suites))) as executor:
            futures = {
                executor.submit(suite.run): suite
                for suite in suites
            }

            for future in as_completed(futures):
                suite = futures[future]
                try:
                    claims = future.result()
                    failed = sum(1 for c in claims if not c.passed)
                    self.logger.info(
                        f"{suite.name}: {len(claims) - failed}/{len(claims)} claims passed"
                    )
                    results[suite.name] = claims
                except Exception as e:
                    self.logger.error(f"Error running {suite.name}: {e}")
                    results[suite.name] = [Claim(
                        suite=suite.name,
                        claim="suite completed",
                        passed=False,
                        detail={'error': f"{type(e).__name__}: {e}"},
                        level=suite.level,
                    )]

        merged = [claim for suite in suites for claim in results[suite.name]]
        self.logger.info(f"Total claims: {len(merged)}")
        return merged

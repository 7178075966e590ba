"""Verification orchestrator - main workflow coordinator."""

from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from unitary_branching.agents.suite_agent import SuiteAgent
from unitary_branching.algebra.branching import canonical_decomposition
from unitary_branching.algebra.chars import select_characters
from unitary_branching.algebra.group import predicted_order
from unitary_branching.core.config import Config, RunConfig
from unitary_branching.core.errors import DecompositionError
from unitary_branching.core.session import SessionPool
from unitary_branching.output.certificate_writer import CertificateWriter
from unitary_branching.storage.cache import GroupCache
from unitary_branching.storage.state import StateManager
from unitary_branching.suites.base import Claim
from unitary_branching.utils.logger import get_logger, log_banner


@dataclass
class VerificationResult:
    """Result of one command."""

    timestamp: datetime
    command: str
    status: str  # 'success', 'failed'
    claims: List[Claim]
    records: List[Dict[str, Any]] = field(repr=False)
    output_path: Optional[Path]
    runtime_seconds: float
    run_id: Optional[int] = None
    error_log: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == 'success'

    @property
    def failed_claims(self) -> List[Claim]:
        return [c for c in self.claims if not c.passed]


class VerificationOrchestrator:
    """
    Main orchestrator for enumerate, branch and verify.

    Responsibilities:
    - Build the session pool, group cache and run history
    - Execute the command workflow
    - Write certificates and record the run
    """

    def __init__(self, config: Config, run: RunConfig, pool: Optional[SessionPool] = None):
        self.config = config
        self.run = run
        self.logger = get_logger("orchestrator")

        data_dir = Path(config.paths.data_dir).expanduser()
        self.cache = GroupCache(run.cache_dir) if run.use_cache and run.cache_dir else None
        self.pool = pool or SessionPool(run.budget, self.cache)
        self.state = StateManager(data_dir / "state.db")
        self.writer = CertificateWriter(config)

    @property
    def session(self):
        return self.pool.get(self.run.p, self.run.epsilon, self.run.N)

    def enumerate(self) -> VerificationResult:
        """Enumerate K/K_N and report orders, class count and index formulas."""
        start = datetime.now()
        log_banner(self.logger, f"Enumerating K/K_{self.run.N} at p={self.run.p}")

        self.logger.info("[1/2] Building tables...")
        session = self.session
        summary = session.summary()

        self.logger.info("[2/2] Checking orders...")
        claims = [
            Claim('enumerate', f"|K/K_{self.run.N}| matches the closed formula",
                  summary['order'] == predicted_order(session.ctx),
                  {'order': summary['order'], 'predicted': predicted_order(session.ctx)},
                  level=self.run.N),
            Claim('enumerate', "|K/K_1| = q(q-1)(q+1)^2",
                  summary['level_one_formula_matches'] == 'q(q-1)(q+1)^2',
                  {'order': summary['level_one_order']}, level=self.run.N),
        ]
        for entry in summary['borel_indices']:
            claims.append(Claim(
                'enumerate', f"[K : BK_{entry['n']}] = (q+1)q^{entry['n'] - 1}",
                entry['index'] == entry['formula'], dict(entry), level=self.run.N,
            ))
        return self._finish('enumerate', start, claims, [summary])

    def branch(self, selector: str) -> VerificationResult:
        """
        Decompose V_chi^{K_N} for every character the selector names.

        Decomposition failures are recorded as failed claims; the remaining
        characters are still processed.
        """
        start = datetime.now()
        include_values = bool(self.config.output.get('include_values', False))
        log_banner(self.logger, f"Branching at p={self.run.p}, N={self.run.N}, chi={selector}")

        session = self.session
        self.logger.info("[1/2] Selecting characters...")
        chars = select_characters(session.torus, selector)
        self.logger.info(f"Selected {len(chars)} character(s)")

        self.logger.info("[2/2] Decomposing...")
        claims, records = [], []
        for i, chi in enumerate(chars, 1):
            self.logger.debug(f"[{i}/{len(chars)}] {chi.label}")
            try:
                cert = canonical_decomposition(session, chi)
            except DecompositionError as e:
                self.logger.error(f"{chi.label}: {e}")
                claims.append(Claim('branch', f"decomposition of {chi.label}", False,
                                    {'error': str(e)}, level=self.run.N))
                continue
            records.append(cert.to_record(include_values))
            claims.append(Claim('branch', f"decomposition of {chi.label}", True,
                                {'degrees': cert.degrees}, rung=cert.rung, level=self.run.N))
        return self._finish('branch', start, claims, records)

    def verify(self, suite_names: Sequence[str]) -> VerificationResult:
        """Run verification suites in parallel; 'all' expands to the configured list."""
        start = datetime.now()
        names = list(suite_names)
        if not names or 'all' in names:
            names = list(self.config.verify.get('suites', []))

        log_banner(self.logger, f"Verifying {len(names)} suite(s) at p={self.run.p}")

        options = dict(self.run.options or {})
        options.pop('out', None)
        options.setdefault('seed', self.config.verify.get('seed', 0))
        options.setdefault('trials', self.config.verify.get('hensel_trials', 100))
        agent = SuiteAgent(
            self.pool,
            p=self.run.p,
            epsilon=self.run.epsilon,
            level=options.pop('level', None),
            workers=self.config.verify.get('workers', 2),
            options=options,
        )

        self.logger.info("[1/2] Building suites...")
        suites = agent.build(names)
        self.logger.info("[2/2] Running suites...")
        claims = agent.run_all(suites)
        return self._finish('verify', start, claims, [c.to_record() for c in claims])

    def _finish(
        self,
        command: str,
        start: datetime,
        claims: List[Claim],
        records: List[Dict[str, Any]],
    ) -> VerificationResult:
        failed = [c for c in claims if not c.passed]
        status = 'success' if not failed else 'failed'
        error_log = "\n".join(f"{c.suite}: {c.claim}" for c in failed) or None

        out = (self.run.options or {}).get('out')
        name = self.writer.filename(command, self.run.p, self.run.N)
        output_path = self.writer.write(
            records, name, Path(out) if out else self.run.output_dir / name
        )

        runtime = (datetime.now() - start).total_seconds()
        run_id = self.state.record_run(
            command=command,
            p=self.run.p,
            epsilon=self.session.ctx.eps,
            N=self.run.N,
            claims=claims,
            output_path=output_path,
            runtime_seconds=runtime,
            status=status,
            error_log=error_log,
        )
        self.logger.info(
            f"{command} finished: {len(claims) - len(failed)}/{len(claims)} claims passed "
            f"in {runtime:.1f}s"
        )
        return VerificationResult(
            timestamp=start,
            command=command,
            status=status,
            claims=claims,
            records=records,
            output_path=output_path,
            runtime_seconds=runtime,
            run_id=run_id,
            error_log=error_log,
        )

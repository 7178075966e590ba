"""End-to-end checks at the levels where each branching statement first becomes visible."""

import pytest

from unitary_branching.agents.suite_agent import SuiteAgent
from unitary_branching.algebra.branching import canonical_decomposition
from unitary_branching.algebra.chars import depth_one_first, depth_profile
from unitary_branching.core.config import Config, RunConfig
from unitary_branching.core.orchestrator import VerificationOrchestrator
from unitary_branching.core.session import SessionPool

pytestmark = pytest.mark.integration


@pytest.fixture
def config(temp_dir):
    """Default configuration with every path under the test directory."""
    config = Config.defaults()
    for key in ('data_dir', 'cache_dir', 'output_dir', 'logs_dir'):
        config.paths[key] = str(temp_dir / key)
    return config


def _orchestrator(config, pool, command, N, **options):
    run = RunConfig.from_config(config, command, p=3, N=N, **options)
    return VerificationOrchestrator(config, run, pool=pool)


class TestOrchestrator:
    """Test cases for the enumerate, branch and verify workflows."""

    @pytest.mark.parametrize("p,order", [(3, 96), (5, 720)])
    def test_level_one_order_formula(self, config, p, order):
        """Test that |K/K_1| decides for q(q-1)(q+1)^2."""
        run = RunConfig.from_config(config, 'enumerate', p=p, N=1)
        result = VerificationOrchestrator(config, run).enumerate()

        assert result.passed
        [summary] = result.records
        assert summary['order'] == order
        assert summary['level_one_formula_matches'] == 'q(q-1)(q+1)^2'

    def test_order_mismatch_is_a_failed_claim(self, config, mocker):
        """Test that an order off the closed formula fails the run instead of raising."""
        mocker.patch('unitary_branching.core.orchestrator.predicted_order', return_value=95)
        run = RunConfig.from_config(config, 'enumerate', p=3, N=1)
        result = VerificationOrchestrator(config, run).enumerate()

        assert not result.passed
        [formula] = [c for c in result.claims if "closed formula" in c.claim]
        assert not formula.passed
        assert formula.detail == {'order': 96, 'predicted': 95}
        assert result.records[0]['level_one_formula_matches'] == 'q(q-1)(q+1)^2'

    def test_branch_all_at_level_two(self, config, pool):
        """Test that all 72 characters give multiplicity-free certificates of total degree 12."""
        result = _orchestrator(config, pool, 'branch', 2).branch('all')

        assert result.passed, result.error_log
        assert len(result.records) == 72
        for record in result.records:
            assert sum(c['degree'] for c in record['components']) == 12
            assert all(c['multiplicity'] == 1 for c in record['components'])
            assert record['residual'] < 1e-6
        assert result.output_path.name == 'branch-p3-N2.jsonl'

    def test_verify_records_history(self, config, pool):
        """Test that a verify run is written and recorded."""
        orchestrator = _orchestrator(config, pool, 'verify', 2)
        result = orchestrator.verify(['level-one', 'intertwining'])

        assert result.passed, result.error_log
        [run] = orchestrator.state.get_recent_runs()
        assert run['command'] == 'verify'
        assert run['claims_total'] == len(result.claims)
        assert len(result.output_path.read_text().splitlines()) == len(result.claims)


@pytest.mark.parametrize("suite", ['double-cosets', 'intertwining', 'orbits', 'near-identity'])
def test_suite_at_level_two(pool, suite):
    """Test that the suite passes at p = 3, N = 2."""
    agent = SuiteAgent(pool, p=3, level=2, workers=1)
    claims = agent.run_all(agent.build([suite]))
    assert [(c.claim, c.detail) for c in claims if not c.passed] == []


@pytest.mark.slow
class TestDeeperLevels:
    """Test cases that enumerate K/K_3 or work at N = 4 without enumeration."""

    def test_depth_one_at_level_three(self, pool):
        """Test head(12) + S_2(Y_chi, zeta_chi)(24) = 36 for a minimal depth-one character."""
        session = pool.get(3, None, 3)
        chi = depth_one_first(session.torus)
        assert depth_profile(chi, session.torus).depth == 1

        cert = canonical_decomposition(session, chi)

        assert cert.degrees == [12, 24]
        assert cert.components[1].label.startswith('S_2(Y')
        assert cert.residual < 1e-6

    def test_normalizers(self, pool):
        """Test brute-force normalizers at d = 1, 2 with N = d + 1."""
        agent = SuiteAgent(pool, p=3, level=2, workers=1)
        claims = agent.run_all(agent.build(['normalizers']))
        assert [(c.claim, c.detail) for c in claims if not c.passed] == []

    def test_hensel_at_level_four(self):
        """Test 100 random lifts for s = 1, 2 at N = 4."""
        agent = SuiteAgent(SessionPool(), p=3, level=4, workers=1,
                           options={'trials': 100, 'seed': 0})
        claims = agent.run_all(agent.build(['hensel']))

        assert len(claims) == 4
        assert all(c.passed for c in claims)
        assert all(c.detail['passed_trials'] == 100 for c in claims)

    def test_key_identification_at_level_four(self):
        """Test the inducing-data identification at r = 1, d = 3."""
        agent = SuiteAgent(SessionPool(), p=3, level=4, workers=1)
        claims = agent.run_all(agent.build(['key-identification']))

        assert [(c.claim, c.detail) for c in claims if not c.passed] == []
        [identified] = [c for c in claims if c.claim.startswith("S_3(Y_chi")]
        assert identified.rung == 'data'

"""Tests for the verification suites at small levels."""

import pytest

from unitary_branching.algebra.branching import fixed_dimension_ledger
from unitary_branching.core.errors import NotRealizable
from unitary_branching.suites.base import Claim, VerificationSuite
from unitary_branching.suites.double_cosets import DoubleCosetSuite
from unitary_branching.suites.intertwining import IntertwiningSuite
from unitary_branching.suites.key_identification import KeyIdentificationSuite
from unitary_branching.suites.level_one import LevelOneSuite
from unitary_branching.suites.near_identity import NearIdentitySuite
from unitary_branching.suites.nilpotent_reps import NilpotentRepsSuite
from unitary_branching.suites.orbits import OrbitSuite


class _Stub(VerificationSuite):
    name = 'stub'

    def run(self):
        return [
            self._claim("holds", True, value=1),
            self._guarded("raises", lambda: 1 / 0),
            self._guarded("checked", lambda: (True, {'extra': 2}, 'data'), level=3),
        ]


class TestVerificationSuite:
    """Test cases for the suite base class."""

    def test_claim_helpers(self, pool):
        """Test _claim and _guarded."""
        held, raised, checked = _Stub(pool).run()

        assert held == Claim('stub', 'holds', True, {'value': 1}, level=2)
        assert not raised.passed
        assert raised.detail['error'].startswith("ZeroDivisionError")
        assert checked.rung == 'data'
        assert checked.level == 3
        assert checked.detail == {'extra': 2}

    def test_claim_record(self):
        """Test the record form of a claim."""
        record = Claim('orbits', 'x', False, {'a': 1}, rung='data', level=2).to_record()
        assert record == {'kind': 'claim', 'suite': 'orbits', 'claim': 'x', 'passed': False,
                          'rung': 'data', 'level': 2, 'detail': {'a': 1}}


@pytest.mark.parametrize("suite_cls,level", [
    (LevelOneSuite, 1),
    (DoubleCosetSuite, 2),
    (OrbitSuite, 2),
    (IntertwiningSuite, 2),
    (NilpotentRepsSuite, 2),
])
def test_suite_passes(pool, suite_cls, level):
    """Test that every claim of the suite holds at p = 3."""
    claims = suite_cls(pool, p=3, level=level).run()

    assert claims
    failed = [(c.claim, c.detail) for c in claims if not c.passed]
    assert failed == []


def test_double_cosets_cell_count(pool):
    """Test that the Bruhat claim reports N + 1 cells."""
    claims = DoubleCosetSuite(pool, p=3, level=2).run()
    [cells] = [c for c in claims if c.claim.startswith("B\\K/B")]
    assert cells.detail['cells'] == 3


def test_orbit_claims_at_level_two(pool):
    """Test that the orbit suite checks every ordered pair of labels."""
    claims = OrbitSuite(pool, p=3, level=2).run()
    pairs = [c for c in claims if "K X_" in c.claim]
    assert len(pairs) == 16


def test_depth_zero_component_matches_nilpotent_character(pool):
    """Test that exactly one component of delta-ext equals S_1(X_p^-1, theta)."""
    claims = KeyIdentificationSuite(pool, p=3, level=4)._depth_zero_consistency()

    consistency = claims[0]
    assert consistency.passed, consistency.detail
    assert len(consistency.detail['matching']) == 1
    assert consistency.level == 2


class TestNearIdentitySuite:
    """Test cases for the near-identity claims."""

    def test_level_two(self, pool):
        """Test that depth-zero characters restrict to K_1 and every claim holds."""
        claims = NearIdentitySuite(pool, p=3, level=2).run()

        expansions = [c for c in claims if c.claim.startswith("Res to")]
        assert len(expansions) == 4
        assert all(c.claim.startswith("Res to K_1 of pi(") for c in expansions)
        assert all(c.passed for c in claims)

    def test_restriction_level_follows_depth(self, pool, mocker):
        """Test that a depth-one record is reported on K_3."""
        mocker.patch(
            'unitary_branching.suites.near_identity.near_identity_expansion',
            return_value={'chi': 'x', 'chi0': 'x', 'k': 0, 'r': 1,
                          'ledger': fixed_dimension_ledger(3, 1), 'rung': 'dimensions'},
        )
        claims = NearIdentitySuite(pool, p=3, level=2).run()

        assert claims[0].claim.startswith("Res to K_3 of pi(")
        assert claims[0].rung == 'dimensions'
        assert claims[0].passed

    def test_failed_expansion(self, pool, mocker):
        """Test that an expansion error becomes a failed claim."""
        mocker.patch(
            'unitary_branching.suites.near_identity.near_identity_expansion',
            side_effect=NotRealizable("not of minimal depth"),
        )
        claims = NearIdentitySuite(pool, p=3, level=2).run()

        assert not claims[0].passed
        assert claims[0].claim.startswith("Res to K_{2r+1} of pi(")
        assert claims[0].detail['error'] == "NotRealizable: not of minimal depth"

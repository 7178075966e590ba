"""Tests for truncated principal series and their canonical decomposition."""

import pytest

from unitary_branching.algebra.branching import (
    UNIT_PARITY,
    canonical_decomposition,
    find_Gamma,
    fixed_dimension_ledger,
    intertwining,
    key_identification,
    principal_series_truncation,
    tau_nilpotent,
)
from unitary_branching.algebra.chars import delta_extension, depth_one_first
from unitary_branching.algebra.classfun import norm_sq
from unitary_branching.core.errors import DepthTooLow, InvalidParameter, LevelTooLow


class TestPrincipalSeriesTruncation:
    """Test cases for principal_series_truncation."""

    @pytest.mark.parametrize("n,degree", [(1, 4), (2, 12)])
    def test_degree(self, session_3_2, n, degree):
        """Test dim V^{K_n} = (q+1) q^(n-1)."""
        chi = session_3_2.torus.trivial()
        assert principal_series_truncation(session_3_2, chi, n).degree == pytest.approx(degree)

    @pytest.mark.parametrize("n", [0, 3])
    def test_level_out_of_range(self, session_3_2, n):
        """Test that n must lie in [1, N]."""
        with pytest.raises(LevelTooLow):
            principal_series_truncation(session_3_2, session_3_2.torus.trivial(), n)

    def test_strict_mode_refuses_low_level(self, session_3_2):
        """Test that truncating a depth-one character at n = 1 raises in strict mode."""
        chi = depth_one_first(session_3_2.torus)
        with pytest.raises(DepthTooLow):
            principal_series_truncation(session_3_2, chi, 1, strict=True)

    def test_low_level_is_zero(self, session_3_2):
        """Test that V^{K_1} vanishes for a character of depth one."""
        chi = depth_one_first(session_3_2.torus)
        f = principal_series_truncation(session_3_2, chi, 1)
        assert norm_sq(f) == pytest.approx(0, abs=1e-9)


class TestCanonicalDecomposition:
    """Test cases for canonical_decomposition."""

    def test_trivial_character(self, session_3_2):
        """Test trivial + Steinberg + S_1 with degrees 1, 3, 8."""
        cert = canonical_decomposition(session_3_2, session_3_2.torus.trivial())

        assert cert.degrees == [1, 3, 8]
        assert [c.label for c in cert.components][:2] == ['trivial', 'Steinberg']
        assert cert.residual < 1e-6
        assert all(c.multiplicity == 1 for c in cert.components)

    def test_delta_extension(self, session_3_2):
        """Test that a depth-zero character decomposes with degree sum (q+1) q."""
        cert = canonical_decomposition(session_3_2, delta_extension(session_3_2.torus))

        assert sum(cert.degrees) == 12
        assert len(set(cert.degrees)) == len(cert.degrees)
        assert 'multiplicity-free' in cert.tags

    def test_record(self, session_3_2):
        """Test the record layout of a certificate."""
        record = canonical_decomposition(session_3_2, session_3_2.torus.trivial()).to_record()

        assert record['kind'] == 'decomposition'
        assert record['p'] == 3
        assert record['N'] == 2
        assert record['depth'] == 0
        assert [c['degree'] for c in record['components']] == [1, 3, 8]
        assert 'values' not in record['components'][0]

    def test_record_with_values(self, session_3_2):
        """Test that character values are listed per class on request."""
        record = canonical_decomposition(session_3_2, session_3_2.torus.trivial()).to_record(
            include_values=True
        )
        assert len(record['components'][0]['values']) == session_3_2.classes().count


class TestGamma:
    """Test cases for find_Gamma."""

    def test_depth_zero_has_no_gamma(self, session_3_2):
        """Test that the trivial character raises DepthTooLow."""
        with pytest.raises(DepthTooLow):
            find_Gamma(session_3_2, session_3_2.torus.trivial())

    def test_depth_one(self, session_3_2):
        """Test that a minimal depth-one character is realized at r = 1."""
        gamma = find_Gamma(session_3_2, depth_one_first(session_3_2.torus))
        assert gamma.r == 1
        assert gamma.hits >= 1


class TestIntertwining:
    """Test cases for the intertwining count of V^{K_d}."""

    def test_trivial_character(self, session_3_2):
        """Test that <V^{K_2}, V^{K_2}> = 3 for the trivial character."""
        report = intertwining(session_3_2, session_3_2.torus.trivial(), 2)

        assert report['split_trivial']
        assert report['predicted'] == 3
        assert report['mackey'] == 3
        assert report['inner_product'] == pytest.approx(3)

    def test_depth_one_character(self, session_3_2):
        """Test that inner product, Mackey count and prediction agree."""
        report = intertwining(session_3_2, depth_one_first(session_3_2.torus), 2)
        assert report['inner_product'] == pytest.approx(report['mackey'])
        assert report['mackey'] == report['predicted']

    def test_level_at_or_below_depth(self, session_3_2):
        """Test that a depth-one character has no intertwining count at d = 1."""
        chi = depth_one_first(session_3_2.torus)
        assert norm_sq(principal_series_truncation(session_3_2, chi, 1)) == pytest.approx(0)
        with pytest.raises(DepthTooLow):
            intertwining(session_3_2, chi, 1)

    @pytest.mark.parametrize("d", [0, 3])
    def test_level_out_of_range(self, session_3_2, d):
        """Test that d must lie in [1, N]."""
        with pytest.raises(LevelTooLow):
            intertwining(session_3_2, session_3_2.torus.trivial(), d)


class TestApplications:
    """Test cases for the near-identity ledger and the key identification."""

    def test_ledger_at_depth_one(self):
        """Test the fixed-dimension ledger at q = 3, r = 1."""
        assert fixed_dimension_ledger(3, 1) == {
            'dim_head': 36,
            'tau_unit_fixed': 24,
            'tau_uniformizer_fixed': 8,
            'constant': 4,
        }

    @pytest.mark.parametrize("r", [0, 1, 2])
    def test_ledger_constant_is_q_plus_one(self, r):
        """Test that the constant term is always q + 1."""
        assert fixed_dimension_ledger(5, r)['constant'] == 6

    def test_tau_rejects_unknown_parity(self, session_3_2):
        """Test that a parity other than unit or uniformizer is rejected."""
        theta = session_3_2.torus.restrict_to_center(session_3_2.torus.trivial())
        with pytest.raises(InvalidParameter):
            tau_nilpotent(session_3_2, theta, 'even', 1)

    def test_tau_unit_empty_below_two(self, session_3_2):
        """Test that tau_unit up to d = 1 has no summands."""
        theta = session_3_2.torus.restrict_to_center(session_3_2.torus.trivial())
        tau = tau_nilpotent(session_3_2, theta, UNIT_PARITY, 1)
        assert norm_sq(tau) == pytest.approx(0, abs=1e-9)

    def test_key_identification_needs_d_above_2r(self, session_3_2):
        """Test that d <= 2r is rejected."""
        with pytest.raises(InvalidParameter):
            key_identification(session_3_2, depth_one_first(session_3_2.torus), 2)

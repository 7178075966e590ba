"""Tests for Session and SessionPool."""

import pytest

from unitary_branching.algebra.ring import ring_make
from unitary_branching.core.errors import BudgetExceeded
from unitary_branching.core.session import Session, SessionPool
from unitary_branching.storage.cache import GroupCache


class TestSession:
    """Test cases for Session."""

    def test_budget_exceeded(self):
        """Test that K refuses to enumerate above the budget."""
        session = Session(ring_make(3, None, 2), budget=1000)
        assert not session.fits_budget()
        with pytest.raises(BudgetExceeded):
            session.K

    def test_subgroup_by_closure_when_over_budget(self):
        """Test that named subgroups are still built by closure above the budget."""
        session = Session(ring_make(3, None, 2), budget=1000)
        assert session.subgroup('Center').order == 12

    def test_subgroups_are_memoized(self, session_3_1):
        """Test that a named subgroup is built once."""
        assert session_3_1.subgroup('Borel') is session_3_1.subgroup('Borel')

    def test_summary(self, session_3_1):
        """Test the enumeration summary at p = 3, N = 1."""
        summary = session_3_1.summary()

        assert summary['kind'] == 'summary'
        assert summary['order'] == 96
        assert summary['epsilon'] == 2
        assert summary['quotient_orders'] == {'K/K_1': 96}
        assert summary['subgroup_orders']['Borel'] == 24
        assert summary['level_one_formula_matches'] == 'q(q-1)(q+1)^2'
        assert summary['class_count'] == session_3_1.classes().count

    def test_cache_round_trip(self, temp_dir):
        """Test that a second session reads K and its classes from the cache."""
        cache = GroupCache(temp_dir / "cache")
        first = Session(ring_make(3, None, 1), cache=cache)
        count = first.classes().count

        second = Session(ring_make(3, None, 1), cache=cache)
        assert second.K.order == 96
        assert second.K.classes_computed is not None
        assert second.classes().count == count
        assert second.K.same_set(first.K)

    def test_repr(self, session_3_1):
        """Test the session repr."""
        assert repr(session_3_1) == "Session(p=3, epsilon=2, N=1)"


class TestSessionPool:
    """Test cases for SessionPool."""

    def test_same_key_same_session(self):
        """Test that equal ring parameters share a session."""
        pool = SessionPool()
        assert pool.get(3, None, 1) is pool.get(3, 2, 1)
        assert len(pool) == 1

    def test_distinct_levels(self):
        """Test that different levels get different sessions."""
        pool = SessionPool()
        assert pool.get(3, None, 1) is not pool.get(3, None, 2)
        assert len(pool) == 2

    def test_for_ctx(self):
        """Test lookup by ring context."""
        pool = SessionPool()
        ctx = ring_make(5, None, 1)
        assert pool.for_ctx(ctx) is pool.get(5, None, 1)

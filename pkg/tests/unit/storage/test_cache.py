"""Tests for GroupCache."""

import numpy as np
import pytest

from unitary_branching.algebra.group import enumerate_K
from unitary_branching.algebra.ring import ring_make
from unitary_branching.core.errors import CacheError
from unitary_branching.storage.cache import GroupCache


@pytest.fixture
def cache(temp_dir):
    """Empty cache under the test directory."""
    return GroupCache(temp_dir / "cache")


@pytest.fixture
def level_one_K(ctx_3_1):
    """Freshly enumerated K/K_1 at p = 3."""
    return enumerate_K(ctx_3_1)


class TestGroupCache:
    """Test cases for GroupCache."""

    def test_miss_returns_none(self, cache, ctx_3_1):
        """Test that an absent table is a miss."""
        assert cache.load(ctx_3_1, 'K') is None

    def test_save_and_load(self, cache, ctx_3_1, level_one_K):
        """Test that a saved table loads back with the same elements."""
        path = cache.save(level_one_K)
        assert path.name == 'K.txt'
        assert path.parent.name == 'p3-e2-N1'

        loaded = cache.load(ctx_3_1, 'K')
        assert loaded.order == 96
        assert np.array_equal(loaded.elements, level_one_K.elements)

    def test_classes_round_trip(self, cache, ctx_3_1, level_one_K):
        """Test that class ids are written and restored."""
        classes = level_one_K.conjugacy_classes()
        cache.save(level_one_K)

        loaded = cache.load(ctx_3_1, 'K')
        assert loaded.classes_computed is not None
        assert np.array_equal(loaded.classes_computed.class_of, classes.class_of)
        assert np.array_equal(loaded.classes_computed.sizes, classes.sizes)

    def test_header_mismatch(self, cache, level_one_K):
        """Test that a file from another ring raises CacheError."""
        path = cache.save(level_one_K)
        other = ring_make(3, None, 2)
        target = cache.path_for(other, 'K')
        target.parent.mkdir(parents=True)
        target.write_text(path.read_text())

        with pytest.raises(CacheError):
            cache.load(other, 'K')

    def test_truncated_file(self, cache, ctx_3_1, level_one_K):
        """Test that a row count differing from the header raises CacheError."""
        path = cache.save(level_one_K)
        lines = path.read_text().splitlines()
        path.write_text("\n".join(lines[:-1]) + "\n")

        with pytest.raises(CacheError):
            cache.load(ctx_3_1, 'K')

    def test_missing_header(self, cache, ctx_3_1):
        """Test that a file without a header raises CacheError."""
        path = cache.path_for(ctx_3_1, 'K')
        path.parent.mkdir(parents=True)
        path.write_text("1 0 0 0 0 0 1 0\n")

        with pytest.raises(CacheError):
            cache.load(ctx_3_1, 'K')

    def test_entries_and_clear(self, cache, level_one_K):
        """Test listing and clearing cached rings."""
        assert cache.entries() == []
        cache.save(level_one_K)

        [entry] = cache.entries()
        assert entry['label'] == 'K'
        assert entry['order'] == '96'
        assert entry['N'] == '1'

        assert cache.clear() == 1
        assert cache.entries() == []

    def test_unsafe_labels(self, cache, ctx_3_1):
        """Test that labels are reduced to safe file names."""
        assert cache.path_for(ctx_3_1, 'J(3)').name == 'J_3.txt'

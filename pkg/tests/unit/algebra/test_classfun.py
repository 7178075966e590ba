"""Tests for class functions, induction and decomposition."""

import numpy as np
import pytest

from unitary_branching.algebra.classfun import (
    ClassFunction,
    decompose,
    fixed_dimension,
    harvest_irreducibles,
    induce,
    inner_product,
    is_irreducible,
    mackey_intertwining_count,
    norm_sq,
    rep_depth,
    restrict,
)
from unitary_branching.core.errors import BasisNotOrthonormal, NotSubgroup


@pytest.fixture(scope="module")
def borel_induced(session_3_1):
    """Ind from B to K/K_1 of the trivial character."""
    B = session_3_1.subgroup('Borel')
    return induce(B, np.ones(B.order), session_3_1.K, "Ind(1_B)")


class TestInduction:
    """Test cases for induce and Frobenius reciprocity."""

    def test_degree_is_index(self, borel_induced):
        """Test that Ind(1_B) has degree q + 1."""
        assert borel_induced.degree == pytest.approx(4)

    def test_self_inner_product(self, borel_induced):
        """Test <Ind 1_B, Ind 1_B> = 2."""
        assert norm_sq(borel_induced) == pytest.approx(2)

    def test_frobenius_reciprocity(self, session_3_1, borel_induced):
        """Test <1_K, Ind 1_B> = <1_B, 1_B> = 1."""
        one = ClassFunction.trivial(session_3_1.K)
        assert inner_product(one, borel_induced) == pytest.approx(1)

    def test_mackey_count_matches(self, session_3_1):
        """Test that the Mackey count agrees with the inner product."""
        B = session_3_1.subgroup('Borel')
        assert mackey_intertwining_count(B, np.ones(B.order), session_3_1.K) == 2

    def test_fixed_vectors(self, session_3_1, borel_induced):
        """Test that B-fixed vectors of Ind 1_B count the B-orbits on K/B."""
        B = session_3_1.subgroup('Borel')
        assert fixed_dimension(borel_induced, B) == pytest.approx(2)

    def test_induce_requires_subgroup(self, session_3_1):
        """Test that inducing from a non-subgroup raises NotSubgroup."""
        B = session_3_1.subgroup('Borel')
        with pytest.raises(NotSubgroup):
            induce(session_3_1.K, np.ones(96), B)


class TestDecomposition:
    """Test cases for decompose and irreducibility."""

    def test_steinberg_is_irreducible(self, session_3_1, borel_induced):
        """Test that Ind 1_B - 1 is irreducible of degree q."""
        steinberg = borel_induced - ClassFunction.trivial(session_3_1.K)
        assert is_irreducible(steinberg)
        assert steinberg.degree == pytest.approx(3)

    def test_decompose_into_trivial_and_steinberg(self, session_3_1, borel_induced):
        """Test multiplicities one and zero residual."""
        one = ClassFunction.trivial(session_3_1.K)
        result = decompose(borel_induced, [one, borel_induced - one])
        assert result.multiplicities == pytest.approx([1, 1])
        assert result.residual < 1e-9
        assert result.near_integral

    def test_rejects_non_orthonormal_basis(self, borel_induced):
        """Test that a basis element of norm 2 is rejected."""
        with pytest.raises(BasisNotOrthonormal):
            decompose(borel_induced, [borel_induced])

    def test_from_element_values_checks_class_constancy(self, session_3_1):
        """Test that a function not constant on classes is refused."""
        with pytest.raises(ValueError):
            ClassFunction.from_element_values(session_3_1.K, np.arange(96))

    def test_restriction_of_trivial(self, session_3_1):
        """Test that the trivial character restricts to the trivial character."""
        B = session_3_1.subgroup('Borel')
        res = restrict(ClassFunction.trivial(session_3_1.K), B)
        assert np.allclose(res.values, 1)

    def test_depth_of_trivial(self, session_3_2):
        """Test that the trivial character has depth zero."""
        assert rep_depth(ClassFunction.trivial(session_3_2.K)) == 0


class TestHarvest:
    """Test cases for harvest_irreducibles."""

    def test_harvest_level_one(self, session_3_1):
        """Test that the irreducibles of K/K_1 are found and complete."""
        harvest = harvest_irreducibles(session_3_1.K)

        assert harvest.complete
        assert len(harvest.irreducibles) == session_3_1.classes().count
        assert harvest.column_residual < 1e-6
        degrees = [chi.degree for chi in harvest.irreducibles]
        assert sum(d * d for d in degrees) == pytest.approx(96)

    def test_harvest_is_orthonormal(self, session_3_1):
        """Test that harvested characters are pairwise orthogonal."""
        irreps = harvest_irreducibles(session_3_1.K).irreducibles
        for i, a in enumerate(irreps):
            for j, b in enumerate(irreps):
                assert abs(inner_product(a, b) - (1 if i == j else 0)) < 1e-6

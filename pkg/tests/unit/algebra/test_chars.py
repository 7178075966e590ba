"""Tests for torus characters, depths, selectors and the characters Psi_X."""

from math import prod

import numpy as np
import pytest

from unitary_branching.algebra.branching import nilpotent_zeta
from unitary_branching.algebra.chars import (
    TorusData,
    central_reduction,
    central_representative,
    check_homomorphism,
    delta,
    delta_extension,
    depth_one_first,
    depth_profile,
    det_character,
    extend_Psi_X_zeta,
    minimal_depth_factorization,
    psi_X_char,
    select_characters,
)
from unitary_branching.algebra.group import product_set
from unitary_branching.algebra.liealg import (
    LieElem,
    NilpotentLabel,
    centralizer_TX,
    nilpotent_X,
    x_tilde,
)
from unitary_branching.algebra.ring import ring_make
from unitary_branching.core.errors import IncompatibleOnIntersection, InvalidParameter
from unitary_branching.core.session import SessionPool


@pytest.fixture(scope="module")
def torus_3_1():
    """T_0/T_1 at p = 3."""
    return TorusData(ring_make(3, None, 1))


@pytest.fixture(scope="module")
def torus_3_2():
    """T_0/T_2 at p = 3."""
    return TorusData(ring_make(3, None, 2))


@pytest.fixture(scope="module")
def session_3_3():
    """K/K_3 at p = 3 under a small budget, so subgroups are built by closure."""
    return SessionPool(budget=10_000).get(3, None, 3)


class TestTorusData:
    """Test cases for the torus and its center."""

    def test_character_count(self, torus_3_2):
        """Test that T_0/T_2 has 72 characters."""
        assert prod(torus_3_2.structure.orders) == 72
        assert len(list(torus_3_2.characters())) == 72

    def test_center_order(self, torus_3_1):
        """Test |Z| = q + 1."""
        assert torus_3_1.center.order == 4

    def test_characters_are_distinct(self, torus_3_1):
        """Test that distinct exponent vectors give distinct value vectors."""
        values = {tuple(np.round(chi.values(), 6)) for chi in torus_3_1.characters()}
        assert len(values) == 8

    def test_character_multiplication(self, torus_3_2):
        """Test that (chi1 chi2) values are the pointwise product."""
        chars = list(torus_3_2.characters())
        chi1, chi2 = chars[5], chars[17]
        assert np.allclose((chi1 * chi2).values(), chi1.values() * chi2.values())

    def test_restrict_to_center_of_trivial(self, torus_3_2):
        """Test that the trivial character restricts to the trivial central character."""
        assert torus_3_2.restrict_to_center(torus_3_2.trivial()).is_trivial()


class TestDepth:
    """Test cases for depth profiles."""

    def test_trivial_has_depth_zero(self, torus_3_2):
        """Test the depth profile of the trivial character."""
        profile = depth_profile(torus_3_2.trivial(), torus_3_2)
        assert profile.depth == 0
        assert profile.trivial

    def test_depths_bounded_by_level(self, torus_3_2):
        """Test that every character of T_0/T_2 has depth 0 or 1."""
        depths = {depth_profile(chi, torus_3_2).depth for chi in torus_3_2.characters()}
        assert depths == {0, 1}

    def test_true_depth_never_exceeds_depth(self, torus_3_2):
        """Test that the S_m chain sees no more than the T_m chain."""
        for chi in torus_3_2.characters():
            profile = depth_profile(chi, torus_3_2)
            assert profile.true_depth <= profile.depth

    def test_minimal_depth_factorization(self, torus_3_2):
        """Test chi = (phi o det) * chi_min with chi_min minimal."""
        for chi in list(torus_3_2.characters())[::7]:
            phi, chi_min = minimal_depth_factorization(chi, torus_3_2)
            recombined = chi_min.values() * torus_3_2.det_values(phi)
            assert np.allclose(recombined, chi.values())
            assert depth_profile(chi_min, torus_3_2).minimal


class TestCentralCharacters:
    """Test cases for delta and the central representative."""

    def test_delta_has_order_two(self, torus_3_1):
        """Test that delta is the quadratic character of Z."""
        assert delta(torus_3_1).order() == 2

    def test_representative_when_delta_is_a_square(self, torus_3_1):
        """Test that at q = 3 the representative has order 4."""
        rep = central_representative(torus_3_1)
        assert rep.order() == 4
        assert rep.label == "eta"

    def test_representative_is_delta_when_q_is_1_mod_4(self):
        """Test that at q = 5 delta itself is a non-square."""
        torus = TorusData(ring_make(5, None, 1))
        assert central_representative(torus).order() == 2

    def test_central_reduction(self, torus_3_2):
        """Test that reduced characters have trivial or representative central character."""
        rep = central_representative(torus_3_2)
        for chi in list(torus_3_2.characters())[::5]:
            reduction = central_reduction(chi, torus_3_2)
            theta = torus_3_2.restrict_to_center(reduction.chi0)
            assert theta.is_trivial() or theta == rep
            assert reduction.k == (0 if theta.is_trivial() else 1)

    def test_det_character_is_a_homomorphism(self, session_3_1):
        """Test that phi o det is multiplicative on K/K_1."""
        torus = session_3_1.torus
        phi = list(torus.center_characters())[1]
        chi = det_character(phi, session_3_1.K, torus)
        assert check_homomorphism(chi) < 1e-9


class TestSelectors:
    """Test cases for select_characters."""

    def test_trivial(self, torus_3_2):
        """Test the trivial selector."""
        [chi] = select_characters(torus_3_2, 'trivial')
        assert chi.is_trivial()

    def test_delta_ext(self, torus_3_2):
        """Test that delta-ext is depth zero with central character delta."""
        [chi] = select_characters(torus_3_2, 'delta-ext')
        assert depth_profile(chi, torus_3_2).depth == 0
        assert torus_3_2.restrict_to_center(chi) == delta(torus_3_2)
        assert chi == delta_extension(torus_3_2)

    def test_depth1_first(self, torus_3_2):
        """Test that depth1-first is a minimal character of depth one."""
        chi = depth_one_first(torus_3_2)
        profile = depth_profile(chi, torus_3_2)
        assert profile.depth == 1
        assert profile.minimal
        assert chi.label == "depth1-first"

    def test_all(self, torus_3_2):
        """Test that 'all' lists every character."""
        assert len(select_characters(torus_3_2, 'all')) == 72

    def test_exponent_vector(self, torus_3_2):
        """Test that a zero exponent vector is the trivial character."""
        zeros = ",".join("0" for _ in torus_3_2.structure.orders)
        [chi] = select_characters(torus_3_2, zeros)
        assert chi.is_trivial()

    def test_wrong_exponent_count(self, torus_3_2):
        """Test that a wrong number of exponents is rejected."""
        zeros = ",".join("0" for _ in range(torus_3_2.structure.rank + 1))
        with pytest.raises(InvalidParameter):
            select_characters(torus_3_2, zeros)

    def test_unknown_selector(self, torus_3_2):
        """Test that an unknown name is rejected."""
        with pytest.raises(InvalidParameter):
            select_characters(torus_3_2, 'steinberg')


class TestPsiX:
    """Test cases for Psi_X and its extension across T(X)."""

    def _nilpotent_data(self, session, theta):
        X = nilpotent_X(session.ctx, NilpotentLabel(1, -1))
        T = centralizer_TX(X)
        J = session.subgroup('J', d=1)
        zeta = nilpotent_zeta(session, theta, T)
        return X, T, J, zeta, product_set(T, J, "T(X)J(1)")

    def test_depth_of_psi(self, session_3_3):
        """Test that Psi_X for val(u) = -1 is nontrivial on K_1 and trivial on K_2."""
        X = nilpotent_X(session_3_3.ctx, NilpotentLabel(1, -1))
        on_K1 = psi_X_char(X, session_3_3.subgroup('Filtration', m=1))
        on_K2 = psi_X_char(X, session_3_3.subgroup('Filtration', m=2))

        assert np.abs(on_K1.values - 1).max() > 0.5
        assert np.allclose(on_K2.values, 1)

    def test_perturbation_invariance(self, session_3_3):
        """Test that Psi_X on J_2 ignores z, v of valuation above -1 and u + p^-1."""
        ctx = session_3_3.ctx
        J = session_3_3.subgroup('J', d=2)
        X = nilpotent_X(ctx, NilpotentLabel(1, -2))
        integral = LieElem.from_entries(ctx, ctx.omega, ctx.zero, ctx.omega, ctx.omega)
        perturbed = X + integral + x_tilde(ctx, 1, 0, shift=1)
        assert perturbed.is_in_k()

        assert np.allclose(psi_X_char(perturbed, J).values, psi_X_char(X, J).values)

    def test_perturbation_in_v_is_seen(self, session_3_3):
        """Test that v of valuation -1 changes Psi_X on J_2."""
        ctx = session_3_3.ctx
        J = session_3_3.subgroup('J', d=2)
        X = nilpotent_X(ctx, NilpotentLabel(1, -2))
        moved = X + x_tilde(ctx, 0, 1, shift=1)

        assert not np.allclose(psi_X_char(moved, J).values, psi_X_char(X, J).values)

    def test_extension_agrees_with_both_inputs(self, session_3_2):
        """Test that Psi_{X,theta} restricts to zeta on T(X) and to Psi_X on J_1."""
        theta = delta(session_3_2.torus)
        X, T, J, zeta, product = self._nilpotent_data(session_3_2, theta)
        psi = psi_X_char(X, J)

        ext = extend_Psi_X_zeta(psi, zeta, product)

        assert np.allclose(ext(T.elements), zeta.values)
        assert np.allclose(ext(J.elements), psi.values)
        assert check_homomorphism(ext) < 1e-9

    def test_mismatched_zeta(self, session_3_2):
        """Test that theta nontrivial on Z meet K_1 cannot be glued to Psi_X."""
        torus = session_3_2.torus
        theta = next(t for t in torus.center_characters() if t.order() % 3 == 0)
        X, T, J, zeta, product = self._nilpotent_data(session_3_2, theta)

        with pytest.raises(IncompatibleOnIntersection):
            extend_Psi_X_zeta(psi_X_char(X, J), zeta, product)

"""Tests for truncated ring arithmetic and additive characters."""

import cmath

import numpy as np
import pytest

from unitary_branching.algebra.ring import (
    ShiftedElem,
    psi_E,
    psi_prime,
    qinv,
    qmul,
    ring_make,
    unit_norms,
)
from unitary_branching.core.errors import (
    EpsilonIsSquare,
    EvenResidualChar,
    InvalidParameter,
    NonUnit,
    NotRational,
    PrecisionExceeded,
)


class TestRingMake:
    """Test cases for ring_make."""

    def test_rejects_even_residual_characteristic(self):
        """Test that p = 2 raises EvenResidualChar."""
        with pytest.raises(EvenResidualChar):
            ring_make(2)

    @pytest.mark.parametrize("p", [1, 9, 15])
    def test_rejects_non_primes(self, p):
        """Test that p must be prime."""
        with pytest.raises(InvalidParameter):
            ring_make(p)

    @pytest.mark.parametrize("N", [0, 9])
    def test_rejects_level_out_of_range(self, N):
        """Test that N must lie in [1, 8]."""
        with pytest.raises(InvalidParameter):
            ring_make(3, None, N)

    @pytest.mark.parametrize("p,expected", [(3, 2), (5, 2), (7, 3), (11, 2)])
    def test_default_epsilon_is_least_non_residue(self, p, expected):
        """Test that epsilon defaults to the least positive non-square."""
        assert ring_make(p).epsilon == expected

    def test_square_epsilon_rejected(self):
        """Test that a square epsilon raises EpsilonIsSquare."""
        with pytest.raises(EpsilonIsSquare):
            ring_make(5, epsilon=4)

    def test_non_unit_epsilon_rejected(self):
        """Test that epsilon divisible by p is rejected."""
        with pytest.raises(InvalidParameter):
            ring_make(3, epsilon=6)

    def test_derived_quantities(self, ctx_3_2):
        """Test modulus, q and the unit count of O_F/p^N."""
        assert ctx_3_2.q == 3
        assert ctx_3_2.modulus == 9
        assert ctx_3_2.phi == 6

    def test_at_level_keeps_epsilon(self):
        """Test that changing level keeps the same quadratic extension."""
        ctx = ring_make(7, epsilon=5, N=1)
        assert ctx.at_level(3).epsilon == 5
        assert ctx.at_level(3).N == 3


class TestQuadRingElem:
    """Test cases for O_E/p^N elements."""

    def test_omega_squares_to_epsilon(self, ctx_3_2):
        """Test that omega^2 = epsilon."""
        assert ctx_3_2.omega * ctx_3_2.omega == ctx_3_2.elem(ctx_3_2.eps)

    def test_norm_is_rational(self, ctx_3_2):
        """Test that x conj(x) has no omega component."""
        x = ctx_3_2.elem(4, 7)
        assert x.norm().is_rational()
        assert x.norm().a0 == (16 - 2 * 49) % 9

    def test_inverse(self, ctx_3_2):
        """Test that a unit times its inverse is one."""
        x = ctx_3_2.elem(2, 5)
        assert x * x.inv() == ctx_3_2.one

    def test_inverse_of_non_unit_raises(self, ctx_3_2):
        """Test that inverting p raises NonUnit."""
        with pytest.raises(NonUnit):
            ctx_3_2.elem(3, 6).inv()

    def test_valuation(self, ctx_3_2):
        """Test valuations, with val(0) = N."""
        assert ctx_3_2.elem(3, 0).val() == 1
        assert ctx_3_2.elem(1, 3).val() == 0
        assert ctx_3_2.zero.val() == 2

    def test_negative_power(self, ctx_3_2):
        """Test that x^-2 * x^2 = 1."""
        x = ctx_3_2.elem(1, 1)
        assert x ** -2 * x ** 2 == ctx_3_2.one


class TestVectorizedHelpers:
    """Test cases for the array helpers."""

    def test_qmul_matches_scalar_product(self, ctx_3_2):
        """Test qmul against QuadRingElem multiplication."""
        z0, z1 = qmul(np.array([4]), np.array([7]), np.array([2]), np.array([5]), ctx_3_2)
        expected = ctx_3_2.elem(4, 7) * ctx_3_2.elem(2, 5)
        assert (int(z0[0]), int(z1[0])) == (expected.a0, expected.a1)

    def test_qinv_rejects_non_units(self, ctx_3_2):
        """Test that qinv refuses elements of positive valuation."""
        with pytest.raises(NonUnit):
            qinv(np.array([3, 1]), np.array([0, 0]), ctx_3_2)

    def test_every_residue_unit_is_a_norm(self, ctx_3_1):
        """Test that the norm map onto the units of F_q is surjective."""
        assert sorted(unit_norms(ctx_3_1).tolist()) == [1, 2]

    def test_unit_norms_at_level_two(self, ctx_3_2):
        """Test that every unit mod 9 is a norm."""
        assert len(unit_norms(ctx_3_2)) == ctx_3_2.phi


class TestAdditiveCharacters:
    """Test cases for psi' and psi."""

    def test_trivial_on_integers_at_shift_zero(self, ctx_3_2):
        """Test that psi' has conductor p: psi'(a) = 1 for a in O_F."""
        x = ShiftedElem(ctx_3_2.elem(3), 0)
        assert psi_prime(x) == pytest.approx(1)

    def test_nontrivial_on_units(self, ctx_3_2):
        """Test that psi'(1) is a primitive p-th root of unity."""
        value = psi_prime(ShiftedElem(ctx_3_2.one, 0))
        assert value == pytest.approx(cmath.exp(2j * cmath.pi / 3))

    def test_value_at_p_inverse(self, ctx_3_2):
        """Test that psi'(1/p) = exp(2 pi i / p^2)."""
        value = psi_prime(ShiftedElem(ctx_3_2.one, 1))
        assert value == pytest.approx(cmath.exp(2j * cmath.pi / 9))

    def test_rejects_irrational_argument(self, ctx_3_2):
        """Test that psi' refuses an omega component."""
        with pytest.raises(NotRational):
            psi_prime(ShiftedElem(ctx_3_2.omega, 0))

    def test_precision_exceeded(self, ctx_3_2):
        """Test that a shift of N leaves too little precision."""
        with pytest.raises(PrecisionExceeded):
            psi_prime(ShiftedElem(ctx_3_2.one, 2))

    def test_psi_E_ignores_omega_part(self, ctx_3_2):
        """Test that psi(a + b omega) = psi'(a)."""
        x = ShiftedElem(ctx_3_2.elem(1, 2), 1)
        assert psi_E(x) == pytest.approx(psi_prime(ShiftedElem(ctx_3_2.one, 1)))

    def test_shifted_equality_across_shifts(self, ctx_3_2):
        """Test that 3 * p^-1 equals 1 at shift 0."""
        assert ShiftedElem(ctx_3_2.elem(3), 1) == ShiftedElem(ctx_3_2.one, 0)

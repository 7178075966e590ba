"""Truncated arithmetic in O_F/p^N and its unramified quadratic extension.

Scalars are exposed through small immutable value classes (``BaseElem``,
``QuadRingElem``, ``ShiftedElem``). Bulk work in the group and character
modules goes through the vectorized helpers at the bottom of this module,
which operate on int64 numpy arrays of residue components.
"""

import cmath
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from sympy import isprime, legendre_symbol

from unitary_branching.core.errors import (
    EpsilonIsSquare,
    EvenResidualChar,
    InvalidParameter,
    NonUnit,
    NotRational,
    PrecisionExceeded,
)

MAX_LEVEL = 8


@dataclass(frozen=True)
class RingCtx:
    """Field data: odd prime p, non-square unit epsilon, truncation level N.

    ``epsilon`` keeps the integer it was created with so that contexts at
    different levels describe the same quadratic extension.
    """

    p: int
    epsilon: int
    N: int

    @property
    def q(self) -> int:
        return self.p

    @property
    def modulus(self) -> int:
        return self.p ** self.N

    @property
    def eps(self) -> int:
        """Epsilon as a canonical residue mod p^N."""
        return self.epsilon % self.modulus

    @property
    def phi(self) -> int:
        """Order of the unit group of O_F/p^N."""
        return self.p ** (self.N - 1) * (self.p - 1)

    def at_level(self, N: int) -> 'RingCtx':
        return ring_make(self.p, self.epsilon, N)

    def base(self, value: int) -> 'BaseElem':
        return BaseElem(value % self.modulus, self)

    def elem(self, a0: int, a1: int = 0) -> 'QuadRingElem':
        return QuadRingElem(a0 % self.modulus, a1 % self.modulus, self)

    @property
    def one(self) -> 'QuadRingElem':
        return self.elem(1, 0)

    @property
    def zero(self) -> 'QuadRingElem':
        return self.elem(0, 0)

    @property
    def omega(self) -> 'QuadRingElem':
        return self.elem(0, 1)


def ring_make(p: int, epsilon: Optional[int] = None, N: int = 1) -> RingCtx:
    """
    Build a validated ring context.

    Args:
        p: Odd prime (the residue field has q = p elements)
        epsilon: Unit that is a non-square mod p; defaults to the least
            positive non-residue
        N: Truncation level, 1 <= N <= 8

    Returns:
        RingCtx

    Raises:
        EvenResidualChar: p = 2
        EpsilonIsSquare: epsilon is a square mod p
        InvalidParameter: p not prime, epsilon not a unit, N out of range
    """
    if p == 2:
        raise EvenResidualChar("residual characteristic 2 is not supported")
    if p < 2 or not isprime(p):
        raise InvalidParameter(f"p must be an odd prime, got {p}")
    if not 1 <= N <= MAX_LEVEL:
        raise InvalidParameter(f"N must lie in [1, {MAX_LEVEL}], got {N}")

    if epsilon is None:
        epsilon = next(e for e in range(2, p) if legendre_symbol(e, p) == -1)
    if epsilon % p == 0:
        raise InvalidParameter(f"epsilon must be a unit mod {p}, got {epsilon}")
    if legendre_symbol(epsilon % p, p) == 1:
        raise EpsilonIsSquare(f"epsilon = {epsilon} is a square mod {p}")

    return RingCtx(p=p, epsilon=int(epsilon), N=N)


def _base_val(value: int, ctx: RingCtx) -> int:
    if value % ctx.modulus == 0:
        return ctx.N
    k = 0
    while value % ctx.p == 0:
        value //= ctx.p
        k += 1
    return k


@dataclass(frozen=True)
class BaseElem:
    """Residue of O_F modulo p^N, canonical in [0, p^N)."""

    value: int
    ctx: RingCtx

    def __add__(self, other: 'BaseElem') -> 'BaseElem':
        return self.ctx.base(self.value + other.value)

    def __sub__(self, other: 'BaseElem') -> 'BaseElem':
        return self.ctx.base(self.value - other.value)

    def __mul__(self, other: 'BaseElem') -> 'BaseElem':
        return self.ctx.base(self.value * other.value)

    def __neg__(self) -> 'BaseElem':
        return self.ctx.base(-self.value)

    def val(self) -> int:
        return _base_val(self.value, self.ctx)

    def inv(self) -> 'BaseElem':
        if self.value % self.ctx.p == 0:
            raise NonUnit(f"{self.value} is not a unit mod {self.ctx.p}^{self.ctx.N}")
        return self.ctx.base(pow(self.value, -1, self.ctx.modulus))


@dataclass(frozen=True)
class QuadRingElem:
    """Element a0 + a1*omega of O_E/p^N, with omega^2 = epsilon."""

    a0: int
    a1: int
    ctx: RingCtx

    def __repr__(self) -> str:
        return f"QuadRingElem({self.a0} + {self.a1}w mod {self.ctx.p}^{self.ctx.N})"

    @property
    def components(self) -> Tuple[BaseElem, BaseElem]:
        return self.ctx.base(self.a0), self.ctx.base(self.a1)

    def __add__(self, other: 'QuadRingElem') -> 'QuadRingElem':
        return self.ctx.elem(self.a0 + other.a0, self.a1 + other.a1)

    def __sub__(self, other: 'QuadRingElem') -> 'QuadRingElem':
        return self.ctx.elem(self.a0 - other.a0, self.a1 - other.a1)

    def __neg__(self) -> 'QuadRingElem':
        return self.ctx.elem(-self.a0, -self.a1)

    def __mul__(self, other) -> 'QuadRingElem':
        if isinstance(other, int):
            return self.ctx.elem(self.a0 * other, self.a1 * other)
        eps = self.ctx.eps
        return self.ctx.elem(
            self.a0 * other.a0 + eps * self.a1 * other.a1,
            self.a0 * other.a1 + self.a1 * other.a0,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'QuadRingElem':
        if n < 0:
            return self.inv() ** (-n)
        result, base = self.ctx.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> 'QuadRingElem':
        return self.ctx.elem(self.a0, -self.a1)

    def norm(self) -> 'QuadRingElem':
        return self * self.conj()

    def trace(self) -> 'QuadRingElem':
        return self + self.conj()

    def val(self) -> int:
        """Largest k <= N with p^k dividing both components; val(0) = N."""
        return min(_base_val(self.a0, self.ctx), _base_val(self.a1, self.ctx))

    def is_unit(self) -> bool:
        return self.val() == 0

    def inv(self) -> 'QuadRingElem':
        if not self.is_unit():
            raise NonUnit(f"{self!r} has positive valuation")
        n = self.norm().a0
        return self.conj() * pow(n, -1, self.ctx.modulus)

    def is_rational(self) -> bool:
        return self.a1 == 0


@dataclass(frozen=True)
class ShiftedElem:
    """The value p^(-shift) * body, with body known modulo p^N."""

    body: QuadRingElem
    shift: int = 0

    @property
    def ctx(self) -> RingCtx:
        return self.body.ctx

    def _aligned(self, shift: int) -> QuadRingElem:
        return self.body * (self.ctx.p ** (shift - self.shift))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ShiftedElem):
            return NotImplemented
        top = max(self.shift, other.shift)
        return self._aligned(top) == other._aligned(top)

    def __hash__(self) -> int:
        # Equal values share the normalized body at the largest admissible shift
        return hash((self.ctx, self._aligned(self.ctx.N).a0, self._aligned(self.ctx.N).a1))

    def __add__(self, other: 'ShiftedElem') -> 'ShiftedElem':
        top = max(self.shift, other.shift)
        return ShiftedElem(self._aligned(top) + other._aligned(top), top)

    def __neg__(self) -> 'ShiftedElem':
        return ShiftedElem(-self.body, self.shift)

    def __sub__(self, other: 'ShiftedElem') -> 'ShiftedElem':
        return self + (-other)

    def __mul__(self, other: 'ShiftedElem') -> 'ShiftedElem':
        shift = self.shift + other.shift
        if shift >= self.ctx.N:
            raise PrecisionExceeded(
                f"product shift {shift} leaves no precision at level {self.ctx.N}"
            )
        return ShiftedElem(self.body * other.body, shift)

    def conj(self) -> 'ShiftedElem':
        return ShiftedElem(self.body.conj(), self.shift)

    def val(self) -> int:
        """Valuation of the represented value; zero bodies report N - shift."""
        return self.body.val() - self.shift

    def is_rational(self) -> bool:
        return self.body.is_rational()


def psi_prime(x: ShiftedElem) -> complex:
    """Additive character of F, trivial on p*O_F and nontrivial on O_F."""
    if not x.is_rational():
        raise NotRational(f"{x.body!r} has a nonzero omega component")
    e = x.shift
    if e + 1 > x.ctx.N:
        raise PrecisionExceeded(f"shift {e} needs level {e + 1}, have {x.ctx.N}")
    window = x.ctx.p ** (e + 1)
    return cmath.exp(2j * cmath.pi * (x.body.a0 % window) / window)


def psi_E(x: ShiftedElem) -> complex:
    """psi(x) = psi'((x + conj(x))/2), the additive character of E."""
    half_trace = x.ctx.elem(x.body.a0, 0)
    return psi_prime(ShiftedElem(half_trace, x.shift))


def unit_norms(ctx: RingCtx) -> np.ndarray:
    """Sorted residues {norm(x) : x a unit of O_E/p^N}."""
    M = ctx.modulus
    a0, a1 = np.divmod(np.arange(M * M, dtype=np.int64), M)
    units = (a0 % ctx.p != 0) | (a1 % ctx.p != 0)
    return np.unique(qnorm(a0[units], a1[units], ctx))


def smallest_generator_mod_p(ctx: RingCtx) -> QuadRingElem:
    """First a0 + a1*omega (lexicographic) generating the multiplicative group of F_{p^2}."""
    order = ctx.p * ctx.p - 1
    prime_factors = [f for f in range(2, order + 1) if order % f == 0 and isprime(f)]
    residue = ring_make(ctx.p, ctx.epsilon, 1)
    for a0 in range(ctx.p):
        for a1 in range(1, ctx.p):
            g = residue.elem(a0, a1)
            if all((g ** (order // f)) != residue.one for f in prime_factors):
                return ctx.elem(a0, a1)
    raise InvalidParameter(f"no generator of F_{ctx.p}^2 found")


# Vectorized helpers on int64 component arrays


def qmul(x0, x1, y0, y1, ctx: RingCtx) -> Tuple[np.ndarray, np.ndarray]:
    M = ctx.modulus
    z0 = (x0 * y0 + (ctx.eps * x1 % M) * y1) % M
    z1 = (x0 * y1 + x1 * y0) % M
    return z0, z1


def qconj(x0, x1, ctx: RingCtx) -> Tuple[np.ndarray, np.ndarray]:
    return x0 % ctx.modulus, (-x1) % ctx.modulus


def qnorm(x0, x1, ctx: RingCtx) -> np.ndarray:
    M = ctx.modulus
    return (x0 * x0 - (ctx.eps * x1 % M) * x1) % M


def base_inv(values: np.ndarray, ctx: RingCtx) -> np.ndarray:
    """Inverse of unit residues mod p^N by Euler's theorem."""
    M = ctx.modulus
    result = np.ones_like(values)
    base = values % M
    exponent = ctx.phi - 1
    while exponent:
        if exponent & 1:
            result = result * base % M
        base = base * base % M
        exponent >>= 1
    return result


def qinv(x0, x1, ctx: RingCtx) -> Tuple[np.ndarray, np.ndarray]:
    if np.any((x0 % ctx.p == 0) & (x1 % ctx.p == 0)):
        raise NonUnit("inversion of an element of positive valuation")
    n_inv = base_inv(qnorm(x0, x1, ctx), ctx)
    c0, c1 = qconj(x0, x1, ctx)
    return c0 * n_inv % ctx.modulus, c1 * n_inv % ctx.modulus


def base_val(values: np.ndarray, ctx: RingCtx) -> np.ndarray:
    """Elementwise valuation with the N sentinel for zero."""
    values = np.asarray(values) % ctx.modulus
    result = np.full(values.shape, ctx.N, dtype=np.int64)
    for k in range(ctx.N - 1, -1, -1):
        result[values % (ctx.p ** (k + 1)) != 0] = k
    return result


def qval(x0, x1, ctx: RingCtx) -> np.ndarray:
    return np.minimum(base_val(x0, ctx), base_val(x1, ctx))


def root_of_unity(numerators: np.ndarray, denominator: int) -> np.ndarray:
    return np.exp(2j * np.pi * (np.asarray(numerators) % denominator) / denominator)

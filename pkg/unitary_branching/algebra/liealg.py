"""The Lie algebra of K: special elements, centralizers, normalizers and lifting.

A ``LieElem`` holds an integral 2x2 body over O_E/p^N together with a shift e,
standing for p^(-e) * body. Elements of the Lie algebra have the shape
[[x, b*omega], [c*omega, -conj(x)]] with b, c in F.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from unitary_branching.algebra.group import (
    SubgroupTable,
    _cols,
    conjugate_by,
    filtration_subgroup,
    gmul,
    ginv,
    is_member_K,
    product_set,
    torus,
    lower,
    upper,
)
from unitary_branching.algebra.ring import (
    QuadRingElem,
    RingCtx,
    ShiftedElem,
    qmul,
    qnorm,
)
from unitary_branching.core.errors import (
    DomainNotNormal,
    PrecisionExceeded,
    PreconditionViolated,
    SystemInconsistent,
    ValuationViolation,
)
from unitary_branching.utils.logger import get_logger

logger = get_logger("algebra.liealg")


@dataclass(frozen=True)
class LieElem:
    """p^(-shift) times an integral 2x2 matrix over O_E/p^N, stored as 8 residues."""

    body: Tuple[int, ...]
    shift: int
    ctx: RingCtx

    @classmethod
    def from_entries(
        cls,
        ctx: RingCtx,
        x11: QuadRingElem,
        x12: QuadRingElem,
        x21: QuadRingElem,
        x22: QuadRingElem,
        shift: int = 0,
    ) -> 'LieElem':
        body = (x11.a0, x11.a1, x12.a0, x12.a1, x21.a0, x21.a1, x22.a0, x22.a1)
        return cls(tuple(int(v) for v in body), shift, ctx)

    @property
    def row(self) -> np.ndarray:
        return np.array([self.body], dtype=np.int64)

    def entries(self) -> Tuple[QuadRingElem, ...]:
        b = self.body
        return tuple(self.ctx.elem(b[i], b[i + 1]) for i in range(0, 8, 2))

    def is_in_k(self) -> bool:
        """conj(X)^T w + w X = 0 on the body."""
        x11, x12, x21, x22 = self.entries()
        zero = self.ctx.zero
        return (x12.trace() == zero and x21.trace() == zero and x22 == -x11.conj())

    def val(self) -> int:
        """Least entry valuation of the represented matrix."""
        return min(e.val() for e in self.entries()) - self.shift

    def in_filtration(self, r: int) -> bool:
        """Membership in the lattice k_r = p^r k."""
        return self.val() >= r

    def is_diagonal(self) -> bool:
        b = self.body
        return b[2] == b[3] == b[4] == b[5] == 0

    def __add__(self, other: 'LieElem') -> 'LieElem':
        top = max(self.shift, other.shift)
        M = self.ctx.modulus
        left = [v * self.ctx.p ** (top - self.shift) for v in self.body]
        right = [v * self.ctx.p ** (top - other.shift) for v in other.body]
        return LieElem(tuple((x + y) % M for x, y in zip(left, right)), top, self.ctx)

    def conjugate(self, g: np.ndarray) -> 'LieElem':
        """g X g^-1 for g in K."""
        body = conjugate_by(g, self.row, self.ctx)[0]
        return LieElem(tuple(int(v) for v in body), self.shift, self.ctx)

    def at_level(self, ctx: RingCtx) -> 'LieElem':
        return LieElem(tuple(v % ctx.modulus for v in self.body), self.shift, ctx)


def trace_pair(X: LieElem, Y: LieElem) -> ShiftedElem:
    """
    Tr(XY) as a shifted element.

    Raises:
        PrecisionExceeded: combined shift leaves no precision at level N
    """
    shift = X.shift + Y.shift
    if shift >= X.ctx.N:
        raise PrecisionExceeded(f"trace pairing at shift {shift} needs level > {shift}")
    product = gmul(X.row, Y.row, X.ctx)[0]
    body = X.ctx.elem(int(product[0] + product[6]), int(product[1] + product[7]))
    return ShiftedElem(body, shift)


def _aligned_body(x: ShiftedElem, d: int) -> int:
    """F-rational value x rescaled to shift d, as a residue."""
    ctx = x.ctx
    if x.shift <= d:
        return x.body.a0 * ctx.p ** (d - x.shift) % ctx.modulus
    drop = x.shift - d
    if x.body.val() < drop:
        raise ValuationViolation(f"value of valuation {x.val()} below -{d}")
    return x.body.a0 // ctx.p ** drop


def make_X(z: ShiftedElem, u: ShiftedElem, v: ShiftedElem, d: int) -> LieElem:
    """
    X(z) + X~(u, v) = [[z w, u w], [v w, z w]] at shift d, with w = omega.

    Raises:
        ValuationViolation: unless val(z) >= -d and val(v) > val(u) = -d
    """
    ctx = u.ctx
    for name, x in (('z', z), ('u', u), ('v', v)):
        if not x.is_rational():
            raise ValuationViolation(f"{name} must lie in F")
    if u.val() != -d:
        raise ValuationViolation(f"val(u) = {u.val()}, expected {-d}")
    if z.body.a0 % ctx.modulus and z.val() < -d:
        raise ValuationViolation(f"val(z) = {z.val()} below {-d}")
    if v.body.a0 % ctx.modulus and v.val() <= -d:
        raise ValuationViolation(f"val(v) = {v.val()} not above {-d}")

    zb, ub, vb = (_aligned_body(x, d) for x in (z, u, v))
    return LieElem.from_entries(
        ctx, ctx.elem(0, zb), ctx.elem(0, ub), ctx.elem(0, vb), ctx.elem(0, zb), shift=d
    )


def x_tilde(ctx: RingCtx, u_body: int, v_body: int, shift: int = 0) -> LieElem:
    """X~(u, v) from bodies already at the given shift."""
    return LieElem.from_entries(
        ctx, ctx.zero, ctx.elem(0, u_body), ctx.elem(0, v_body), ctx.zero, shift=shift
    )


@dataclass(frozen=True)
class NilpotentLabel:
    """delta = unit * p^exponent, or the zero orbit when unit is None."""

    unit: Optional[int] = None
    exponent: int = 0

    @property
    def is_zero(self) -> bool:
        return self.unit is None


def nilpotent_X(ctx: RingCtx, label: NilpotentLabel) -> LieElem:
    """X_delta = [[0, delta*omega], [0, 0]]."""
    if label.is_zero:
        return LieElem((0,) * 8, 0, ctx)
    if label.exponent >= 0:
        body, shift = label.unit * ctx.p ** label.exponent, 0
    else:
        body, shift = label.unit, -label.exponent
    return LieElem.from_entries(
        ctx, ctx.zero, ctx.elem(0, body), ctx.zero, ctx.zero, shift=shift
    )


def nilpotent_orbit_equiv(l1: NilpotentLabel, l2: NilpotentLabel, mode: str = 'K') -> bool:
    """K-orbits are separated by valuation; G-orbits only by its parity."""
    if l1.is_zero or l2.is_zero:
        return l1.is_zero and l2.is_zero
    if mode == 'K':
        return l1.exponent == l2.exponent
    if mode == 'G':
        return (l1.exponent - l2.exponent) % 2 == 0
    raise ValueError(f"mode must be 'K' or 'G', got {mode!r}")


def commutator_mask(G: SubgroupTable, X: LieElem, precision: Optional[int] = None) -> np.ndarray:
    """Rows g with g X_body = X_body g modulo p^precision (default p^N)."""
    ctx = G.ctx
    k = ctx.N if precision is None else precision
    diff = (gmul(G.elements, X.row, ctx) - gmul(X.row, G.elements, ctx)) % ctx.modulus
    return (diff % ctx.p ** k == 0).all(axis=1)


def brute_conjugator_search(X1: LieElem, X2: LieElem, G: SubgroupTable) -> Optional[int]:
    """Lowest index g with g X1 g^-1 = X2, or None."""
    if X1.shift != X2.shift:
        raise ValuationViolation("conjugator search needs equal shifts")
    ctx = G.ctx
    diff = (gmul(G.elements, X1.row, ctx) - gmul(X2.row, G.elements, ctx)) % ctx.modulus
    hits = np.flatnonzero((diff == 0).all(axis=1))
    return int(hits[0]) if len(hits) else None


# Centralizers


def rho_of(X: LieElem) -> int:
    """v/u for X = X(z) + X~(u, v) with u a unit body."""
    x11, x12, x21, x22 = X.entries()
    ctx = X.ctx
    if x11 != x22 or not (x11.a0 == x12.a0 == x21.a0 == 0):
        raise ValuationViolation("element is not of the form X(z) + X~(u, v)")
    if x21.a1 == 0 and x12.a1 != 0:
        return 0
    if x12.a1 % ctx.p == 0:
        raise ValuationViolation("upper right entry must be a unit at this shift")
    rho = x21.a1 * pow(x12.a1, -1, ctx.modulus) % ctx.modulus
    if rho % ctx.p:
        raise ValuationViolation("centralizer parametrization needs val(v) > val(u)")
    return rho


def centralizer_rows(ctx: RingCtx, rho: int) -> np.ndarray:
    """
    All (a, b; rho*b, a) in K/K_N.

    Elements with conj(a) b = s*omega have b = s*omega*a/n where n = N(a)
    solves n^2 - n - rho*eps*s^2 = 0 with n = 1 mod p.
    """
    M, p = ctx.modulus, ctx.p
    s = np.arange(M, dtype=np.int64)
    n = np.arange(M, dtype=np.int64)
    S, Nn = np.meshgrid(s, n, indexing='ij')
    rhs = rho * ctx.eps % M * (S * S % M) % M
    good = ((Nn * Nn - Nn - rhs) % M == 0) & (Nn % p == 1 % p)
    s_vals, n_vals = S[good], Nn[good]

    a0, a1 = np.divmod(np.arange(M * M, dtype=np.int64), M)
    norms = qnorm(a0, a1, ctx)

    blocks = []
    for s_val, n_val in zip(s_vals.tolist(), n_vals.tolist()):
        pick = norms == n_val
        x0, x1 = a0[pick], a1[pick]
        n_inv = pow(n_val, -1, M)
        # b = omega * s * a / n
        w0, w1 = qmul(np.zeros_like(x0), np.full_like(x0, s_val * n_inv % M), x0, x1, ctx)
        c0, c1 = rho * w0 % M, rho * w1 % M
        blocks.append(np.stack([x0, x1, w0, w1, c0, c1, x0, x1], axis=1))
    return np.concatenate(blocks).astype(np.int64)


def centralizer_TX(X: LieElem, ambient: Optional[SubgroupTable] = None) -> SubgroupTable:
    """
    T(X), the centralizer of X in K/K_N.

    X(z) + X~(u, v) types (nilpotent included) are parametrized directly and
    cross-checked against the commutant when an ambient table is supplied;
    diagonal types need the ambient table.
    """
    ctx = X.ctx
    if X.is_diagonal():
        if ambient is None:
            raise ValuationViolation("diagonal X needs an ambient table")
        return ambient.restrict(commutator_mask(ambient, X), "T(X)")

    rows = centralizer_rows(ctx, rho_of(X))
    T = SubgroupTable(ctx, rows, "T(X)")
    if not is_member_K(T.elements, ctx).all():
        raise PreconditionViolated("centralizer rows fail the unitary relation")
    if ambient is not None:
        brute = ambient.restrict(commutator_mask(ambient, X), "T(X)-brute")
        if not brute.same_set(T):
            raise PreconditionViolated("parametrized centralizer disagrees with the commutant")
    logger.debug(f"T(X) at shift {X.shift}: order {T.order}")
    return T


def normalizer_of_char(
    psi,
    ambient: SubgroupTable,
    domain: SubgroupTable,
) -> SubgroupTable:
    """
    {g in ambient : psi(g^-1 h g) = psi(h) for all h in domain}.

    ``psi`` is any callable on rows of ``domain``. Agreement is tested on the
    generators of the domain, which suffices for characters.

    Raises:
        DomainNotNormal: ambient does not normalize the domain
    """
    ctx = ambient.ctx
    if not domain.is_normal_in(ambient):
        raise DomainNotNormal(f"{domain.label} is not normal in {ambient.label}")

    keep = np.ones(ambient.order, dtype=bool)
    inverses = ginv(ambient.elements, ctx)
    for h in domain.generators:
        conj = gmul(gmul(inverses, h[None, :], ctx), ambient.elements, ctx)
        keep &= np.abs(psi(conj) - psi(h[None, :])[0]) < 1e-9
    return ambient.restrict(keep, f"N({domain.label})")


def centralizer_coset_check(X: LieElem, s: int, K: SubgroupTable, T: SubgroupTable) -> dict:
    """C_K(X + k_s) against T(X) K_s as index sets, for X at shift 0."""
    brute = K.restrict(commutator_mask(K, X, precision=s), "C(X+k_s)")
    product = product_set(T, filtration_subgroup(K, s), "T(X)K_s").table
    return {
        'brute_order': brute.order,
        'product_order': product.order,
        'equal': brute.same_set(product),
    }


def moy_prasad_bijection(K_m: SubgroupTable, m: int, n: int) -> dict:
    """k -> k - I from K_m/K_n into k_m/k_n, checked for n <= 2m."""
    ctx = K_m.ctx
    if n > 2 * m:
        raise PreconditionViolated(f"n = {n} exceeds 2m = {2 * m}")
    window = ctx.p ** n
    identity_row = np.array([1, 0, 0, 0, 0, 0, 1, 0], dtype=np.int64)
    shifted = (K_m.elements - identity_row) % window
    distinct = np.unique(shifted, axis=0)

    a0, a1, b0, b1, c0, c1, d0, d1 = _cols(distinct)
    in_lie = ((b0 % window == 0) & (c0 % window == 0)
              & ((a0 + d0) % window == 0) & ((a1 - d1) % window == 0))

    rng = np.random.default_rng(0)
    sample = rng.integers(0, K_m.order, size=(min(200, K_m.order), 2))
    x = K_m.elements[sample[:, 0]]
    y = K_m.elements[sample[:, 1]]
    lhs = (gmul(x, y, ctx) - identity_row) % window
    rhs = ((x - identity_row) + (y - identity_row)) % window
    return {
        'image_size': len(distinct),
        'expected_size': ctx.q ** (4 * (n - m)),
        'in_lie_algebra': bool(in_lie.all()),
        'additive': bool((lhs == rhs).all()),
    }


# Lifting


def rref_mod(aug: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over F_p; pivots are the first nonzero entries."""
    A = aug.copy() % p
    m, n = A.shape
    r, c = 0, 0
    pivots: List[int] = []
    while r < m and c < n:
        nonzero = np.flatnonzero(A[r:, c] % p)
        if not len(nonzero):
            c += 1
            continue
        piv = r + int(nonzero[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        for i in range(m):
            if i != r and A[i, c] % p:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
        c += 1
    return A, pivots


def solve_mod_p(A: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """One solution of A x = b over F_p with free variables set to zero."""
    A = np.asarray(A, dtype=np.int64) % p
    m, n = A.shape
    aug = np.concatenate([A, np.asarray(b, dtype=np.int64).reshape(-1, 1) % p], axis=1)
    R, pivots = rref_mod(aug, p)
    for i in range(m):
        if not R[i, :n].any() and R[i, n]:
            raise SystemInconsistent("residue-field system has no solution")
    x = np.zeros(n, dtype=np.int64)
    for row, col in enumerate(pivots):
        if col < n:
            x[col] = R[row, n]
    return x


def hensel_lift(k: np.ndarray, rho: int, s: int, ctx: RingCtx) -> np.ndarray:
    """
    Lift k to k' = (a', b'; rho*b', a') in T(X~(u, v)) with rho = v/u.

    k' agrees with k on a and b modulo p^s, so k'^-1 k lies in K_s.

    Raises:
        PreconditionViolated: k not in K, or a != d or c != rho*b mod p^s
        SystemInconsistent: the residue-field system is singular
    """
    p, M = ctx.p, ctx.modulus
    if rho % p:
        raise PreconditionViolated("rho must have positive valuation")
    if not 1 <= s <= ctx.N:
        raise PreconditionViolated(f"s = {s} outside [1, {ctx.N}]")
    row = np.atleast_2d(k)
    if not is_member_K(row, ctx)[0]:
        raise PreconditionViolated("k is not in K")

    A0, A1, B0, B1, C0, C1, D0, D1 = (int(v) for v in row[0])
    window = p ** s
    if (A0 - D0) % window or (A1 - D1) % window:
        raise PreconditionViolated(f"a != d mod p^{s}")
    if (C0 - rho * B0) % window or (C1 - rho * B1) % window:
        raise PreconditionViolated(f"c != rho*b mod p^{s}")

    eps = ctx.eps
    a0, a1, b0, b1 = A0, A1, B0, B1
    for t in range(s, ctx.N):
        pt = p ** t
        norm_a = (a0 * a0 - eps * a1 * a1) % M
        norm_b = (b0 * b0 - eps * b1 * b1) % M
        excess = (norm_a + rho * norm_b - 1) % M
        cross = (b0 * a0 - eps * b1 * a1) % M  # real part of conj(b) a
        if excess % pt or cross % pt:
            raise PreconditionViolated(f"lift lost the congruence at depth {t}")
        alpha = excess // pt % p
        beta = cross // pt % p

        system = np.array([
            [2 * a0, -2 * eps * a1, 0, 0],
            [b0, -eps * b1, a0, -eps * a1],
            [-b1, b0, a1, -a0],
        ], dtype=np.int64)
        x0, x1, y0, y1 = solve_mod_p(system, np.array([-alpha, -beta, 0]), p)
        a0, a1 = (a0 + x0 * pt) % M, (a1 + x1 * pt) % M
        b0, b1 = (b0 + y0 * pt) % M, (b1 + y1 * pt) % M

    lifted = np.array(
        [[a0, a1, b0, b1, rho * b0 % M, rho * b1 % M, a0, a1]], dtype=np.int64
    )
    if not is_member_K(lifted, ctx)[0]:
        raise SystemInconsistent("lifted matrix fails the unitary relation")
    return lifted


def random_admissible(
    T: SubgroupTable, s: int, rng: np.random.Generator
) -> np.ndarray:
    """t * k_s with t in T(X) and k_s a random element of K_s."""
    ctx = T.ctx
    M, ps = ctx.modulus, ctx.p ** s
    t = T.elements[int(rng.integers(T.order))][None, :]
    z = ctx.elem(1 + ps * int(rng.integers(M)), ps * int(rng.integers(M)))
    k_s = gmul(
        gmul(lower(ctx, ps * int(rng.integers(M))), torus(ctx, z), ctx),
        upper(ctx, ps * int(rng.integers(M))),
        ctx,
    )
    return gmul(t, k_s, ctx)


def in_filtration_rows(X: np.ndarray, m: int, ctx: RingCtx) -> np.ndarray:
    """Rows of K/K_N lying in K_m."""
    a0, a1, b0, b1, c0, c1, d0, d1 = _cols(X)
    pm = ctx.p ** min(m, ctx.N)
    return (((a0 - 1) % pm == 0) & (a1 % pm == 0) & (b0 % pm == 0) & (b1 % pm == 0)
            & (c0 % pm == 0) & (c1 % pm == 0) & ((d0 - 1) % pm == 0) & (d1 % pm == 0))

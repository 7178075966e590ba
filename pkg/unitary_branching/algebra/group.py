"""Enumeration of K/K_N and its subgroups.

Group elements are rows of an int64 array with eight columns
(A0, A1, B0, B1, C0, C1, D0, D1): the components of the matrix entries
a, b, c, d of a 2x2 matrix over O_E/p^N. Subgroups are stored as sorted
tables of such rows with a key index for O(log n) membership.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from unitary_branching.algebra.ring import (
    QuadRingElem,
    RingCtx,
    qconj,
    qinv,
    qmul,
    smallest_generator_mod_p,
)
from unitary_branching.core.errors import (
    BudgetExceeded,
    GroupError,
    InvalidParameter,
    LevelTooLow,
    NotSubgroup,
)
from unitary_branching.utils.logger import get_logger

logger = get_logger("algebra.group")

COLUMNS = ('A0', 'A1', 'B0', 'B1', 'C0', 'C1', 'D0', 'D1')
KEY_LIMIT = 2 ** 63

SUBGROUP_NAMES = (
    'Borel', 'Torus0', 'TorusFilt', 'SplitTorus0', 'SplitFilt', 'Center',
    'UnipotentK', 'ZU', 'Filtration', 'J', 'BorelK', 'ZUJ',
)


def ceil_half(d: int) -> int:
    return -(-d // 2)


# Matrix arithmetic


def _cols(X: np.ndarray) -> List[np.ndarray]:
    X = np.atleast_2d(X)
    return [X[:, i] for i in range(8)]


def gmul(X: np.ndarray, Y: np.ndarray, ctx: RingCtx) -> np.ndarray:
    """Row-wise product; a single row on either side broadcasts."""
    xa0, xa1, xb0, xb1, xc0, xc1, xd0, xd1 = _cols(X)
    ya0, ya1, yb0, yb1, yc0, yc1, yd0, yd1 = _cols(Y)
    M = ctx.modulus

    def dot(p0, p1, q0, q1, r0, r1, s0, s1):
        u0, u1 = qmul(p0, p1, q0, q1, ctx)
        v0, v1 = qmul(r0, r1, s0, s1, ctx)
        return (u0 + v0) % M, (u1 + v1) % M

    a = dot(xa0, xa1, ya0, ya1, xb0, xb1, yc0, yc1)
    b = dot(xa0, xa1, yb0, yb1, xb0, xb1, yd0, yd1)
    c = dot(xc0, xc1, ya0, ya1, xd0, xd1, yc0, yc1)
    d = dot(xc0, xc1, yb0, yb1, xd0, xd1, yd0, yd1)
    return np.stack([*a, *b, *c, *d], axis=1).astype(np.int64)


def ginv(X: np.ndarray, ctx: RingCtx) -> np.ndarray:
    """Inverse of unitary rows: (a, b; c, d)^-1 = (conj d, conj b; conj c, conj a)."""
    a0, a1, b0, b1, c0, c1, d0, d1 = _cols(X)
    M = ctx.modulus
    return np.stack(
        [d0 % M, -d1 % M, b0 % M, -b1 % M, c0 % M, -c1 % M, a0 % M, -a1 % M], axis=1
    ).astype(np.int64)


def conjugate_by(S: np.ndarray, X: np.ndarray, ctx: RingCtx) -> np.ndarray:
    """Rows s x s^-1."""
    return gmul(gmul(S, X, ctx), ginv(S, ctx), ctx)


def is_member_K(X: np.ndarray, ctx: RingCtx) -> np.ndarray:
    """Unitary relation conj(g)^T w g = w modulo p^N, row-wise."""
    a0, a1, b0, b1, c0, c1, d0, d1 = _cols(X)
    M = ctx.modulus
    ca0, ca1 = qconj(a0, a1, ctx)
    cb0, cb1 = qconj(b0, b1, ctx)
    cc0, cc1 = qconj(c0, c1, ctx)
    ac = qmul(ca0, ca1, c0, c1, ctx)
    bd = qmul(cb0, cb1, d0, d1, ctx)
    ad = qmul(ca0, ca1, d0, d1, ctx)
    cb = qmul(cc0, cc1, b0, b1, ctx)
    off_diagonal = (2 * ac[0] % M == 0) & (2 * bd[0] % M == 0)
    anti_diagonal = ((ad[0] + cb[0]) % M == 1 % M) & ((ad[1] + cb[1]) % M == 0)
    return off_diagonal & anti_diagonal


def dichotomy_holds(X: np.ndarray, ctx: RingCtx) -> np.ndarray:
    """Either both diagonal entries are units or both off-diagonal entries are."""
    a0, a1, b0, b1, c0, c1, d0, d1 = _cols(X)
    p = ctx.p

    def unit(x0, x1):
        return (x0 % p != 0) | (x1 % p != 0)

    return (unit(a0, a1) & unit(d0, d1)) | (unit(b0, b1) & unit(c0, c1))


def determinant(X: np.ndarray, ctx: RingCtx) -> Tuple[np.ndarray, np.ndarray]:
    a0, a1, b0, b1, c0, c1, d0, d1 = _cols(X)
    ad = qmul(a0, a1, d0, d1, ctx)
    bc = qmul(b0, b1, c0, c1, ctx)
    return (ad[0] - bc[0]) % ctx.modulus, (ad[1] - bc[1]) % ctx.modulus


def element_keys(X: np.ndarray, ctx: RingCtx) -> np.ndarray:
    """Horner encoding of the eight residues in base p^N (first column most significant)."""
    M = ctx.modulus
    if M ** 8 >= KEY_LIMIT:
        raise BudgetExceeded(f"keys for modulus {M} do not fit in 64 bits")
    X = np.atleast_2d(X).astype(np.int64)
    keys = np.zeros(X.shape[0], dtype=np.int64)
    for i in range(8):
        keys = keys * M + X[:, i]
    return keys


# Elementary matrices


def from_entries(
    ctx: RingCtx, a: QuadRingElem, b: QuadRingElem, c: QuadRingElem, d: QuadRingElem
) -> np.ndarray:
    return np.array([[a.a0, a.a1, b.a0, b.a1, c.a0, c.a1, d.a0, d.a1]], dtype=np.int64)


def entries(row: np.ndarray, ctx: RingCtx) -> Tuple[QuadRingElem, ...]:
    r = [int(v) for v in np.ravel(row)]
    return tuple(ctx.elem(r[i], r[i + 1]) for i in range(0, 8, 2))


def identity(ctx: RingCtx) -> np.ndarray:
    return from_entries(ctx, ctx.one, ctx.zero, ctx.zero, ctx.one)


def torus(ctx: RingCtx, a: QuadRingElem) -> np.ndarray:
    """diag(a, conj(a)^-1)."""
    return from_entries(ctx, a, ctx.zero, ctx.zero, a.conj().inv())


def scalar(ctx: RingCtx, z: QuadRingElem) -> np.ndarray:
    return from_entries(ctx, z, ctx.zero, ctx.zero, z)


def upper(ctx: RingCtx, t: int) -> np.ndarray:
    """[[1, t*omega], [0, 1]] for t in O_F."""
    return from_entries(ctx, ctx.one, ctx.elem(0, t), ctx.zero, ctx.one)


def lower(ctx: RingCtx, t: int) -> np.ndarray:
    """[[1, 0], [t*omega, 1]] for t in O_F."""
    return from_entries(ctx, ctx.one, ctx.zero, ctx.elem(0, t), ctx.one)


def weyl(ctx: RingCtx) -> np.ndarray:
    return from_entries(ctx, ctx.zero, ctx.one, ctx.one, ctx.zero)


def predicted_order(ctx: RingCtx) -> int:
    """|K/K_N| = q(q-1)(q+1)^2 q^(4(N-1))."""
    q = ctx.q
    return q * (q - 1) * (q + 1) ** 2 * q ** (4 * (ctx.N - 1))


# Tables


@dataclass
class ConjClasses:
    """Conjugacy classes: class id per element, lowest-index representative per class."""

    class_of: np.ndarray
    representatives: np.ndarray
    sizes: np.ndarray

    @property
    def count(self) -> int:
        return len(self.representatives)


@dataclass
class Partition:
    """Orbit partition of a table: orbit id per element and lowest-index representatives."""

    orbit_of: np.ndarray
    representatives: np.ndarray

    @property
    def count(self) -> int:
        return len(self.representatives)

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.orbit_of, minlength=self.count)


class SubgroupTable:
    """
    Enumerated subgroup of K/K_N.

    Elements are kept sorted by key so iteration order is deterministic and
    lowest-index representatives are canonical.
    """

    def __init__(
        self,
        ctx: RingCtx,
        elements: np.ndarray,
        label: str,
        generators: Optional[np.ndarray] = None,
        parent: Optional[str] = None,
    ):
        self.ctx = ctx
        self.label = label
        self.parent = parent
        elements = np.atleast_2d(np.asarray(elements, dtype=np.int64))
        keys = element_keys(elements, ctx)
        keys, first = np.unique(keys, return_index=True)
        self.keys = keys
        self.elements = elements[first]
        self._generators = None if generators is None else np.atleast_2d(generators)
        self._classes: Optional[ConjClasses] = None

    def __len__(self) -> int:
        return len(self.keys)

    def __repr__(self) -> str:
        return f"SubgroupTable({self.label}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.keys)

    def index_of(self, X: np.ndarray) -> np.ndarray:
        """Position of each row in the table, -1 when absent."""
        keys = element_keys(X, self.ctx)
        pos = np.searchsorted(self.keys, keys)
        pos = np.minimum(pos, len(self.keys) - 1)
        return np.where(self.keys[pos] == keys, pos, -1)

    def contains(self, X: np.ndarray) -> np.ndarray:
        return self.index_of(X) >= 0

    def contains_table(self, other: 'SubgroupTable') -> bool:
        return bool(np.isin(other.keys, self.keys, assume_unique=True).all())

    def same_set(self, other: 'SubgroupTable') -> bool:
        return self.order == other.order and bool(np.array_equal(self.keys, other.keys))

    @property
    def identity_index(self) -> int:
        return int(self.index_of(identity(self.ctx))[0])

    @property
    def generators(self) -> np.ndarray:
        if self._generators is None:
            self._generators = greedy_generators(self)
        return self._generators

    def restrict(self, mask: np.ndarray, label: str) -> 'SubgroupTable':
        return SubgroupTable(self.ctx, self.elements[mask], label, parent=self.label)

    def is_abelian(self) -> bool:
        gens = self.generators
        for i in range(len(gens)):
            left = gmul(gens[i:i + 1], gens, self.ctx)
            right = gmul(gens, gens[i:i + 1], self.ctx)
            if not np.array_equal(left, right):
                return False
        return True

    def is_normal_in(self, ambient: 'SubgroupTable') -> bool:
        for g in ambient.generators:
            if not self.contains(conjugate_by(g[None, :], self.elements, self.ctx)).all():
                return False
        return True

    def conjugacy_classes(self) -> ConjClasses:
        if self._classes is None:
            self._classes = conjugacy_classes(self)
        return self._classes

    def set_classes(self, classes: ConjClasses) -> None:
        self._classes = classes

    @property
    def classes_computed(self) -> Optional[ConjClasses]:
        return self._classes


def closure(
    ctx: RingCtx,
    generators: np.ndarray,
    label: str,
    budget: Optional[int] = None,
) -> SubgroupTable:
    """Breadth-first closure of a generating set under right multiplication."""
    gens = np.atleast_2d(np.asarray(generators, dtype=np.int64))
    start = identity(ctx)
    seen = element_keys(start, ctx)
    blocks = [start]
    frontier = start
    total = 1

    while len(frontier):
        candidates = np.concatenate([gmul(frontier, g[None, :], ctx) for g in gens])
        keys, first = np.unique(element_keys(candidates, ctx), return_index=True)
        fresh = ~np.isin(keys, seen, assume_unique=True)
        frontier = candidates[first[fresh]]
        seen = np.union1d(seen, keys[fresh])
        blocks.append(frontier)
        total += len(frontier)
        if budget is not None and total > budget:
            raise BudgetExceeded(f"closure of {label} exceeded budget {budget}")

    return SubgroupTable(ctx, np.concatenate(blocks), label, generators=gens)


def greedy_generators(H: SubgroupTable) -> np.ndarray:
    """Add the first element outside the current span until the span is H."""
    ctx = H.ctx
    in_span = np.zeros(H.order, dtype=bool)
    in_span[H.identity_index] = True
    gens: List[np.ndarray] = []
    while not in_span.all():
        gens.append(H.elements[int(np.flatnonzero(~in_span)[0])])
        span = closure(ctx, np.array(gens), f"span({H.label})")
        in_span = np.isin(H.keys, span.keys, assume_unique=True)
    if not gens:
        return identity(ctx)
    return np.array(gens, dtype=np.int64)


# Generators and enumeration


def k_generators(ctx: RingCtx, m: int = 0) -> np.ndarray:
    """Generators of the filtration subgroup K_m/K_N (m = 0 is K itself)."""
    p = ctx.p
    if m == 0:
        gens = [
            torus(ctx, smallest_generator_mod_p(ctx)),
            torus(ctx, ctx.elem(1 + p, 0)),
            torus(ctx, ctx.elem(1, p)),
            upper(ctx, 1),
            lower(ctx, 1),
            weyl(ctx),
        ]
    else:
        pm = p ** m
        gens = [
            torus(ctx, ctx.elem(1 + pm, 0)),
            torus(ctx, ctx.elem(1, pm)),
            upper(ctx, pm),
            lower(ctx, pm),
        ]
    return np.concatenate(gens)


def j_generators(ctx: RingCtx, d: int) -> np.ndarray:
    m, m_low = ceil_half(d), ceil_half(d + 1)
    pm = ctx.p ** m
    return np.concatenate([
        torus(ctx, ctx.elem(1 + pm, 0)),
        torus(ctx, ctx.elem(1, pm)),
        upper(ctx, pm),
        lower(ctx, ctx.p ** m_low),
    ])


def enumerate_K(ctx: RingCtx, budget: int = 2_000_000) -> SubgroupTable:
    """
    Enumerate K/K_N by generator closure.

    Raises:
        BudgetExceeded: predicted order above budget
        GroupError: an element fails the unitary relation or the unit dichotomy
    """
    expected = predicted_order(ctx)
    if expected > budget:
        raise BudgetExceeded(
            f"|K/K_{ctx.N}| = {expected} at p={ctx.p} exceeds budget {budget}"
        )

    logger.info(f"Enumerating K/K_{ctx.N} at p={ctx.p} (expected order {expected})")
    K = closure(ctx, k_generators(ctx), "K", budget=budget)

    if not is_member_K(K.elements, ctx).all():
        raise GroupError("closure produced a non-unitary element")
    if not dichotomy_holds(K.elements, ctx).all():
        raise GroupError("closure produced an element with no unit diagonal or antidiagonal")
    if K.order != expected:
        logger.warning(f"enumerated order {K.order} differs from the closed formula {expected}")

    logger.debug(f"K/K_{ctx.N} enumerated: {K.order} elements")
    return K


def enumerate_torus(ctx: RingCtx) -> SubgroupTable:
    """T_0/T_N = {diag(a, conj(a)^-1) : a a unit}, listed directly."""
    M = ctx.modulus
    a0, a1 = np.divmod(np.arange(M * M, dtype=np.int64), M)
    units = (a0 % ctx.p != 0) | (a1 % ctx.p != 0)
    a0, a1 = a0[units], a1[units]
    d0, d1 = qinv(*qconj(a0, a1, ctx), ctx)
    zeros = np.zeros_like(a0)
    rows = np.stack([a0, a1, zeros, zeros, zeros, zeros, d0, d1], axis=1)
    return SubgroupTable(ctx, rows, "Torus0")


# Named subgroups


def _divisible(col: np.ndarray, k: int, ctx: RingCtx) -> np.ndarray:
    if k <= 0:
        return np.ones(col.shape, dtype=bool)
    return col % (ctx.p ** min(k, ctx.N)) == 0


def subgroup_mask(X: np.ndarray, name: str, ctx: RingCtx, **params) -> np.ndarray:
    """Membership predicate for a named subgroup, evaluated on rows of K/K_N."""
    a0, a1, b0, b1, c0, c1, d0, d1 = _cols(X)
    M = ctx.modulus
    one = 1 % M
    b_zero = (b0 == 0) & (b1 == 0)
    c_zero = (c0 == 0) & (c1 == 0)

    def near_one(x0, x1, k):
        return _divisible((x0 - one) % M, k, ctx) & _divisible(x1, k, ctx)

    def small(x0, x1, k):
        return _divisible(x0, k, ctx) & _divisible(x1, k, ctx)

    if name == 'Borel':
        return c_zero
    if name == 'Torus0':
        return b_zero & c_zero
    if name == 'TorusFilt':
        return b_zero & c_zero & near_one(a0, a1, params['m'])
    if name == 'SplitTorus0':
        return b_zero & c_zero & (a1 == 0)
    if name == 'SplitFilt':
        return b_zero & c_zero & (a1 == 0) & near_one(a0, a1, params['m'])
    if name == 'Center':
        return b_zero & c_zero & (a0 == d0) & (a1 == d1)
    if name == 'UnipotentK':
        return c_zero & (a0 == one) & (a1 == 0) & (d0 == one) & (d1 == 0)
    if name == 'ZU':
        # upper triangular with a = d is exactly Z times the unipotent radical
        return c_zero & (a0 == d0) & (a1 == d1)
    if name == 'Filtration':
        m = params['m']
        return (near_one(a0, a1, m) & small(b0, b1, m) & small(c0, c1, m)
                & near_one(d0, d1, m))
    if name == 'J':
        d = params['d']
        m, m_low = ceil_half(d), ceil_half(d + 1)
        return (near_one(a0, a1, m) & small(b0, b1, m) & small(c0, c1, m_low)
                & near_one(d0, d1, m))
    if name == 'BorelK':
        return small(c0, c1, params['n'])
    raise InvalidParameter(f"unknown subgroup name {name!r}")


def subgroup_label(name: str, **params) -> str:
    if not params:
        return name
    inner = ",".join(str(v) for v in params.values())
    return f"{name}({inner})"


def named_subgroup(K: SubgroupTable, name: str, **params) -> SubgroupTable:
    """
    Carve a named subgroup out of an enumerated K/K_N.

    Raises:
        LevelTooLow: J(d) with N < ceil((d+1)/2)
        InvalidParameter: unknown name or filtration index out of range
    """
    ctx = K.ctx
    if name == 'J' and ctx.N < ceil_half(params['d'] + 1):
        raise LevelTooLow(f"J({params['d']}) needs N >= {ceil_half(params['d'] + 1)}")
    for key in ('m', 'n'):
        if key in params and not 0 <= params[key] <= ctx.N:
            raise InvalidParameter(f"filtration index {params[key]} outside [0, {ctx.N}]")
    if name == 'ZUJ':
        return zuj_subgroup(K, params['d']).table

    label = subgroup_label(name, **params)
    table = K.restrict(subgroup_mask(K.elements, name, ctx, **params), label)
    logger.debug(f"{label}: order {table.order}")
    return table


def filtration_subgroup(K: SubgroupTable, m: int) -> SubgroupTable:
    """Image of K_m in K/K_N."""
    if m == 0:
        return K
    return named_subgroup(K, 'Filtration', m=m)


def build_subgroup(ctx: RingCtx, name: str, budget: int = 2_000_000, **params) -> SubgroupTable:
    """Generator closure for subgroups needed at levels where K itself is not enumerated."""
    label = subgroup_label(name, **params)
    if name == 'Filtration':
        return closure(ctx, k_generators(ctx, params['m']), label, budget)
    if name == 'J':
        if ctx.N < ceil_half(params['d'] + 1):
            raise LevelTooLow(f"J({params['d']}) needs N >= {ceil_half(params['d'] + 1)}")
        return closure(ctx, j_generators(ctx, params['d']), label, budget)
    if name == 'UnipotentK':
        return closure(ctx, upper(ctx, 1), label, budget)
    if name == 'ZU':
        Z = build_subgroup(ctx, 'Center')
        return closure(ctx, np.concatenate([Z.generators, upper(ctx, 1)]), label, budget)
    if name in ('Torus0', 'TorusFilt', 'SplitTorus0', 'SplitFilt', 'Center'):
        T = enumerate_torus(ctx)
        if name == 'Torus0':
            return T
        return T.restrict(subgroup_mask(T.elements, name, ctx, **params), label)
    raise InvalidParameter(f"{name!r} cannot be built without an enumerated K")


# Products and partitions


@dataclass
class ProductSet:
    """The set T*J for J normalized by T, with one T-representative per J-coset."""

    table: SubgroupTable
    reps: np.ndarray
    coset_of: np.ndarray = field(repr=False)


def product_set(T: SubgroupTable, J: SubgroupTable, label: str) -> ProductSet:
    """Concatenate t_i*J over greedy representatives t_i of T modulo T meet J."""
    ctx = T.ctx
    remaining = np.ones(T.order, dtype=bool)
    reps: List[int] = []
    while remaining.any():
        i = int(np.flatnonzero(remaining)[0])
        reps.append(i)
        t_inv = ginv(T.elements[i:i + 1], ctx)
        remaining &= ~J.contains(gmul(t_inv, T.elements, ctx))

    rep_rows = T.elements[reps]
    blocks = [gmul(rep_rows[k:k + 1], J.elements, ctx) for k in range(len(reps))]
    table = SubgroupTable(ctx, np.concatenate(blocks), label)
    coset_of = np.empty(table.order, dtype=np.int64)
    for k, block in enumerate(blocks):
        coset_of[table.index_of(block)] = k
    if table.order != len(reps) * J.order:
        raise GroupError(f"{label}: cosets overlap, T does not normalize J")
    return ProductSet(table=table, reps=rep_rows, coset_of=coset_of)


def zuj_subgroup(K: SubgroupTable, d: int) -> ProductSet:
    return product_set(named_subgroup(K, 'ZU'), named_subgroup(K, 'J', d=d), f"ZUJ({d})")


def _orbits(n: int, targets: Sequence[np.ndarray]) -> Partition:
    """Weak components of the graph with edges i -> targets[k][i]."""
    if not targets:
        return Partition(np.arange(n), np.arange(n))
    rows = np.concatenate([np.arange(n)] * len(targets))
    cols = np.concatenate(targets)
    if (cols < 0).any():
        raise NotSubgroup("orbit edge leaves the enumerated table")
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    count, labels = connected_components(graph, directed=True, connection='weak')

    first = np.full(count, n, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(n))
    order = np.argsort(first)
    relabel = np.empty(count, dtype=np.int64)
    relabel[order] = np.arange(count)
    return Partition(orbit_of=relabel[labels], representatives=first[order])


def left_cosets(G: SubgroupTable, H: SubgroupTable) -> Partition:
    """Partition of G into cosets gH."""
    ctx = G.ctx
    targets = [G.index_of(gmul(G.elements, h[None, :], ctx)) for h in H.generators]
    return _orbits(G.order, targets)


def double_cosets(H1: SubgroupTable, H2: SubgroupTable, G: SubgroupTable) -> Partition:
    """Partition of G into double cosets H1 g H2."""
    ctx = G.ctx
    targets = [G.index_of(gmul(h[None, :], G.elements, ctx)) for h in H1.generators]
    targets += [G.index_of(gmul(G.elements, h[None, :], ctx)) for h in H2.generators]
    return _orbits(G.order, targets)


def conjugacy_classes(G: SubgroupTable) -> ConjClasses:
    """Classes as orbits of conjugation by the generators of G."""
    ctx = G.ctx
    targets = [G.index_of(conjugate_by(s[None, :], G.elements, ctx)) for s in G.generators]
    part = _orbits(G.order, targets)
    logger.debug(f"{G.label}: {part.count} conjugacy classes")
    return ConjClasses(
        class_of=part.orbit_of,
        representatives=part.representatives,
        sizes=part.sizes,
    )


def bruhat_cells(K: SubgroupTable, B: Optional[SubgroupTable] = None) -> Dict:
    """
    Check that I, w and the lower unipotents g_k (k = 1..N-1) represent B\\K/B.

    Returns:
        Dict with the partition, the representative rows and whether they are
        pairwise distinct and exhaustive
    """
    ctx = K.ctx
    B = B or named_subgroup(K, 'Borel')
    part = double_cosets(B, B, K)
    reps = [identity(ctx), weyl(ctx)] + [lower(ctx, ctx.p ** k) for k in range(1, ctx.N)]
    rep_rows = np.concatenate(reps)
    ids = part.orbit_of[K.index_of(rep_rows)]
    return {
        'partition': part,
        'representatives': rep_rows,
        'distinct': len(set(ids.tolist())) == len(reps),
        'exhaustive': part.count == len(reps),
    }


def index_formula_check(K: SubgroupTable) -> Dict:
    """Enumerated indices against the closed formulas for [K : BK_n], [B : B_1] and |K/K_1|."""
    ctx = K.ctx
    q = ctx.q
    B = named_subgroup(K, 'Borel')
    indices = []
    for n in range(1, ctx.N + 1):
        BK = named_subgroup(K, 'BorelK', n=n)
        indices.append({
            'n': n,
            'index': K.order // BK.order,
            'formula': (q + 1) * q ** (n - 1),
        })
    B1 = B.restrict(subgroup_mask(B.elements, 'Filtration', ctx, m=1), "Borel_1")
    level_one = K.order // filtration_subgroup(K, 1).order if ctx.N > 1 else K.order
    return {
        'borel_indices': indices,
        'borel_over_borel_1': B.order // B1.order,
        'borel_formula': q * (q * q - 1),
        'level_one_order': level_one,
        'order_q_qplus1_qminus1_sq': q * (q + 1) * (q - 1) ** 2,
        'order_q_qminus1_qplus1_sq': q * (q - 1) * (q + 1) ** 2,
    }


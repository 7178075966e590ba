"""Characters of finite abelian groups, of the torus T_0/T_N and of J_d.

Characters of an abelian table are exponent vectors against an
``AbelianStructure`` (generators in elementary-divisor form). Characters that
live on non-abelian or non-enumerated domains (Psi_X, its extensions, phi o det
on K) are ``TableChar`` objects: one value per row of a table.
"""

from dataclasses import dataclass
from itertools import product
from math import gcd, lcm
from typing import Iterator, List, Optional, Tuple

import numpy as np

from unitary_branching.algebra.group import (
    ProductSet,
    SubgroupTable,
    determinant,
    enumerate_torus,
    ginv,
    gmul,
    identity,
    subgroup_mask,
)
from unitary_branching.algebra.liealg import LieElem
from unitary_branching.algebra.ring import RingCtx, qconj, qinv, root_of_unity
from unitary_branching.core.errors import (
    CharacterError,
    GroupError,
    IncompatibleOnIntersection,
    InvalidParameter,
    LevelTooLow,
    NotAbelian,
    NotRealizable,
    NotSubgroup,
    TrueDepthTooBig,
)
from unitary_branching.utils.logger import get_logger

logger = get_logger("algebra.chars")

TOLERANCE = 1e-9


def element_power(X: np.ndarray, e: int, ctx: RingCtx) -> np.ndarray:
    """Row-wise X^e for e >= 0 by square and multiply."""
    result = np.repeat(identity(ctx), len(np.atleast_2d(X)), axis=0)
    base = np.atleast_2d(X)
    while e:
        if e & 1:
            result = gmul(result, base, ctx)
        base = gmul(base, base, ctx)
        e >>= 1
    return result


# Abelian structure


@dataclass
class AbelianStructure:
    """Elementary-divisor decomposition of an abelian table."""

    group: SubgroupTable
    generators: np.ndarray
    orders: Tuple[int, ...]
    coords: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    def coordinates(self, X: np.ndarray) -> np.ndarray:
        idx = self.group.index_of(X)
        if (idx < 0).any():
            raise NotSubgroup(f"element outside {self.group.label}")
        return self.coords[idx]


def _quotient_orders(H: SubgroupTable, in_span: np.ndarray) -> np.ndarray:
    """Order of each element modulo the current span."""
    ctx = H.ctx
    orders = np.ones(H.order, dtype=np.int64)
    pending = np.flatnonzero(~in_span)
    base = H.elements[pending]
    power = base.copy()
    m = 1
    while len(pending):
        power = gmul(power, base, ctx)
        m += 1
        if m > H.order:
            raise GroupError(f"{H.label}: element order exceeds the group order")
        hit = in_span[H.index_of(power)]
        orders[pending[hit]] = m
        pending, base, power = pending[~hit], base[~hit], power[~hit]
    return orders


def abelian_structure(H: SubgroupTable) -> AbelianStructure:
    """
    Decompose an abelian table as a product of cyclic groups.

    Picks the first element of largest order modulo the current span,
    corrects it by a span element so that its order equals that quotient
    order, and adjoins the resulting cyclic factor.

    Raises:
        NotAbelian: generators of H do not commute
    """
    if not H.is_abelian():
        raise NotAbelian(f"{H.label} is not abelian")
    ctx = H.ctx
    n = H.order
    in_span = np.zeros(n, dtype=bool)
    in_span[H.identity_index] = True
    coords = np.zeros((n, 0), dtype=np.int64)
    gens: List[np.ndarray] = []
    orders: List[int] = []

    while not in_span.all():
        qord = _quotient_orders(H, in_span)
        i = int(np.argmax(qord))
        m = int(qord[i])
        h = H.elements[i:i + 1]
        target = coords[H.index_of(element_power(h, m, ctx))[0]]

        # Solve t^m = h^m inside the span
        t = identity(ctx)
        for g, n_j, c in zip(gens, orders, target.tolist()):
            g_ = gcd(m, n_j)
            if c % g_:
                raise GroupError(f"{H.label}: no cyclic complement found")
            x = (c // g_) * pow(m // g_, -1, n_j // g_) % (n_j // g_) if n_j // g_ > 1 else 0
            t = gmul(t, element_power(g[None, :], x, ctx), ctx)
        h = gmul(h, ginv(t, ctx), ctx)

        span_idx = np.flatnonzero(in_span)
        new_coords = np.zeros((n, coords.shape[1] + 1), dtype=np.int64)
        new_in = np.zeros(n, dtype=bool)
        current = H.elements[span_idx]
        for j in range(m):
            idx = H.index_of(current)
            new_coords[idx, :-1] = coords[span_idx]
            new_coords[idx, -1] = j
            new_in[idx] = True
            current = gmul(current, h, ctx)
        coords, in_span = new_coords, new_in
        gens.append(h[0])
        orders.append(m)

    generators = np.array(gens, dtype=np.int64).reshape(-1, 8)
    logger.debug(f"{H.label}: abelian invariants {orders}")
    return AbelianStructure(H, generators, tuple(orders), coords)


class MultChar:
    """Character of an abelian table: value exp(2 pi i e_j / n_j) on generator j."""

    def __init__(self, base: AbelianStructure, exponents, label: Optional[str] = None):
        self.base = base
        self.exponents = tuple(int(e) % n for e, n in zip(exponents, base.orders))
        self.label = label or f"chi{list(self.exponents)}"
        self._values: Optional[np.ndarray] = None

    def __repr__(self) -> str:
        return f"MultChar({self.base.group.label}, {list(self.exponents)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultChar):
            return NotImplemented
        return self.base is other.base and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash((id(self.base), self.exponents))

    def phases(self) -> np.ndarray:
        """Integer numerators over the common denominator base.exponent."""
        L = self.base.exponent
        weights = np.array(
            [e * (L // n) for e, n in zip(self.exponents, self.base.orders)], dtype=np.int64
        )
        return (self.base.coords @ weights) % L if self.base.rank else np.zeros(
            self.base.group.order, dtype=np.int64
        )

    def values(self) -> np.ndarray:
        if self._values is None:
            self._values = root_of_unity(self.phases(), self.base.exponent)
        return self._values

    def __call__(self, X: np.ndarray) -> np.ndarray:
        idx = self.base.group.index_of(X)
        if (idx < 0).any():
            raise NotSubgroup(f"element outside {self.base.group.label}")
        return self.values()[idx]

    def __mul__(self, other: 'MultChar') -> 'MultChar':
        return MultChar(self.base, [a + b for a, b in zip(self.exponents, other.exponents)])

    def __pow__(self, k: int) -> 'MultChar':
        return MultChar(self.base, [k * e for e in self.exponents])

    def inverse(self) -> 'MultChar':
        return self ** -1

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def order(self) -> int:
        return lcm(*(n // gcd(e, n) for e, n in zip(self.exponents, self.base.orders))) \
            if self.exponents else 1

    def trivial_on(self, mask: np.ndarray) -> bool:
        return bool((self.phases()[mask] == 0).all())

    @classmethod
    def from_values(cls, base: AbelianStructure, values: np.ndarray,
                    label: Optional[str] = None) -> 'MultChar':
        """
        Recover exponents from a value per element of the base table.

        Raises:
            CharacterError: values are not those of a character
        """
        gen_idx = base.group.index_of(base.generators)
        angles = np.angle(values[gen_idx]) if base.rank else np.array([])
        exps = [int(round(a * n / (2 * np.pi))) % n for a, n in zip(angles, base.orders)]
        chi = cls(base, exps, label)
        if not np.allclose(chi.values(), values, atol=1e-6):
            raise CharacterError(f"values on {base.group.label} are not a character")
        return chi


def all_characters(base: AbelianStructure) -> Iterator[MultChar]:
    """Every character, exponent vectors in lexicographic order."""
    for exps in product(*(range(n) for n in base.orders)):
        yield MultChar(base, exps)


# Characters on arbitrary tables


@dataclass
class TableChar:
    """A function given by one value per element of a table."""

    group: SubgroupTable
    values: np.ndarray
    label: str = ''

    def __call__(self, X: np.ndarray) -> np.ndarray:
        idx = self.group.index_of(X)
        if (idx < 0).any():
            raise NotSubgroup(f"element outside {self.group.label}")
        return self.values[idx]

    def __mul__(self, other: 'TableChar') -> 'TableChar':
        return TableChar(self.group, self.values * other.values, f"{self.label}*{other.label}")


def check_homomorphism(chi: TableChar, samples: int = 200, seed: int = 0) -> float:
    """Largest |chi(xy) - chi(x)chi(y)| over random pairs."""
    G = chi.group
    rng = np.random.default_rng(seed)
    pairs = rng.integers(0, G.order, size=(samples, 2))
    x, y = G.elements[pairs[:, 0]], G.elements[pairs[:, 1]]
    xy = gmul(x, y, G.ctx)
    return float(np.max(np.abs(chi(xy) - chi(x) * chi(y)))) if samples else 0.0


# The torus


@dataclass
class DepthProfile:
    depth: int
    true_depth: int
    minimal: bool
    trivial: bool = False


@dataclass
class CentralReduction:
    """chi = (phi o det) * chi0 with chi0|_Z = representative^k."""

    phi: MultChar
    chi0: MultChar
    k: int
    representative: MultChar


class TorusData:
    """T_0/T_N with its center Z and the determinant map into Z."""

    def __init__(self, ctx: RingCtx, table: Optional[SubgroupTable] = None):
        self.ctx = ctx
        self.table = table if table is not None else enumerate_torus(ctx)
        self.structure = abelian_structure(self.table)
        self.center = self.table.restrict(
            subgroup_mask(self.table.elements, 'Center', ctx), 'Center'
        )
        self.center_structure = abelian_structure(self.center)
        det0, det1 = determinant(self.table.elements, ctx)
        self.det_index = self.center.index_of(_scalar_rows(det0, det1))

    def filt_mask(self, m: int) -> np.ndarray:
        """T_m inside T_0/T_N."""
        if m <= 0:
            return np.ones(self.table.order, dtype=bool)
        return subgroup_mask(self.table.elements, 'TorusFilt', self.ctx, m=m)

    def split_mask(self, m: int) -> np.ndarray:
        """S_m inside T_0/T_N."""
        if m <= 0:
            return subgroup_mask(self.table.elements, 'SplitTorus0', self.ctx)
        return subgroup_mask(self.table.elements, 'SplitFilt', self.ctx, m=m)

    def characters(self) -> Iterator[MultChar]:
        return all_characters(self.structure)

    def center_characters(self) -> Iterator[MultChar]:
        return all_characters(self.center_structure)

    def character(self, exponents) -> MultChar:
        return MultChar(self.structure, exponents)

    def trivial(self) -> MultChar:
        return MultChar(self.structure, [0] * self.structure.rank, "trivial")

    def center_trivial(self) -> MultChar:
        return MultChar(self.center_structure, [0] * self.center_structure.rank, "trivial")

    def restrict_to_center(self, chi: MultChar) -> MultChar:
        return MultChar.from_values(self.center_structure, chi(self.center.elements))

    def det_values(self, phi: MultChar) -> np.ndarray:
        """(phi o det) on every element of T_0/T_N."""
        return phi.values()[self.det_index]

    def twist(self, chi: MultChar, phi: MultChar, power: int = 1) -> MultChar:
        """chi * (phi o det)^power."""
        return MultChar.from_values(self.structure, chi.values() * self.det_values(phi) ** power)

    def values_at_a(self, chi: MultChar, a0: np.ndarray, a1: np.ndarray) -> np.ndarray:
        """chi(diag(a, conj(a)^-1)) for unit components a0 + a1*omega."""
        M = self.ctx.modulus
        a0, a1 = np.asarray(a0) % M, np.asarray(a1) % M
        d0, d1 = qinv(*qconj(a0, a1, self.ctx), self.ctx)
        zeros = np.zeros_like(a0)
        rows = np.stack([a0, a1, zeros, zeros, zeros, zeros, d0, d1], axis=1)
        return chi(rows)

    def values_at_z(self, theta: MultChar, z0: np.ndarray, z1: np.ndarray) -> np.ndarray:
        """theta(diag(z, z)) for norm-one z."""
        return theta(_scalar_rows(np.asarray(z0) % self.ctx.modulus,
                                  np.asarray(z1) % self.ctx.modulus))


def _scalar_rows(z0: np.ndarray, z1: np.ndarray) -> np.ndarray:
    zeros = np.zeros_like(z0)
    return np.stack([z0, z1, zeros, zeros, zeros, zeros, z0, z1], axis=1).astype(np.int64)


def depth_profile(chi: MultChar, torus: TorusData) -> DepthProfile:
    """Depth on the T_m chain and true depth on the S_m chain."""
    N = torus.ctx.N
    depth = next(r for r in range(N) if chi.trivial_on(torus.filt_mask(r + 1)))
    true_depth = next(r for r in range(N) if chi.trivial_on(torus.split_mask(r + 1)))
    trivial = chi.is_trivial()
    return DepthProfile(depth, true_depth, depth == true_depth, trivial)


def phi_det_solve(chi: MultChar, m: int, torus: TorusData) -> MultChar:
    """
    Lexicographically first phi on Z with phi o det = chi on T_{m+1}.

    m = -1 asks for agreement on all of T_0.

    Raises:
        TrueDepthTooBig: chi is nontrivial on S_{m+1}
    """
    if not chi.trivial_on(torus.split_mask(m + 1)):
        raise TrueDepthTooBig(f"{chi.label} is nontrivial on S_{m + 1}")
    mask = torus.filt_mask(m + 1)
    target = chi.values()[mask]
    for phi in torus.center_characters():
        if np.allclose(torus.det_values(phi)[mask], target, atol=TOLERANCE):
            return phi
    raise NotRealizable(f"no phi o det matches {chi.label} on T_{m + 1}")


def minimal_depth_factorization(chi: MultChar, torus: TorusData) -> Tuple[MultChar, MultChar]:
    """chi = (phi o det) * chi_min with chi_min of minimal depth."""
    if chi.trivial_on(torus.split_mask(0)):
        return phi_det_solve(chi, -1, torus), torus.trivial()
    profile = depth_profile(chi, torus)
    if profile.minimal:
        return torus.center_trivial(), chi
    phi = phi_det_solve(chi, profile.true_depth, torus)
    return phi, torus.twist(chi, phi, power=-1)


def delta(torus: TorusData) -> MultChar:
    """The unique character of order 2 of Z."""
    found = [t for t in torus.center_characters() if t.order() == 2]
    if len(found) != 1:
        raise CharacterError(f"expected one quadratic character of Z, found {len(found)}")
    found[0].label = "delta"
    return found[0]


def _is_square(theta: MultChar, torus: TorusData) -> bool:
    return any(phi ** 2 == theta for phi in torus.center_characters())


def central_representative(torus: TorusData) -> MultChar:
    """delta when it is a non-square, otherwise the first non-square of 2-power order."""
    dlt = delta(torus)
    if not _is_square(dlt, torus):
        return dlt
    for theta in torus.center_characters():
        order = theta.order()
        if order & (order - 1) == 0 and not _is_square(theta, torus):
            theta.label = "eta"
            return theta
    raise CharacterError("no non-square character of 2-power order on Z")


def central_reduction(chi: MultChar, torus: TorusData) -> CentralReduction:
    """
    Twist chi by phi o det so the central character becomes trivial or a fixed non-square.

    (phi o det)|_Z = phi^2, so chi0|_Z = theta * phi^-2.
    """
    theta = torus.restrict_to_center(chi)
    rep = central_representative(torus)
    for phi in torus.center_characters():
        reduced = theta * phi ** -2
        if reduced.is_trivial() or reduced == rep:
            k = 0 if reduced.is_trivial() else 1
            chi0 = torus.twist(chi, phi, power=-1)
            return CentralReduction(phi=phi, chi0=chi0, k=k, representative=rep)
    raise CharacterError(f"central character of {chi.label} not reducible")


def delta_extension(torus: TorusData) -> MultChar:
    """First depth-zero character of T_0 whose central restriction is delta."""
    dlt = delta(torus)
    level_one = torus.filt_mask(1)
    for chi in torus.characters():
        if chi.trivial_on(level_one) and torus.restrict_to_center(chi) == dlt:
            chi.label = "delta-ext"
            return chi
    raise NotRealizable("delta has no depth-zero extension")


def det_character(phi: MultChar, G: SubgroupTable, torus: TorusData) -> TableChar:
    """phi o det on every element of G."""
    det0, det1 = determinant(G.elements, G.ctx)
    return TableChar(G, torus.values_at_z(phi, det0, det1), f"{phi.label}.det")


# Characters of J_d


def psi_X_char(X: LieElem, J: SubgroupTable) -> TableChar:
    """
    Psi_X(k) = psi(Tr(X(k - I))) on the rows of J.

    Raises:
        LevelTooLow: the level cannot resolve p^(-shift) O_F modulo O_F
    """
    ctx = J.ctx
    e = X.shift
    if ctx.N < e + 1:
        raise LevelTooLow(f"Psi_X at shift {e} needs N >= {e + 1}")
    shifted = (J.elements - identity(ctx)) % ctx.modulus
    prod = gmul(X.row, shifted, ctx)
    window = ctx.p ** (e + 1)
    trace0 = (prod[:, 0] + prod[:, 6]) % window
    return TableChar(J, root_of_unity(trace0, window), "Psi_X")


def extend_Psi_X_zeta(psi: TableChar, zeta: TableChar, product_table: ProductSet) -> TableChar:
    """
    The character t*j -> zeta(t) Psi_X(j) of T(X)J_d.

    Raises:
        IncompatibleOnIntersection: zeta and Psi_X differ on T(X) meet J_d
    """
    T, J = zeta.group, psi.group
    ctx = T.ctx
    overlap = J.contains(T.elements)
    if overlap.any():
        shared = T.elements[overlap]
        gap = np.abs(zeta(shared) - psi(shared))
        if gap.max() > 1e-6:
            raise IncompatibleOnIntersection(
                f"zeta and Psi_X differ by {gap.max():.3g} on T(X) meet J"
            )

    table = product_table.table
    reps = product_table.reps[product_table.coset_of]
    j = gmul(ginv(reps, ctx), table.elements, ctx)
    values = zeta(reps) * psi(j)
    return TableChar(table, values, f"Psi_X,{zeta.label}")


# Selectors

NAMED_SELECTORS = ('trivial', 'delta-ext', 'depth1-first', 'all')


def depth_one_first(torus: TorusData) -> MultChar:
    """First minimal depth-1 character whose central character has depth zero."""
    center_one = subgroup_mask(torus.center.elements, 'TorusFilt', torus.ctx, m=1)
    for chi in torus.characters():
        profile = depth_profile(chi, torus)
        if profile.depth == 1 and profile.minimal:
            if torus.restrict_to_center(chi).trivial_on(center_one):
                chi.label = "depth1-first"
                return chi
    raise NotRealizable(f"no minimal depth-1 character at N={torus.ctx.N}")


def select_characters(torus: TorusData, selector: str) -> List[MultChar]:
    """
    Characters named by a selector: a symbolic name or comma-separated exponents.

    Raises:
        InvalidParameter: unknown selector or wrong number of exponents
    """
    if selector == 'trivial':
        return [torus.trivial()]
    if selector == 'delta-ext':
        return [delta_extension(torus)]
    if selector == 'depth1-first':
        return [depth_one_first(torus)]
    if selector == 'all':
        return list(torus.characters())
    try:
        exponents = [int(part) for part in selector.split(',')]
    except ValueError:
        raise InvalidParameter(
            f"selector must be one of {NAMED_SELECTORS} or exponents, got {selector!r}"
        )
    if len(exponents) != torus.structure.rank:
        raise InvalidParameter(
            f"expected {torus.structure.rank} exponents for orders "
            f"{list(torus.structure.orders)}, got {len(exponents)}"
        )
    return [torus.character(exponents)]

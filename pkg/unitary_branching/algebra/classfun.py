"""Class functions on enumerated groups: induction, restriction, inner products."""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Union

import numpy as np

from unitary_branching.algebra.chars import TableChar
from unitary_branching.algebra.group import (
    SubgroupTable,
    closure,
    double_cosets,
    filtration_subgroup,
    ginv,
    gmul,
    identity,
    left_cosets,
)
from unitary_branching.core.errors import (
    BasisNotOrthonormal,
    GroupMismatch,
    NotSubgroup,
)
from unitary_branching.utils.logger import get_logger

logger = get_logger("algebra.classfun")

INTEGRALITY = 1e-6

ElementValues = Union[np.ndarray, TableChar, Callable[[np.ndarray], np.ndarray]]


@dataclass
class ClassFunction:
    """One complex value per conjugacy class of ``group``."""

    group: SubgroupTable
    values: np.ndarray
    label: str = ''

    @classmethod
    def zero(cls, group: SubgroupTable, label: str = 'zero') -> 'ClassFunction':
        count = group.conjugacy_classes().count
        return cls(group, np.zeros(count, dtype=complex), label)

    @classmethod
    def trivial(cls, group: SubgroupTable) -> 'ClassFunction':
        count = group.conjugacy_classes().count
        return cls(group, np.ones(count, dtype=complex), 'trivial')

    @classmethod
    def from_element_values(
        cls, group: SubgroupTable, values: np.ndarray, label: str = '', check: bool = True
    ) -> 'ClassFunction':
        classes = group.conjugacy_classes()
        values = np.asarray(values, dtype=complex)
        on_reps = values[classes.representatives]
        if check and not np.allclose(on_reps[classes.class_of], values, atol=INTEGRALITY):
            raise ValueError(f"{label or 'function'} is not constant on classes of {group.label}")
        return cls(group, on_reps, label)

    def element_values(self) -> np.ndarray:
        return self.values[self.group.conjugacy_classes().class_of]

    @property
    def degree(self) -> float:
        classes = self.group.conjugacy_classes()
        return float(self.values[classes.class_of[self.group.identity_index]].real)

    def _check(self, other: 'ClassFunction') -> None:
        if other.group is not self.group and not other.group.same_set(self.group):
            raise GroupMismatch(f"{self.group.label} vs {other.group.label}")

    def __add__(self, other: 'ClassFunction') -> 'ClassFunction':
        self._check(other)
        return ClassFunction(self.group, self.values + other.values, f"{self.label}+{other.label}")

    def __sub__(self, other: 'ClassFunction') -> 'ClassFunction':
        self._check(other)
        return ClassFunction(self.group, self.values - other.values, f"{self.label}-{other.label}")

    def __neg__(self) -> 'ClassFunction':
        return ClassFunction(self.group, -self.values, f"-{self.label}")

    def __mul__(self, scalar) -> 'ClassFunction':
        return ClassFunction(self.group, self.values * scalar, self.label)

    __rmul__ = __mul__

    def conj(self) -> 'ClassFunction':
        return ClassFunction(self.group, self.values.conj(), f"conj({self.label})")

    def relabel(self, label: str) -> 'ClassFunction':
        return ClassFunction(self.group, self.values, label)


def _element_values(H: SubgroupTable, chi: ElementValues) -> np.ndarray:
    if isinstance(chi, np.ndarray):
        if len(chi) != H.order:
            raise ValueError(f"expected {H.order} values on {H.label}, got {len(chi)}")
        return chi.astype(complex)
    return np.asarray(chi(H.elements), dtype=complex)


def inner_product(f1: ClassFunction, f2: ClassFunction) -> complex:
    """(1/|G|) sum over classes of |C| f1(C) conj(f2(C))."""
    f1._check(f2)
    sizes = f1.group.conjugacy_classes().sizes
    return complex(np.sum(sizes * f1.values * np.conj(f2.values)) / f1.group.order)


def norm_sq(f: ClassFunction) -> float:
    return inner_product(f, f).real


def is_irreducible(f: ClassFunction, tol: float = INTEGRALITY) -> bool:
    return abs(inner_product(f, f) - 1) < tol and f.degree > 0


def induce(H: SubgroupTable, chi_H: ElementValues, G: SubgroupTable,
           label: str = '') -> ClassFunction:
    """
    Frobenius formula over a left transversal of G/H, at class representatives of G.

    Raises:
        NotSubgroup: H is not contained in G
    """
    if not G.contains_table(H):
        raise NotSubgroup(f"{H.label} is not contained in {G.label}")
    ctx = G.ctx
    chi = _element_values(H, chi_H)
    classes = G.conjugacy_classes()
    reps = G.elements[classes.representatives]
    transversal = G.elements[left_cosets(G, H).representatives]

    values = np.zeros(len(reps), dtype=complex)
    for t in transversal:
        t_row = t[None, :]
        conj = gmul(gmul(ginv(t_row, ctx), reps, ctx), t_row, ctx)
        idx = H.index_of(conj)
        inside = idx >= 0
        values[inside] += chi[idx[inside]]

    logger.debug(f"Ind {H.label} -> {G.label}: index {len(transversal)}")
    return ClassFunction(G, values, label or f"Ind({H.label})")


def restrict(f: ClassFunction, H: SubgroupTable) -> ClassFunction:
    """Pointwise restriction, re-bucketed into the classes of H."""
    G = f.group
    if not G.contains_table(H):
        raise NotSubgroup(f"{H.label} is not contained in {G.label}")
    reps = H.elements[H.conjugacy_classes().representatives]
    values = f.element_values()[G.index_of(reps)]
    return ClassFunction(H, values, f"Res({f.label})")


def rep_depth(f: ClassFunction) -> int:
    """Least d with f constant (= f(1)) on K_{d+1}; f lives on K/K_N."""
    K = f.group
    ctx = K.ctx
    values = f.element_values()
    at_one = values[K.identity_index]
    for d in range(ctx.N):
        sub = filtration_subgroup(K, d + 1)
        if np.allclose(values[K.index_of(sub.elements)], at_one, atol=INTEGRALITY):
            return d
    return ctx.N


def twist(f: ClassFunction, lam: Union[ClassFunction, TableChar]) -> ClassFunction:
    """Pointwise product with a one-dimensional character of the same group."""
    G = f.group
    if isinstance(lam, ClassFunction):
        f._check(lam)
        lam_values = lam.values
    else:
        lam_values = lam(G.elements[G.conjugacy_classes().representatives])
    label = f"{f.label}x{getattr(lam, 'label', '')}"
    return ClassFunction(G, f.values * lam_values, label)


@dataclass
class Decomposition:
    multiplicities: List[float]
    remainder: ClassFunction
    residual: float
    near_integral: bool = field(default=True)


def decompose(f: ClassFunction, basis: Sequence[ClassFunction],
              tol: float = INTEGRALITY) -> Decomposition:
    """
    Multiplicities of orthonormal irreducibles in f, with the remainder.

    Raises:
        BasisNotOrthonormal: the Gram matrix of the basis is not the identity
    """
    for i, b1 in enumerate(basis):
        for j, b2 in enumerate(basis):
            target = 1.0 if i == j else 0.0
            if abs(inner_product(b1, b2) - target) > tol:
                raise BasisNotOrthonormal(f"<{b1.label}, {b2.label}> != {target}")

    multiplicities: List[float] = []
    remainder = f
    for b in basis:
        m = inner_product(f, b)
        multiplicities.append(m.real)
        remainder = remainder - b * m
    near_integral = all(abs(m - round(m)) < tol for m in multiplicities)
    return Decomposition(
        multiplicities=multiplicities,
        remainder=remainder.relabel(f"rem({f.label})"),
        residual=float(np.sqrt(max(norm_sq(remainder), 0.0))),
        near_integral=near_integral,
    )


def mackey_intertwining_count(H: SubgroupTable, chi_H: ElementValues, G: SubgroupTable) -> int:
    """Double cosets HgH on which chi and chi^g agree on H meet gHg^-1."""
    ctx = G.ctx
    chi = _element_values(H, chi_H)
    part = double_cosets(H, H, G)
    count = 0
    for g in G.elements[part.representatives]:
        g_row = g[None, :]
        conj = gmul(gmul(ginv(g_row, ctx), H.elements, ctx), g_row, ctx)
        idx = H.index_of(conj)
        shared = idx >= 0
        if np.allclose(chi[shared], chi[idx[shared]], atol=INTEGRALITY):
            count += 1
    return count


def fixed_dimension(f: ClassFunction, sub: SubgroupTable) -> float:
    """Dimension of the sub-fixed vectors: the mean of f over sub."""
    G = f.group
    idx = G.index_of(sub.elements)
    if (idx < 0).any():
        raise NotSubgroup(f"{sub.label} is not contained in {G.label}")
    return float(f.element_values()[idx].mean().real)


# Irreducibles of small groups


def _class_sum_apply(G: SubgroupTable, class_values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """(T f)(x) = sum over c in G of weights[class(c)] * f(c x), at class representatives."""
    classes = G.conjugacy_classes()
    f = class_values[classes.class_of]
    w = weights[classes.class_of]
    out = np.empty(classes.count, dtype=complex)
    for i, rep in enumerate(classes.representatives):
        idx = G.index_of(gmul(G.elements, G.elements[rep:rep + 1], G.ctx))
        out[i] = np.sum(w * f[idx])
    return out


def _normalize_character(G: SubgroupTable, values: np.ndarray) -> ClassFunction:
    f = ClassFunction(G, values)
    f = f * (1 / np.sqrt(norm_sq(f)))
    one = f.values[G.conjugacy_classes().class_of[G.identity_index]]
    return f * (abs(one) / one)


def cyclic_inductions(G: SubgroupTable):
    """Inductions of every character of every cyclic subgroup <g>, g a class representative."""
    ctx = G.ctx
    for rep in G.conjugacy_classes().representatives:
        C = closure(ctx, G.elements[rep:rep + 1], f"<g{rep}>")
        m = C.order
        powers = [identity(ctx)]
        for _ in range(m - 1):
            powers.append(gmul(powers[-1], G.elements[rep:rep + 1], ctx))
        position = C.index_of(np.concatenate(powers))
        for j in range(m):
            values = np.empty(m, dtype=complex)
            values[position] = np.exp(2j * np.pi * j * np.arange(m) / m)
            yield induce(C, values, G, f"Ind(<g{rep}>,{j})")


@dataclass
class Harvest:
    irreducibles: List[ClassFunction]
    column_residual: float
    complete: bool


def column_orthogonality_residual(G: SubgroupTable, irreducibles: Sequence[ClassFunction]) -> float:
    """max | sum_chi chi(g_i) conj(chi(g_j)) - delta_ij |C_G(g_i)| |."""
    classes = G.conjugacy_classes()
    table = np.array([chi.values for chi in irreducibles])
    gram = table.T @ table.conj()
    expected = np.diag(G.order / classes.sizes)
    return float(np.max(np.abs(gram - expected)))


def harvest_irreducibles(
    G: SubgroupTable,
    linear: Sequence[ClassFunction] = (),
    seed: int = 0,
) -> Harvest:
    """
    Irreducible characters of G from inductions of cyclic characters.

    Norm-one remainders after projecting out known irreducibles are kept
    directly. Whatever is left is split by the eigenvectors of a random
    combination of class-sum operators on the remaining span.
    """
    classes = G.conjugacy_classes()
    irreps: List[ClassFunction] = []
    leftover: Optional[ClassFunction] = None

    def reduce(f: ClassFunction) -> ClassFunction:
        for chi in irreps:
            f = f - chi * inner_product(f, chi)
        return f

    candidates = list(linear)
    for f in candidates + list(cyclic_inductions(G)):
        if len(irreps) == classes.count:
            break
        rem = reduce(f)
        size = norm_sq(rem)
        if abs(size - 1) < INTEGRALITY and rem.degree > 0:
            irreps.append(rem.relabel(f"irr{len(irreps)}"))
        elif size > INTEGRALITY:
            leftover = rem if leftover is None else leftover + rem

    missing = classes.count - len(irreps)
    if missing and leftover is not None:
        rng = np.random.default_rng(seed)
        weights = rng.standard_normal(classes.count)
        scale = np.sqrt(classes.sizes / G.order)
        start = reduce(leftover).values * scale

        # Arnoldi basis of the operator's cyclic space
        basis = [start / np.linalg.norm(start)]
        while len(basis) < missing:
            nxt = _class_sum_apply(G, basis[-1] / scale, weights) * scale
            for q in basis:
                nxt = nxt - np.vdot(q, nxt) * q
            size = np.linalg.norm(nxt)
            if size < 1e-8:
                break
            basis.append(nxt / size)
        Q = np.stack(basis, axis=1)
        images = np.stack(
            [_class_sum_apply(G, Q[:, k] / scale, weights) * scale for k in range(Q.shape[1])],
            axis=1,
        )
        _, vectors = np.linalg.eig(Q.conj().T @ images)
        for v in vectors.T:
            chi = _normalize_character(G, (Q @ v) / scale)
            if is_irreducible(chi):
                irreps.append(chi.relabel(f"irr{len(irreps)}"))

    irreps.sort(key=lambda chi: round(chi.degree))
    complete = len(irreps) == classes.count
    residual = column_orthogonality_residual(G, irreps) if complete else float('inf')
    logger.info(f"{G.label}: {len(irreps)}/{classes.count} irreducibles harvested")
    return Harvest(irreps, residual, complete)

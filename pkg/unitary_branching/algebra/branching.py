"""Branching of principal series of U(1,1) to K, verified inside K/K_N.

Every function takes a ``Session`` (tables, torus data and named subgroups
for one level) and returns class functions or plain verification records.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from unitary_branching.algebra.chars import (
    DepthProfile,
    MultChar,
    TableChar,
    TorusData,
    central_reduction,
    depth_profile,
    det_character,
    extend_Psi_X_zeta,
    minimal_depth_factorization,
    psi_X_char,
)
from unitary_branching.algebra.classfun import (
    ClassFunction,
    fixed_dimension,
    induce,
    inner_product,
    mackey_intertwining_count,
    norm_sq,
    rep_depth,
    restrict,
    twist,
)
from unitary_branching.algebra.group import (
    SubgroupTable,
    conjugate_by,
    filtration_subgroup,
    ginv,
    gmul,
    product_set,
    torus,
)
from unitary_branching.algebra.liealg import (
    LieElem,
    NilpotentLabel,
    centralizer_TX,
    nilpotent_X,
)
from unitary_branching.algebra.ring import (
    QuadRingElem,
    RingCtx,
    ShiftedElem,
    base_inv,
    qmul,
    qnorm,
)
from unitary_branching.core.errors import (
    DecompositionResidual,
    DepthTooLow,
    ExpansionMismatch,
    IdentificationFailed,
    InvalidParameter,
    IrreducibilityFailed,
    LevelTooLow,
    NotRealizable,
)
from unitary_branching.utils.logger import get_logger

logger = get_logger("algebra.branching")

TOLERANCE = 1e-6

UNIT_PARITY = 'unit'
UNIFORMIZER_PARITY = 'uniformizer'


@dataclass
class PrincipalSeriesSpec:
    """A character of T_0/T_N with its depth profile and central character."""

    chi: MultChar
    profile: DepthProfile
    theta: MultChar

    @classmethod
    def of(cls, chi: MultChar, torus_data: TorusData) -> 'PrincipalSeriesSpec':
        return cls(chi, depth_profile(chi, torus_data), torus_data.restrict_to_center(chi))


@dataclass
class Component:
    """One summand of a truncated principal series."""

    label: str
    character: ClassFunction
    degree: int
    depth: int
    datum: Dict[str, Any]
    multiplicity: int = 1


@dataclass
class GammaDatum:
    """Gamma = diag(x, -conj(x)) with x = p^-r * body, plus the data of Y_chi at depth d."""

    x: ShiftedElem
    r: int
    hits: int
    d: Optional[int] = None
    gamma: Optional[QuadRingElem] = None
    g_prime: Optional[np.ndarray] = None


@dataclass
class YDatum:
    Y: LieElem
    T: SubgroupTable
    zeta: TableChar
    gamma: GammaDatum
    rho: int


@dataclass
class DecompositionCertificate:
    chi: str
    exponents: Tuple[int, ...]
    p: int
    epsilon: int
    N: int
    profile: DepthProfile
    twist: Tuple[int, ...]
    components: List[Component]
    residual: float
    rung: str = 'full'
    tags: List[str] = field(default_factory=list)

    @property
    def degrees(self) -> List[int]:
        return [c.degree for c in self.components]

    def to_record(self, include_values: bool = False) -> Dict[str, Any]:
        components = []
        for c in self.components:
            entry = {
                'label': c.label,
                'degree': c.degree,
                'depth': c.depth,
                'multiplicity': c.multiplicity,
                'datum': c.datum,
            }
            if include_values:
                G = c.character.group
                reps = G.elements[G.conjugacy_classes().representatives]
                entry['values'] = [
                    [row.tolist(), value] for row, value in zip(reps, c.character.values)
                ]
            components.append(entry)
        return {
            'kind': 'decomposition',
            'chi': self.chi,
            'exponents': list(self.exponents),
            'p': self.p,
            'epsilon': self.epsilon,
            'N': self.N,
            'depth': self.profile.depth,
            'true_depth': self.profile.true_depth,
            'minimal': self.profile.minimal,
            'twist': list(self.twist),
            'components': components,
            'residual': self.residual,
            'rung': self.rung,
            'tags': list(self.tags),
        }


def lie_record(X: LieElem) -> Dict[str, Any]:
    return {'shift': X.shift, 'body': list(X.body)}


def _a_entries(H: SubgroupTable) -> Tuple[np.ndarray, np.ndarray]:
    return H.elements[:, 0], H.elements[:, 1]


def borel_character(session, chi: MultChar, n: int) -> Tuple[SubgroupTable, np.ndarray]:
    """chi on BK_n through the a-entry."""
    H = session.subgroup('BorelK', n=n)
    return H, session.torus.values_at_a(chi, *_a_entries(H))


# Truncations and components


def principal_series_truncation(session, chi: MultChar, n: int,
                                strict: bool = False) -> ClassFunction:
    """
    V_chi^{K_n} as Ind from BK_n of chi extended trivially across K_n.

    Raises:
        LevelTooLow: n outside [1, N]
        DepthTooLow: strict mode and n <= depth(chi) for nontrivial chi
    """
    ctx = session.ctx
    if not 1 <= n <= ctx.N:
        raise LevelTooLow(f"truncation level {n} outside [1, {ctx.N}]")
    label = f"V^K{n}({chi.label})"
    profile = depth_profile(chi, session.torus)
    if not chi.is_trivial() and n <= profile.depth:
        if strict:
            raise DepthTooLow(f"{chi.label} has depth {profile.depth}, truncation at {n}")
        return ClassFunction.zero(session.K, label)
    H, values = borel_character(session, chi, n)
    return induce(H, values, session.K, label)


def build_S_d(session, X: LieElem, zeta: TableChar, d: int, label: str = '') -> Component:
    """
    S_d(X, zeta) = Ind from T(X)J_d of Psi_{X,zeta}, checked irreducible of depth d.

    Raises:
        LevelTooLow: N < d + 1
        IrreducibilityFailed: norm or degree off
    """
    ctx = session.ctx
    if ctx.N < d + 1:
        raise LevelTooLow(f"S_{d} needs N >= {d + 1}")
    label = label or f"S_{d}"
    J = session.subgroup('J', d=d)
    prod = product_set(zeta.group, J, f"T(X)J({d})")
    ext = extend_Psi_X_zeta(psi_X_char(X, J), zeta, prod)
    f = induce(prod.table, ext.values, session.K, label)

    q = ctx.q
    expected = (q * q - 1) * q ** (d - 1)
    size = norm_sq(f)
    if abs(size - 1) > TOLERANCE:
        raise IrreducibilityFailed(f"{label}: <f, f> = {size:.6f}")
    if round(f.degree) != expected:
        raise IrreducibilityFailed(f"{label}: degree {f.degree:.3f}, expected {expected}")

    depth = rep_depth(f)
    logger.debug(f"{label}: degree {expected}, depth {depth}")
    return Component(
        label=label,
        character=f,
        degree=expected,
        depth=depth,
        datum={'X': lie_record(X), 'zeta': zeta.label, 'd': d},
    )


def nilpotent_zeta(session, theta: MultChar, T: SubgroupTable) -> TableChar:
    """theta on the a-entry of Z U, extended trivially across U."""
    values = session.torus.values_at_z(theta, *_a_entries(T))
    return TableChar(T, values, theta.label)


def nilpotent_component(session, theta: MultChar, d: int, unit: int = 1) -> Component:
    """S_d(X_delta, theta) with delta = unit * p^-d."""
    X = nilpotent_X(session.ctx, NilpotentLabel(unit, -d))
    T = centralizer_TX(X)
    suffix = "" if unit == 1 else f"*{unit}"
    return build_S_d(session, X, nilpotent_zeta(session, theta, T), d,
                     f"S_{d}(X_p^-{d}{suffix},{theta.label})")


# Gamma and Y


def find_Gamma(session, chi: MultChar) -> GammaDatum:
    """
    x = p^-r b with chi(t) = psi(Tr(Gamma (t - I))) on T_{floor(r/2)+1}.

    b runs over R_E mod p^ceil(r/2) in lexicographic order; the first hit is kept.

    Raises:
        DepthTooLow: chi of depth 0
        NotRealizable: chi not of minimal depth, or no b matches
    """
    ctx = session.ctx
    torus_data = session.torus
    profile = depth_profile(chi, torus_data)
    r = profile.depth
    if r < 1:
        raise DepthTooLow(f"{chi.label} has depth 0, no Gamma")
    if not profile.minimal:
        raise NotRealizable(f"{chi.label} is not of minimal depth")
    if ctx.N < r + 1:
        raise LevelTooLow(f"Gamma at depth {r} needs N >= {r + 1}")

    M, p = ctx.modulus, ctx.p
    mask = torus_data.filt_mask(r // 2 + 1)
    rows = torus_data.table.elements[mask]
    target = chi.values()[mask]
    A0, A1, D0, D1 = (rows[:, 0] - 1) % M, rows[:, 1], (rows[:, 6] - 1) % M, rows[:, 7]
    window = p ** -(-r // 2)
    scale = p ** (r + 1)

    hits: List[Tuple[int, int]] = []
    for b0 in range(window):
        for b1 in range(window):
            u0, _ = qmul(b0, b1, A0, A1, ctx)
            v0, _ = qmul(b0, -b1 % M, D0, D1, ctx)
            values = np.exp(2j * np.pi * ((u0 - v0) % scale) / scale)
            if np.allclose(values, target, atol=TOLERANCE):
                hits.append((b0, b1))
    if not hits:
        raise NotRealizable(f"no Gamma realizes {chi.label}")
    b0, b1 = hits[0]
    return GammaDatum(x=ShiftedElem(ctx.elem(b0, b1), r), r=r, hits=len(hits))


def build_Y_chi(session, chi: MultChar, d: int,
                gamma_datum: Optional[GammaDatum] = None) -> YDatum:
    """
    Y_chi = g_d Gamma g_d^-1 with its centralizer and zeta_chi(t) = chi(a + b*gamma).

    g_d is carried as the integral multiple G' = [[2g, -1], [2g^2, g]] of itself.

    Raises:
        DepthTooLow: d <= r
        LevelTooLow: N < d + 1
        IdentificationFailed: G' Gamma != Y G'
    """
    ctx = session.ctx
    g = gamma_datum or find_Gamma(session, chi)
    r = g.r
    if d <= r:
        raise DepthTooLow(f"Y_chi needs d > r, got d = {d}, r = {r}")
    if ctx.N < d + 1:
        raise LevelTooLow(f"Y_chi at depth {d} needs N >= {d + 1}")

    M, p, eps = ctx.modulus, ctx.p, ctx.eps
    b0, b1 = g.x.body.a0, g.x.body.a1
    pdr = p ** (d - r)
    gamma_body = pdr * b0 % M
    rho = eps * gamma_body * gamma_body % M
    eps_inv = pow(eps, -1, M)

    Y = LieElem.from_entries(
        ctx,
        ctx.elem(0, pdr * b1),
        ctx.elem(0, eps_inv),
        ctx.elem(0, pdr * pdr * b0 * b0),
        ctx.elem(0, pdr * b1),
        shift=d,
    )

    g_prime = np.array(
        [[0, 2 * gamma_body % M, M - 1, 0, 2 * rho % M, 0, 0, gamma_body]], dtype=np.int64
    )
    gamma_row = np.array([[b0, b1, 0, 0, 0, 0, -b0 % M, b1]], dtype=np.int64)
    lhs = gmul(g_prime, gamma_row, ctx) * pdr % M
    rhs = gmul(Y.row, g_prime, ctx)
    if not np.array_equal(lhs, rhs):
        raise IdentificationFailed("G' does not conjugate Gamma to Y_chi")

    T = centralizer_TX(Y)
    ta0, ta1, tb0, tb1 = (T.elements[:, i] for i in range(4))
    # a + b*gamma with gamma = gamma_body * omega
    bg0, bg1 = qmul(tb0, tb1, 0, gamma_body, ctx)
    zeta_values = session.torus.values_at_a(chi, (ta0 + bg0) % M, (ta1 + bg1) % M)
    zeta = TableChar(T, zeta_values, f"zeta({chi.label})")

    g.d = d
    g.gamma = ctx.elem(0, gamma_body)
    g.g_prime = g_prime
    return YDatum(Y=Y, T=T, zeta=zeta, gamma=g, rho=rho)


def y_component(session, chi: MultChar, d: int,
                gamma_datum: Optional[GammaDatum] = None) -> Component:
    y = build_Y_chi(session, chi, d, gamma_datum)
    comp = build_S_d(session, y.Y, y.zeta, d, f"S_{d}(Y,{chi.label})")
    comp.datum['gamma'] = [y.gamma.x.body.a0, y.gamma.x.body.a1]
    comp.datum['r'] = y.gamma.r
    return comp


# Decomposition


def canonical_decomposition(session, chi: MultChar) -> DecompositionCertificate:
    """
    V_chi^{K_N} = head + sum over r < d < N of S_d, twisted back by phi o det.

    Raises:
        DecompositionResidual: the components do not exhaust the truncation,
            or a multiplicity differs from 1
    """
    ctx = session.ctx
    K = session.K
    torus_data = session.torus
    q, N = ctx.q, ctx.N

    phi, chi_min = minimal_depth_factorization(chi, torus_data)
    minimal = PrincipalSeriesSpec.of(chi_min, torus_data)
    r = minimal.profile.depth
    if N < r + 1:
        raise LevelTooLow(f"{chi.label} of depth {r} needs N >= {r + 1}")

    components: List[Component] = []
    if chi_min.is_trivial():
        one = ClassFunction.trivial(K)
        level_one = principal_series_truncation(session, chi_min, 1)
        components.append(Component('trivial', one, 1, 0, {'kind': 'trivial'}))
        components.append(
            Component('Steinberg', (level_one - one).relabel('Steinberg'), q, 0,
                      {'kind': 'steinberg'})
        )
    else:
        head = principal_series_truncation(session, chi_min, r + 1)
        components.append(
            Component('head', head, (q + 1) * q ** r, rep_depth(head),
                      {'kind': 'head', 'n': r + 1})
        )

    if r == 0:
        for d in range(1, N):
            components.append(nilpotent_component(session, minimal.theta, d))
    else:
        gamma = find_Gamma(session, chi_min)
        for d in range(r + 1, N):
            components.append(y_component(session, chi_min, d, gamma))

    total = principal_series_truncation(session, chi_min, N)
    remainder = total
    for c in components:
        remainder = remainder - c.character
    residual = float(np.sqrt(max(norm_sq(remainder), 0.0)))
    if residual > TOLERANCE:
        raise DecompositionResidual(f"{chi.label}: residual norm {residual:.3g}")

    for c in components:
        m = inner_product(total, c.character).real
        c.multiplicity = int(round(m))
        if abs(m - 1) > TOLERANCE:
            raise DecompositionResidual(f"{c.label} occurs {m:.6f} times")
    degrees = [c.degree for c in components]
    if sum(degrees) != (q + 1) * q ** (N - 1) or len(set(degrees)) != len(degrees):
        raise DecompositionResidual(f"{chi.label}: degrees {degrees}")

    if not phi.is_trivial():
        det = det_character(phi, K, torus_data)
        for c in components:
            c.character = twist(c.character, det)
            c.label = f"{c.label}x{phi.label}.det"

    return DecompositionCertificate(
        chi=chi.label,
        exponents=chi.exponents,
        p=ctx.p,
        epsilon=ctx.epsilon,
        N=N,
        profile=depth_profile(chi, torus_data),
        twist=phi.exponents,
        components=components,
        residual=residual,
        tags=['multiplicity-free', 'distinct-degrees', 'degree-sum', 'zero-residual'],
    )


def intertwining(session, chi: MultChar, d: int) -> Dict[str, Any]:
    """
    <V^{K_d}, V^{K_d}> by inner product and by Mackey count, with the predicted value.

    Raises:
        LevelTooLow: d outside [1, N]
        DepthTooLow: d <= depth(chi) for nontrivial chi
    """
    if not 1 <= d <= session.ctx.N:
        raise LevelTooLow(f"intertwining level {d} outside [1, {session.ctx.N}]")
    torus_data = session.torus
    profile = depth_profile(chi, torus_data)
    if not chi.is_trivial() and d <= profile.depth:
        raise DepthTooLow(f"{chi.label} has depth {profile.depth}, no K_{d}-fixed vectors")
    H, values = borel_character(session, chi, d)
    V = induce(H, values, session.K)
    split_trivial = chi.trivial_on(torus_data.split_mask(0))
    predicted = d + 1 if split_trivial else d - profile.true_depth
    return {
        'chi': chi.label,
        'depth': profile.depth,
        'true_depth': profile.true_depth,
        'split_trivial': split_trivial,
        'inner_product': inner_product(V, V).real,
        'mackey': mackey_intertwining_count(H, values, session.K),
        'predicted': predicted,
    }


# Applications


def tau_nilpotent(session, theta: MultChar, parity: str, d_max: int) -> ClassFunction:
    """Sum of S_d(X_p^-d, theta) over d <= d_max of the given parity (even d > 0 for units)."""
    if parity not in (UNIT_PARITY, UNIFORMIZER_PARITY):
        raise InvalidParameter(f"parity must be {UNIT_PARITY!r} or {UNIFORMIZER_PARITY!r}")
    start = 2 if parity == UNIT_PARITY else 1
    total = ClassFunction.zero(session.K, f"tau_{parity}({theta.label})")
    for d in range(start, d_max + 1, 2):
        total = total + nilpotent_component(session, theta, d).character
    return total.relabel(f"tau_{parity}({theta.label})")


def fixed_dimension_ledger(q: int, r: int) -> Dict[str, int]:
    head = (q + 1) * q ** (2 * r)
    unit = q * (q ** (2 * r) - 1)
    uniformizer = q ** (2 * r) - 1
    return {
        'dim_head': head,
        'tau_unit_fixed': unit,
        'tau_uniformizer_fixed': uniformizer,
        'constant': head - unit - uniformizer,
    }


def near_identity_expansion(session, chi: MultChar, reduce: bool = True) -> Dict[str, Any]:
    """
    Res to K_{2r+1} of pi_chi against (q+1) 1 + tau_unit(theta) + tau_uniformizer(theta).

    With ``reduce`` chi is first twisted so its central character is trivial or
    the fixed non-square representative; without it chi is used as given.
    The dimension ledger is always recorded; the class-function comparison
    runs when N >= 2r + 2 and K/K_N fits the budget.

    Raises:
        ExpansionMismatch: the two sides differ
    """
    ctx = session.ctx
    torus_data = session.torus
    if reduce:
        reduction = central_reduction(chi, torus_data)
        chi0, k = reduction.chi0, reduction.k
    else:
        chi0, k = chi, None
    profile = depth_profile(chi0, torus_data)
    if not profile.minimal:
        raise NotRealizable(f"{chi0.label} is not of minimal depth")
    r = profile.depth
    theta = torus_data.restrict_to_center(chi0)
    q, N = ctx.q, ctx.N

    record: Dict[str, Any] = {
        'chi': chi.label,
        'chi0': chi0.label,
        'k': k,
        'r': r,
        'ledger': fixed_dimension_ledger(q, r),
        'rung': 'dimensions',
    }
    if N < 2 * r + 2 or not session.fits_budget():
        return record

    K = session.K
    sub = filtration_subgroup(K, 2 * r + 1)
    tau_unit = tau_nilpotent(session, theta, UNIT_PARITY, N - 1)
    tau_unif = tau_nilpotent(session, theta, UNIFORMIZER_PARITY, N - 1)
    lhs = restrict(principal_series_truncation(session, chi0, N), sub)
    rhs = restrict(tau_unit + tau_unif, sub) + ClassFunction.trivial(sub) * (q + 1)
    residual = float(np.sqrt(max(norm_sq(lhs - rhs), 0.0)))
    if residual > TOLERANCE:
        raise ExpansionMismatch(f"{chi.label}: residual {residual:.3g} on K_{2 * r + 1}")

    record.update({
        'rung': 'full',
        'residual': residual,
        'tau_unit_fixed': fixed_dimension(tau_unit, sub),
        'tau_uniformizer_fixed': fixed_dimension(tau_unif, sub),
    })
    return record


def norm_witness(ctx: RingCtx, value: int) -> QuadRingElem:
    """First a in R_E (lexicographic) with norm(a) = value."""
    M = ctx.modulus
    a0, a1 = np.divmod(np.arange(M * M, dtype=np.int64), M)
    hits = np.flatnonzero(qnorm(a0, a1, ctx) == value % M)
    if not len(hits):
        raise NotRealizable(f"{value} is not a norm mod {ctx.p}^{ctx.N}")
    return ctx.elem(int(a0[hits[0]]), int(a1[hits[0]]))


def unit_rescale_check(session, theta: MultChar, d: int, unit: int) -> Dict[str, Any]:
    """
    diag(a, conj(a)^-1) with norm(a) = unit carries Psi of X_{p^-d} to Psi of X_{unit p^-d}.

    Both S_d are compared as class functions when K/K_N fits the budget.
    """
    ctx = session.ctx
    a = norm_witness(ctx, unit)
    t = torus(ctx, a)
    J = session.subgroup('J', d=d)
    base_X = nilpotent_X(ctx, NilpotentLabel(1, -d))
    scaled_X = nilpotent_X(ctx, NilpotentLabel(unit, -d))
    moved = conjugate_by(t, base_X.row, ctx)
    psi_base = psi_X_char(base_X, J)
    psi_scaled = psi_X_char(scaled_X, J)
    # Psi_{t X t^-1}(j) = Psi_X(t^-1 j t)
    pulled = psi_base(conjugate_by(ginv(t, ctx), J.elements, ctx))
    record: Dict[str, Any] = {
        'unit': unit,
        'witness': [a.a0, a.a1],
        'conjugates_X': bool(np.array_equal(moved[0], np.array(scaled_X.body))),
        'data_equal': bool(np.allclose(pulled, psi_scaled.values, atol=TOLERANCE)),
        'rung': 'data',
    }
    if session.fits_budget():
        base = nilpotent_component(session, theta, d)
        scaled = nilpotent_component(session, theta, d, unit=unit)
        deviation = float(np.max(np.abs(base.character.values - scaled.character.values)))
        record.update({'rung': 'full', 'max_deviation': deviation,
                       'full_equal': deviation < TOLERANCE})
    return record


def c_element_factorization(T: SubgroupTable, gamma_body: int, r: int) -> Dict[str, np.ndarray]:
    """
    Split a + b*gamma for t = (a, b; rho*b, a) as z * u with z of norm one and u in 1 + p^(r+1).

    c is the square root of norm(a) in 1 + p^(2r+2) O_F; z = a/c and
    u = c (1 + a^-1 b gamma).
    """
    ctx = T.ctx
    M, p = ctx.modulus, ctx.p
    a0, a1, b0, b1 = (T.elements[:, i] for i in range(4))
    n = qnorm(a0, a1, ctx)

    step = p ** min(2 * r + 2, ctx.N)
    candidates = (1 + step * np.arange(max(M // step, 1), dtype=np.int64)) % M
    squares = candidates * candidates % M
    match = n[:, None] == squares[None, :]
    found = match.any(axis=1)
    c = candidates[np.argmax(match, axis=1)]

    c_inv = base_inv(c, ctx)
    z0, z1 = a0 * c_inv % M, a1 * c_inv % M
    bg0, bg1 = qmul(b0, b1, 0, gamma_body, ctx)
    A0, A1 = (a0 + bg0) % M, (a1 + bg1) % M
    # u = (a + b gamma) / z
    zi0, zi1 = z0, (-z1) % M
    u0, u1 = qmul(A0, A1, zi0, zi1, ctx)
    window = p ** min(r + 1, ctx.N)
    in_filtration = ((u0 - 1) % window == 0) & (u1 % window == 0)
    return {'c': c, 'z0': z0, 'z1': z1, 'u0': u0, 'u1': u1,
            'found': found, 'u_in_filtration': in_filtration}


def key_identification(session, chi: MultChar, d: int) -> Dict[str, Any]:
    """
    S_d(Y_chi, zeta_chi) against S_d(X_p^-d, theta) for d > 2r.

    Class functions are compared when K/K_N fits the budget. Otherwise the
    inducing data are compared: Psi_Y = Psi of X_{eps^-1 p^-d} on J_d,
    T(Y)J_d = ZUJ_d as sets, zeta_chi = theta(z) on T(Y) through the
    c-element split, and the torus conjugation from eps^-1 p^-d to p^-d.

    Raises:
        InvalidParameter: d <= 2r
        IdentificationFailed: any comparison fails
    """
    ctx = session.ctx
    torus_data = session.torus
    profile = depth_profile(chi, torus_data)
    r = profile.depth
    if r < 1 or not profile.minimal:
        raise NotRealizable(f"{chi.label} must have minimal positive depth")
    if d <= 2 * r:
        raise InvalidParameter(f"d = {d} must exceed 2r = {2 * r}")
    theta = torus_data.restrict_to_center(chi)
    y = build_Y_chi(session, chi, d)
    record: Dict[str, Any] = {'chi': chi.label, 'r': r, 'd': d}

    if session.fits_budget():
        lhs = build_S_d(session, y.Y, y.zeta, d, f"S_{d}(Y,{chi.label})")
        rhs = nilpotent_component(session, theta, d)
        deviation = float(np.max(np.abs(lhs.character.values - rhs.character.values)))
        record.update({'rung': 'full', 'max_deviation': deviation})
        if deviation > TOLERANCE:
            raise IdentificationFailed(f"S_{d}(Y) and S_{d}(X) differ by {deviation:.3g}")
        return record

    M = ctx.modulus
    J = session.subgroup('J', d=d)
    X_u = nilpotent_X(ctx, NilpotentLabel(pow(ctx.eps, -1, M), -d))
    psi_equal = bool(np.allclose(psi_X_char(y.Y, J).values, psi_X_char(X_u, J).values,
                                 atol=TOLERANCE))

    ZU = session.subgroup('ZU')
    sets_equal = product_set(y.T, J, "T(Y)J").table.same_set(product_set(ZU, J, "ZUJ").table)

    split = c_element_factorization(y.T, y.gamma.gamma.a1, r)
    theta_values = torus_data.values_at_z(theta, split['z0'], split['z1'])
    zeta_equal = bool(split['found'].all() and split['u_in_filtration'].all()
                      and np.allclose(y.zeta.values, theta_values, atol=TOLERANCE))

    rescale = unit_rescale_check(session, theta, d, pow(ctx.eps, -1, M))
    record.update({
        'rung': 'data',
        'psi_equal': psi_equal,
        'product_sets_equal': sets_equal,
        'zeta_factors_through_theta': zeta_equal,
        'unit_rescale': rescale['data_equal'] and rescale['conjugates_X'],
    })
    failed = [k for k in ('psi_equal', 'product_sets_equal', 'zeta_factors_through_theta',
                          'unit_rescale') if not record[k]]
    if failed:
        raise IdentificationFailed(f"{chi.label} at d = {d}: {', '.join(failed)}")
    return record

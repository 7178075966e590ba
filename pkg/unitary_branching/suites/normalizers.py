"""Stabilizers of Psi_X by brute force against T(X)K_{ceil(d/2)} and T(X)J_d."""

from typing import List

from unitary_branching.algebra.chars import psi_X_char
from unitary_branching.algebra.group import ceil_half, filtration_subgroup, product_set
from unitary_branching.algebra.liealg import (
    NilpotentLabel,
    centralizer_coset_check,
    centralizer_TX,
    moy_prasad_bijection,
    nilpotent_X,
    normalizer_of_char,
)
from unitary_branching.suites.base import Claim, VerificationSuite

DEPTHS = (1, 2)


class NormalizerSuite(VerificationSuite):
    """Brute-force normalizers at N = d + 1 for the nilpotent X_p^-d and X_eps*p^-d."""

    name = 'normalizers'
    default_level = 2

    def run(self) -> List[Claim]:
        claims = []
        for d in self.options.get('depths', DEPTHS):
            N = d + 1
            session = self.session(N)
            ctx = session.ctx
            K = session.K
            for unit in (1, ctx.eps):
                X = nilpotent_X(ctx, NilpotentLabel(unit, -d))
                tag = "X_p^-%d" % d if unit == 1 else "X_eps*p^-%d" % d
                T = centralizer_TX(X, ambient=K)
                claims.append(self._normalizer_claim(K, X, T, d, tag, N))
                if d % 2 == 0:
                    claims.append(self._j_claim(session, K, X, T, d, tag, N))

        session = self.session()
        K = session.K
        ctx = session.ctx
        X0 = nilpotent_X(ctx, NilpotentLabel(1, 0))
        T0 = centralizer_TX(X0, ambient=K)
        for s in range(1, ctx.N + 1):
            rec = centralizer_coset_check(X0, s, K, T0)
            claims.append(self._claim(
                f"C_K(X_1 + k_{s}) = T(X_1)K_{s}",
                rec['equal'],
                brute=rec['brute_order'],
                product=rec['product_order'],
            ))

        for m in range(1, ctx.N):
            n = min(2 * m, ctx.N)
            rec = moy_prasad_bijection(filtration_subgroup(K, m), m, n)
            claims.append(self._claim(
                f"k -> k - I maps K_{m}/K_{n} bijectively onto k_{m}/k_{n}",
                rec['image_size'] == rec['expected_size'] and rec['in_lie_algebra']
                and rec['additive'],
                **rec,
            ))
        return claims

    def _normalizer_claim(self, K, X, T, d, tag, N) -> Claim:
        domain = filtration_subgroup(K, ceil_half(d + 1))
        psi = psi_X_char(X, domain)
        brute = normalizer_of_char(psi, K, domain)
        expected = product_set(T, filtration_subgroup(K, ceil_half(d)), "T(X)K").table
        return self._claim(
            f"the normalizer of Psi_{tag} in K is T(X)K_{ceil_half(d)}",
            brute.same_set(expected),
            level=N,
            brute=brute.order,
            expected=expected.order,
        )

    def _j_claim(self, session, K, X, T, d, tag, N) -> Claim:
        J = session.subgroup('J', d=d)
        ambient = product_set(T, filtration_subgroup(K, d // 2), "T(X)K").table
        brute = normalizer_of_char(psi_X_char(X, J), ambient, J)
        expected = product_set(T, J, "T(X)J").table
        return self._claim(
            f"within T(X)K_{d // 2} the normalizer of Psi_{tag} on J_{d} is T(X)J_{d}",
            brute.same_set(expected),
            level=N,
            brute=brute.order,
            expected=expected.order,
        )

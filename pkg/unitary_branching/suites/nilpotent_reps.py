"""Irreducibility and degree of S_d(X_p^-d, theta)."""

from typing import List

from unitary_branching.algebra.branching import nilpotent_component, unit_rescale_check
from unitary_branching.algebra.classfun import norm_sq
from unitary_branching.algebra.group import subgroup_mask
from unitary_branching.suites.base import Claim, VerificationSuite


class NilpotentRepsSuite(VerificationSuite):
    """S_d(X_p^-d, theta) for every depth-zero theta on Z and 1 <= d < N."""

    name = 'nilpotent-reps'
    default_level = 2

    def run(self) -> List[Claim]:
        session = self.session()
        ctx = session.ctx
        q, N = ctx.q, ctx.N
        torus = session.torus
        claims = []

        thetas = [theta for theta in torus.center_characters() if self._depth_zero(torus, theta)]
        for theta in thetas:
            for d in range(1, N):
                expected = (q * q - 1) * q ** (d - 1)

                def check(theta=theta, d=d, expected=expected):
                    comp = nilpotent_component(session, theta, d)
                    size = norm_sq(comp.character)
                    return (
                        abs(size - 1) < 1e-6 and comp.degree == expected and comp.depth == d,
                        {'degree': comp.degree, 'norm': size, 'depth': comp.depth},
                        'full',
                    )

                claims.append(self._guarded(
                    f"S_{d}(X_p^-{d}, {theta.label}) is irreducible of degree "
                    f"(q^2-1)q^{d - 1} = {expected} and depth {d}",
                    check,
                ))

        unit = ctx.eps
        for d in range(1, N):
            def rescale(d=d):
                rec = unit_rescale_check(session, torus.center_trivial(), d, unit)
                passed = rec['conjugates_X'] and rec['data_equal']
                if rec['rung'] == 'full':
                    passed = passed and rec['full_equal']
                return passed, {'witness': rec['witness'], 'unit': unit}, rec['rung']

            claims.append(self._guarded(
                f"S_{d}(X_eps*p^-{d}, 1) equals S_{d}(X_p^-{d}, 1) after a torus conjugation",
                rescale,
            ))
        return claims

    @staticmethod
    def _depth_zero(torus, theta) -> bool:
        mask = subgroup_mask(torus.center.elements, 'TorusFilt', torus.ctx, m=1)
        return theta.trivial_on(mask)

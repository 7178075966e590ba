"""S_d(Y_chi, zeta_chi) against the nilpotent S_d(X_p^-d, theta) for d > 2r."""

from typing import List

from unitary_branching.algebra.branching import (
    TOLERANCE,
    canonical_decomposition,
    key_identification,
    nilpotent_component,
    unit_rescale_check,
)
from unitary_branching.algebra.chars import (
    depth_one_first,
    det_character,
    minimal_depth_factorization,
    select_characters,
)
from unitary_branching.algebra.classfun import norm_sq, twist
from unitary_branching.core.errors import InvalidParameter
from unitary_branching.suites.base import Claim, VerificationSuite


class KeyIdentificationSuite(VerificationSuite):
    """
    Depth-one characters at N = 4 by the inducing-data route, plus the
    depth-zero consistency check at N = 2 where full class functions fit.
    """

    name = 'key-identification'
    default_level = 4

    def run(self) -> List[Claim]:
        session = self.session()
        ctx = session.ctx
        claims = []

        chi = depth_one_first(session.torus)
        for d in range(3, ctx.N):
            def identify(d=d):
                rec = key_identification(session, chi, d)
                extra = {k: v for k, v in rec.items() if k not in ('chi', 'rung')}
                return True, extra, rec['rung']

            claims.append(self._guarded(
                f"S_{d}(Y_chi, zeta_chi) ~ S_{d}(X_p^-{d}, theta) for {chi.label} (r = 1)",
                identify,
            ))

        try:
            key_identification(session, chi, 2)
            rejected = False
        except InvalidParameter:
            rejected = True
        claims.append(self._claim(
            "d = 2r is rejected for r = 1",
            rejected,
        ))

        claims.extend(self._depth_zero_consistency())
        return claims

    def _depth_zero_consistency(self) -> List[Claim]:
        session = self.session(2)
        torus = session.torus
        claims = []
        chi = select_characters(torus, 'delta-ext')[0]

        def decompose():
            cert = canonical_decomposition(session, chi)
            phi, chi_min = minimal_depth_factorization(chi, torus)
            expected = nilpotent_component(session, torus.restrict_to_center(chi_min), 1).character
            if not phi.is_trivial():
                expected = twist(expected, det_character(phi, session.K, torus))
            deviations = [norm_sq(c.character - expected) for c in cert.components]
            matches = [c.label for c, dev in zip(cert.components, deviations) if dev < TOLERANCE]
            return len(matches) == 1, {'components': [c.label for c in cert.components],
                                       'matching': matches}, cert.rung

        claims.append(self._guarded(
            "depth-zero branching uses S_1(X_p^-1, theta)",
            decompose,
            level=2,
        ))

        def rescale():
            theta = torus.restrict_to_center(chi)
            unit = pow(session.ctx.eps, -1, session.ctx.modulus)
            rec = unit_rescale_check(session, theta, 1, unit)
            passed = rec['conjugates_X'] and rec['data_equal'] and rec.get('full_equal', False)
            return passed, {'max_deviation': rec.get('max_deviation')}, rec['rung']

        claims.append(self._guarded(
            "S_1(X_eps^-1*p^-1, theta) equals S_1(X_p^-1, theta) as class functions",
            rescale,
            level=2,
        ))
        return claims

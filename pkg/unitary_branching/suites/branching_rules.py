"""Full branching certificates and their structural properties."""

from typing import List

import numpy as np

from unitary_branching.algebra.branching import (
    canonical_decomposition,
    principal_series_truncation,
)
from unitary_branching.algebra.chars import depth_profile, select_characters
from unitary_branching.algebra.classfun import fixed_dimension, inner_product, norm_sq
from unitary_branching.algebra.group import filtration_subgroup
from unitary_branching.suites.base import Claim, VerificationSuite

TOLERANCE = 1e-6
REPRESENTATIVES = ('trivial', 'delta-ext', 'depth1-first')


class BranchingSuite(VerificationSuite):
    """
    canonical_decomposition for every character at N <= 2, for representative
    characters above that.
    """

    name = 'branching'
    default_level = 2

    def run(self) -> List[Claim]:
        session = self.session()
        ctx = session.ctx
        q, N = ctx.q, ctx.N
        torus = session.torus
        claims = []

        chars = self._characters(torus, N)
        certificates = []
        for chi in chars:
            def decompose(chi=chi):
                cert = canonical_decomposition(session, chi)
                certificates.append((chi, cert))
                return (
                    sum(cert.degrees) == (q + 1) * q ** (N - 1)
                    and all(c.multiplicity == 1 for c in cert.components),
                    {'degrees': cert.degrees, 'residual': cert.residual,
                     'twist': list(cert.twist)},
                    cert.rung,
                )

            claims.append(self._guarded(
                f"V^K{N}({chi.label}) is a multiplicity-free sum of head and S_d components",
                decompose,
            ))

        equivariant, separated = True, True
        worst_twist, worst_overlap = 0.0, 0.0
        for chi, cert in certificates:
            total = principal_series_truncation(session, chi, N)
            remainder = total
            for comp in cert.components:
                remainder = remainder - comp.character
                if comp.datum.get('d'):
                    d = comp.datum['d']
                    overlap = abs(inner_product(
                        comp.character, principal_series_truncation(session, chi, d)
                    ))
                    worst_overlap = max(worst_overlap, overlap)
                    separated &= overlap < TOLERANCE
            gap = float(np.sqrt(max(norm_sq(remainder), 0.0)))
            worst_twist = max(worst_twist, gap)
            equivariant &= gap < TOLERANCE

        claims.append(self._claim(
            "twisted components sum to the truncation of the twisted character",
            equivariant and bool(certificates),
            certificates=len(certificates),
            max_residual=worst_twist,
        ))
        claims.append(self._claim(
            "each depth-d component has no K_d-fixed vectors",
            separated and bool(certificates),
            max_overlap=worst_overlap,
        ))

        vanishing, checked = True, 0
        K = session.K
        for chi in chars:
            r = depth_profile(chi, torus).depth
            if chi.is_trivial() or r == 0 or r >= N:
                continue
            total = principal_series_truncation(session, chi, N)
            for n in range(1, r + 1):
                dim = fixed_dimension(total, filtration_subgroup(K, n))
                vanishing &= abs(dim) < TOLERANCE
                checked += 1
        claims.append(self._claim(
            f"V^K{N} has no K_n-fixed vectors for n <= depth",
            vanishing,
            checked=checked,
        ))
        return claims

    def _characters(self, torus, N):
        selector = self.options.get('chi')
        if selector:
            return select_characters(torus, selector)
        if N <= 2:
            return select_characters(torus, 'all')
        chars = []
        for name in REPRESENTATIVES:
            try:
                chars.extend(select_characters(torus, name))
            except Exception as e:
                self.logger.warning(f"selector {name} unavailable at N={N}: {e}")
        return chars

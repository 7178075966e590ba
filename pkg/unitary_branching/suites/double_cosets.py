"""Bruhat decomposition and Borel indices at level N."""

from typing import List

from unitary_branching.algebra.branching import borel_character
from unitary_branching.algebra.classfun import induce, inner_product, mackey_intertwining_count
from unitary_branching.algebra.group import bruhat_cells, index_formula_check
from unitary_branching.suites.base import Claim, VerificationSuite

TOLERANCE = 1e-6


class DoubleCosetSuite(VerificationSuite):
    """B\\K/B cells, [K : BK_n] and the Mackey count."""

    name = 'double-cosets'
    default_level = 2

    def run(self) -> List[Claim]:
        session = self.session()
        K = session.K
        N = session.ctx.N
        claims = []

        cells = bruhat_cells(K)
        claims.append(self._claim(
            f"I, w and g_1..g_{N - 1} are distinct Bruhat representatives",
            cells['distinct'],
            representatives=len(cells['representatives']),
        ))
        claims.append(self._claim(
            f"B\\K/B has exactly N+1 = {N + 1} cells",
            cells['exhaustive'],
            cells=cells['partition'].count,
        ))

        checks = index_formula_check(K)
        for entry in checks['borel_indices']:
            claims.append(self._claim(
                f"[K : BK_{entry['n']}] = (q+1)q^{entry['n'] - 1}",
                entry['index'] == entry['formula'],
                index=entry['index'],
                formula=entry['formula'],
            ))
        claims.append(self._claim(
            "[B : B_1] = q(q^2-1)",
            checks['borel_over_borel_1'] == checks['borel_formula'],
            index=checks['borel_over_borel_1'],
            formula=checks['borel_formula'],
        ))

        torus = session.torus
        for chi in (torus.trivial(), *self._sample(torus)):
            for n in range(1, N + 1):
                H, values = borel_character(session, chi, n)
                V = induce(H, values, K)
                ip = inner_product(V, V).real
                mackey = mackey_intertwining_count(H, values, K)
                claims.append(self._claim(
                    f"<V^K{n}, V^K{n}> equals the Mackey double coset count for {chi.label}",
                    abs(ip - mackey) < TOLERANCE,
                    inner_product=ip,
                    mackey=mackey,
                ))
        return claims

    def _sample(self, torus):
        count = self.options.get('mackey_samples', 3)
        chars = list(torus.characters())
        step = max(len(chars) // max(count, 1), 1)
        return chars[step::step][:count]

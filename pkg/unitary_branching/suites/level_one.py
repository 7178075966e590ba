"""Level-one structure: orders, Bruhat cells and the finite principal series."""

from typing import List

from unitary_branching.algebra.branching import principal_series_truncation
from unitary_branching.algebra.classfun import (
    ClassFunction,
    harvest_irreducibles,
    inner_product,
    is_irreducible,
)
from unitary_branching.algebra.group import bruhat_cells, index_formula_check
from unitary_branching.suites.base import Claim, VerificationSuite

TOLERANCE = 1e-6
ORDER_PRIMES = (3, 5)


class LevelOneSuite(VerificationSuite):
    """K/K_1 = U(1,1) over the residue field."""

    name = 'level-one'
    default_level = 1

    def run(self) -> List[Claim]:
        claims = []
        for p in sorted(set(ORDER_PRIMES) | {self.p}):
            claims.append(self._order_claim(p))

        session = self.session(1)
        K = session.K
        q = session.ctx.q
        claims.append(self._claim(
            "the finite Borel has order q(q^2-1)",
            session.subgroup('Borel').order == q * (q * q - 1),
            borel=session.subgroup('Borel').order,
        ))
        claims.append(self._claim(
            "the center has order q+1",
            session.subgroup('Center').order == q + 1,
            center=session.subgroup('Center').order,
        ))

        cells = bruhat_cells(K)
        claims.append(self._claim(
            "I and w represent the Bruhat cells of K/K_1",
            cells['distinct'] and cells['exhaustive'],
            cells=cells['partition'].count,
        ))

        trivial = session.torus.trivial()
        induced = principal_series_truncation(session, trivial, 1)
        self_ip = inner_product(induced, induced).real
        claims.append(self._claim(
            "Ind from the Borel of the trivial character has degree q+1",
            round(induced.degree) == q + 1,
            degree=induced.degree,
        ))
        claims.append(self._claim(
            "Ind from the Borel of the trivial character has self-inner-product 2",
            abs(self_ip - 2) < TOLERANCE,
            inner_product=self_ip,
        ))

        steinberg = induced - ClassFunction.trivial(K)
        claims.append(self._claim(
            "Ind from the Borel of the trivial character is trivial plus Steinberg of degree q",
            is_irreducible(steinberg) and round(steinberg.degree) == q,
            steinberg_degree=steinberg.degree,
        ))

        harvest = harvest_irreducibles(K, seed=self.options.get('seed', 0))
        claims.append(self._claim(
            "harvested irreducibles of K/K_1 satisfy column orthogonality",
            harvest.complete and harvest.column_residual < TOLERANCE,
            found=len(harvest.irreducibles),
            classes=session.classes().count,
            residual=harvest.column_residual,
            degrees=[round(chi.degree) for chi in harvest.irreducibles],
        ))
        self.logger.info(f"level-one: {sum(c.passed for c in claims)}/{len(claims)} passed")
        return claims

    def _order_claim(self, p: int) -> Claim:
        session = self.pool.get(p, None, 1)
        checks = index_formula_check(session.K)
        order = checks['level_one_order']
        expected = checks['order_q_qminus1_qplus1_sq']
        return self._claim(
            f"|K/K_1| = q(q-1)(q+1)^2 at p={p}",
            order == expected and order != checks['order_q_qplus1_qminus1_sq'],
            level=1,
            order=order,
            q_qminus1_qplus1_sq=expected,
            q_qplus1_qminus1_sq=checks['order_q_qplus1_qminus1_sq'],
        )

"""Restriction of pi_chi to K_{2r+1} against (q+1) copies of 1 plus two nilpotent sums."""

from typing import List

from unitary_branching.algebra.branching import fixed_dimension_ledger, near_identity_expansion
from unitary_branching.algebra.chars import select_characters
from unitary_branching.core.errors import BranchingError
from unitary_branching.suites.base import Claim, VerificationSuite

TOLERANCE = 1e-6


class NearIdentitySuite(VerificationSuite):
    """Class-function check at r = 0 and dimension bookkeeping for r = 1."""

    name = 'near-identity'
    default_level = 2

    def run(self) -> List[Claim]:
        session = self.session()
        ctx = session.ctx
        q = ctx.q
        claims = []

        for selector in ('trivial', 'delta-ext'):
            chi = select_characters(session.torus, selector)[0]
            for reduce in (True, False):
                mode = "central character reduced" if reduce else "central character as given"
                claims.append(self._expansion_claim(session, chi, reduce, mode))

        for r in (1, 2):
            ledger = fixed_dimension_ledger(q, r)
            claims.append(self._claim(
                f"fixed-vector dimensions under K_{2 * r + 1} leave the constant q+1 at r = {r}",
                ledger['constant'] == q + 1
                and ledger['tau_unit_fixed'] == q * (q ** (2 * r) - 1),
                rung='dimensions',
                **ledger,
            ))
        return claims

    def _expansion_claim(self, session, chi, reduce: bool, mode: str) -> Claim:
        q = session.ctx.q

        def statement(level):
            return (f"Res to K_{level} of pi({chi.label}) = (q+1)1 + tau_unit + tau_uniformizer "
                    f"({mode})")

        try:
            rec = near_identity_expansion(session, chi, reduce=reduce)
        except BranchingError as e:
            return self._claim(statement("{2r+1}"), False,
                               error=f"{type(e).__name__}: {e}")

        ledger = rec['ledger']
        passed = ledger['constant'] == q + 1
        if rec['rung'] == 'full':
            passed = (passed and rec['residual'] < TOLERANCE
                      and abs(rec['tau_unit_fixed'] - ledger['tau_unit_fixed']) < TOLERANCE
                      and abs(rec['tau_uniformizer_fixed']
                              - ledger['tau_uniformizer_fixed']) < TOLERANCE)
        extra = {k: v for k, v in rec.items() if k not in ('chi', 'rung')}
        return self._claim(statement(2 * rec['r'] + 1), passed,
                           rung=rec['rung'], **extra)

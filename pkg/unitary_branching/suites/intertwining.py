"""Intertwining dimensions of truncated principal series."""

from typing import List

from unitary_branching.algebra.branching import intertwining
from unitary_branching.suites.base import Claim, VerificationSuite


class IntertwiningSuite(VerificationSuite):
    """<V^{K_d}, V^{K_d}> = d+1 or d-r for every character of T_0/T_N."""

    name = 'intertwining'
    default_level = 2

    def run(self) -> List[Claim]:
        session = self.session()
        d = session.ctx.N
        claims = []
        branch_counts = {'d+1': 0, 'd-r': 0}
        nontrivial_split_trivial = []
        nontrivial_passed = True

        for chi in session.torus.characters():
            rec = intertwining(session, chi, d)
            measured = round(rec['inner_product'])
            branch = 'd+1' if rec['split_trivial'] else 'd-r'
            branch_counts[branch] += 1
            passed = (measured == rec['predicted'] == rec['mackey']
                      and abs(rec['inner_product'] - measured) < 1e-6)
            if rec['split_trivial'] and not chi.is_trivial():
                nontrivial_split_trivial.append(chi.label)
                nontrivial_passed &= passed
            claims.append(self._claim(
                f"<V^K{d}, V^K{d}> = {branch} for {chi.label}",
                passed,
                inner_product=rec['inner_product'],
                mackey=rec['mackey'],
                predicted=rec['predicted'],
                depth=rec['depth'],
                true_depth=rec['true_depth'],
            ))

        claims.append(self._claim(
            "characters trivial on S_0 but not on T_0 take the d+1 branch",
            nontrivial_passed,
            characters=nontrivial_split_trivial,
            branch_counts=branch_counts,
        ))
        return claims

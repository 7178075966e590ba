"""Randomized lifting of approximate centralizer elements into T(X)."""

from typing import List

import numpy as np

from unitary_branching.algebra.group import ginv, gmul
from unitary_branching.algebra.liealg import (
    centralizer_TX,
    hensel_lift,
    in_filtration_rows,
    random_admissible,
    x_tilde,
)
from unitary_branching.suites.base import Claim, VerificationSuite

LEVELS = (1, 2)


class HenselSuite(VerificationSuite):
    """k in T(X)K_s lifts to k' in T(X) with k'^-1 k in K_s."""

    name = 'hensel'
    default_level = 4

    def run(self) -> List[Claim]:
        session = self.session()
        ctx = session.ctx
        trials = int(self.options.get('trials', 100))
        rng = np.random.default_rng(self.options.get('seed', 0))
        claims = []

        for rho in (0, ctx.p):
            X = x_tilde(ctx, 1, rho)
            T = centralizer_TX(X)
            for s in LEVELS:
                if s >= ctx.N:
                    continue
                passed, failures = 0, []
                for trial in range(trials):
                    k = random_admissible(T, s, rng)
                    try:
                        lifted = hensel_lift(k, rho, s, ctx)
                    except Exception as e:
                        failures.append(f"trial {trial}: {type(e).__name__}: {e}")
                        continue
                    quotient = gmul(ginv(lifted, ctx), k, ctx)
                    if T.contains(lifted)[0] and in_filtration_rows(quotient, s, ctx)[0]:
                        passed += 1
                    else:
                        failures.append(f"trial {trial}: lift outside T(X)K_{s}")
                claims.append(self._claim(
                    f"random k in T(X)K_{s} lift into T(X) with k'^-1 k in K_{s} (rho = {rho})",
                    passed == trials,
                    passed_trials=passed,
                    trials=trials,
                    T_order=T.order,
                    failures=failures[:5],
                ))
        return claims

"""K- and G-orbits of nilpotent elements."""

from itertools import product
from typing import List

from unitary_branching.algebra.liealg import (
    NilpotentLabel,
    brute_conjugator_search,
    nilpotent_X,
    nilpotent_orbit_equiv,
)
from unitary_branching.algebra.ring import unit_norms
from unitary_branching.suites.base import Claim, VerificationSuite

SYMBOLIC_EXPONENTS = range(-5, 5)


class OrbitSuite(VerificationSuite):
    """Conjugator search over K/K_N and the norm-class rule for G-orbits."""

    name = 'orbits'
    default_level = 2

    def run(self) -> List[Claim]:
        session = self.session()
        ctx = session.ctx
        K = session.K
        claims = []

        units = (1, ctx.eps)
        labels = [NilpotentLabel(u, e) for e, u in product(range(ctx.N), units)]
        for l1, l2 in product(labels, repeat=2):
            X1, X2 = nilpotent_X(ctx, l1), nilpotent_X(ctx, l2)
            hit = brute_conjugator_search(X1, X2, K)
            predicted = nilpotent_orbit_equiv(l1, l2, 'K')
            relation = "~" if predicted else "!~"
            claims.append(self._claim(
                f"X_{self._name(l1)} {relation}K X_{self._name(l2)}",
                (hit is not None) == predicted,
                conjugator=None if hit is None else K.elements[hit].tolist(),
            ))

        zero = NilpotentLabel()
        claims.append(self._claim(
            "the zero orbit is K-conjugate only to itself",
            nilpotent_orbit_equiv(zero, zero, 'K')
            and not any(nilpotent_orbit_equiv(zero, lab, 'K') for lab in labels),
        ))

        # G-conjugacy of X_delta and X_delta' holds iff delta'/delta is a norm from E
        norms = set(unit_norms(ctx.at_level(1)).tolist())
        symbolic = [NilpotentLabel(u, e) for e in SYMBOLIC_EXPONENTS for u in units]
        agree, total = 0, 0
        for l1, l2 in product(symbolic, repeat=2):
            ratio = l2.unit * pow(l1.unit, -1, ctx.p) % ctx.p
            is_norm = ratio in norms and (l2.exponent - l1.exponent) % 2 == 0
            agree += nilpotent_orbit_equiv(l1, l2, 'G') == is_norm
            total += 1
        claims.append(self._claim(
            f"G-orbits of {len(symbolic)} nilpotent labels follow the norm-class rule",
            agree == total,
            agree=agree,
            pairs=total,
        ))
        claims.append(self._claim(
            "every unit of the residue field is a norm",
            len(norms) == ctx.p - 1,
            norms=sorted(int(n) for n in norms),
        ))
        return claims

    @staticmethod
    def _name(label: NilpotentLabel) -> str:
        unit = "" if label.unit == 1 else f"{label.unit}*"
        return f"{unit}p^{label.exponent}" if label.exponent else f"{label.unit}"

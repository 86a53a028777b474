"""
Two-body inequalities.

    T3         (1 / 2k^2) I_k(S, T, alpha) <= sqrt(A(S) A(T))
    mixed_iso  A(S,B) A(T,B) <= pi sqrt(A(S) A(T))

where I_k is the integral over [0, 2*pi) of rho_k(S, theta) * rho_k(T, theta + alpha).
"""

import math
from typing import Optional, Tuple

from bodies.functionals import area, chord_mixed_integral, dual_mixed_area_disk
from bodies.profiles import BodyLike, FourierProfile
from inequalities import classification
from inequalities.gradients import (
    Term,
    area_term,
    chord_mixed_term,
    dual_mixed_area_term,
    scaled_sqrt_term,
)
from inequalities.inequalities.base import BaseInequality
from inequalities.reports import InequalityId, SlackReport


class MixedChernoffInequality(BaseInequality):
    """
    Mixed chord inequality for two bodies and a shift alpha in (0, 2*pi).

    The equality family k_multiples(k) is necessary but not sufficient: the
    shift has to line the bodies up as well, so the family match is reported
    for every evaluation and never used to assert equality.
    """

    inequality_id = InequalityId.T3
    uses_alpha = True

    def sides(self, f, g, method) -> Tuple[float, float]:
        integral = chord_mixed_integral(f, g, self.k, self.alpha, method, quadrature=self.quadrature).value
        rhs = math.sqrt(area(f, method, quadrature=self.quadrature).value * area(g, method, quadrature=self.quadrature).value)
        return integral / (2 * self.k ** 2), rhs

    def slack_term(self, x, partner=None) -> Term:
        partner_area = area_term(partner).value
        return scaled_sqrt_term(area_term(x), partner_area) - chord_mixed_term(x, partner, self.k, self.alpha) * (
            1.0 / (2 * self.k ** 2)
        )

    def family_match(self, report: SlackReport, f: FourierProfile, g: Optional[FourierProfile]) -> Optional[str]:
        match = classification.most_specific_family(
            self.predicted_family(), f, g, tol=classification.support_tolerance(report)
        )
        return match.label if match is not None else None


class MixedIsoperimetricInequality(BaseInequality):
    """
    Dual symmetric mixed isoperimetric inequality; T = disc gives the dual isoperimetric one.

    k is optional and only names the stated family.
    """

    inequality_id = InequalityId.MIXED_ISO
    uses_k = False

    def sides(self, f, g, method) -> Tuple[float, float]:
        lhs = (dual_mixed_area_disk(f, method, quadrature=self.quadrature).value
               * dual_mixed_area_disk(g, method, quadrature=self.quadrature).value)
        rhs = math.pi * math.sqrt(area(f, method, quadrature=self.quadrature).value
                                  * area(g, method, quadrature=self.quadrature).value)
        return lhs, rhs

    def slack_term(self, x, partner=None) -> Term:
        partner_area = area_term(partner).value
        partner_dual = dual_mixed_area_term(partner).value
        return math.pi * scaled_sqrt_term(area_term(x), partner_area) - dual_mixed_area_term(x) * partner_dual


def slack_theorem3(S: BodyLike, T: BodyLike, k: int, alpha: float, **options) -> SlackReport:
    return MixedChernoffInequality(k=k, alpha=alpha, **options).evaluate(S, T)


def slack_mixed_isoperimetric(S: BodyLike, T: BodyLike, **options) -> SlackReport:
    return MixedIsoperimetricInequality(**options).evaluate(S, T)

"""
Single-body Chernoff-type inequalities.

The chord integral C(S) is the integral over [0, pi/k] of
rho_k(theta) * rho_k(theta + pi/k). With A the area, A~ the oriented area,
A(S,B) the dual mixed area against the unit disc and delta the dual L2
distance to the mean disc:

    T1      C <= kA + lambda (A(S,B)^2 - pi A)           0 <= lambda <= k/pi
    T2      C >= kA + mu A~                              mu <= -k
    C31     C / k <= A
    stab35  C - kA - lambda (A(S,B)^2 - pi A) <= (pi lambda - k) delta^2 / 2
    stab37  C - kA - mu A~ >= (-k - mu/2) delta^2
    dual_iso  A(S,B)^2 <= pi A
"""

import math
from typing import Tuple

import numpy as np

from bodies.functionals import (
    Method,
    area,
    chord_self_integral,
    dual_l2_distance_to_mean_disc,
    dual_mixed_area_disk,
    oriented_area,
)
from bodies.profiles import BodyLike, FourierProfile
from inequalities.gradients import (
    Term,
    area_term,
    chord_self_term,
    dual_mixed_area_squared_term,
    mean_disc_distance_squared_term,
    oriented_area_term,
)
from inequalities.inequalities.base import BaseInequality
from inequalities.reports import InequalityId, SlackReport


class _SingleBodyInequality(BaseInequality):
    """Helpers shared by the single-body inequalities."""

    def _area(self, f: FourierProfile, method: Method) -> float:
        return area(f, method, quadrature=self.quadrature).value

    def _chord(self, f: FourierProfile, method: Method) -> float:
        return chord_self_integral(f, self.k, method, quadrature=self.quadrature).value

    def _dual_mixed_area(self, f: FourierProfile, method: Method) -> float:
        return dual_mixed_area_disk(f, method, quadrature=self.quadrature).value

    def _oriented_area(self, f: FourierProfile, method: Method) -> float:
        return oriented_area(f, method, quadrature=self.quadrature).value

    def _distance_squared(self, f: FourierProfile, method: Method) -> float:
        return dual_l2_distance_to_mean_disc(f, method, quadrature=self.quadrature).value ** 2

    def _deficit_phi(self, f: FourierProfile, method: Method) -> float:
        """C - kA - lambda (A(S,B)^2 - pi A)."""
        a = self._area(f, method)
        return self._chord(f, method) - self.k * a - self.lam * (self._dual_mixed_area(f, method) ** 2 - math.pi * a)

    def _deficit_psi(self, f: FourierProfile, method: Method) -> float:
        """C - kA - mu A~."""
        return self._chord(f, method) - self.k * self._area(f, method) - self.mu * self._oriented_area(f, method)

    def _phi_term(self, x: np.ndarray) -> Term:
        a = area_term(x)
        return chord_self_term(x, self.k) - self.k * a - self.lam * (dual_mixed_area_squared_term(x) - math.pi * a)

    def _psi_term(self, x: np.ndarray) -> Term:
        return chord_self_term(x, self.k) - self.k * area_term(x) - self.mu * oriented_area_term(x)


class ChernoffUpperInequality(_SingleBodyInequality):
    """C <= kA + lambda (A(S,B)^2 - pi A); needs a_n = b_n = 0 whenever n/k is even."""

    inequality_id = InequalityId.T1
    uses_lambda = True

    def sides(self, f, g, method) -> Tuple[float, float]:
        a = self._area(f, method)
        rhs = self.k * a + self.lam * (self._dual_mixed_area(f, method) ** 2 - math.pi * a)
        return self._chord(f, method), rhs

    def slack_term(self, x, partner=None) -> Term:
        return -self._phi_term(x)


class ChernoffLowerInequality(_SingleBodyInequality):
    """C >= kA + mu A~."""

    inequality_id = InequalityId.T2
    uses_mu = True
    slack_sign = -1

    def sides(self, f, g, method) -> Tuple[float, float]:
        return self._chord(f, method), self.k * self._area(f, method) + self.mu * self._oriented_area(f, method)

    def slack_term(self, x, partner=None) -> Term:
        return self._psi_term(x)


class ChernoffAreaInequality(_SingleBodyInequality):
    """C / k <= A, with equality exactly on harmonics at multiples of 2k."""

    inequality_id = InequalityId.C31

    def sides(self, f, g, method) -> Tuple[float, float]:
        return self._chord(f, method) / self.k, self._area(f, method)

    def slack_term(self, x, partner=None) -> Term:
        return area_term(x) - chord_self_term(x, self.k) * (1.0 / self.k)


class UpperStabilityInequality(_SingleBodyInequality):
    """
    phi(lambda) <= (pi lambda - k) delta^2 / 2.

    The margin is -(k pi / 2) sum_l (-1)^l (a_kl^2 + b_kl^2) for every
    admissible lambda, so every body without odd multiples of k is extremal.
    """

    inequality_id = InequalityId.STAB35
    uses_lambda = True

    def sides(self, f, g, method) -> Tuple[float, float]:
        bound = 0.5 * (math.pi * self.lam - self.k) * self._distance_squared(f, method)
        return self._deficit_phi(f, method), bound

    def slack_term(self, x, partner=None) -> Term:
        bound = mean_disc_distance_squared_term(x) * (0.5 * (math.pi * self.lam - self.k))
        return bound - self._phi_term(x)


class LowerStabilityInequality(_SingleBodyInequality):
    """psi(mu) >= (-k - mu/2) delta^2."""

    inequality_id = InequalityId.STAB37
    uses_mu = True
    slack_sign = -1

    def sides(self, f, g, method) -> Tuple[float, float]:
        bound = (-self.k - 0.5 * self.mu) * self._distance_squared(f, method)
        return self._deficit_psi(f, method), bound

    def slack_term(self, x, partner=None) -> Term:
        return self._psi_term(x) - mean_disc_distance_squared_term(x) * (-self.k - 0.5 * self.mu)


class DualIsoperimetricInequality(_SingleBodyInequality):
    """A(S,B)^2 <= pi A, equality only for discs."""

    inequality_id = InequalityId.DUAL_ISO
    uses_k = False

    def sides(self, f, g, method) -> Tuple[float, float]:
        return self._dual_mixed_area(f, method) ** 2, math.pi * self._area(f, method)

    def slack_term(self, x, partner=None) -> Term:
        return math.pi * area_term(x) - dual_mixed_area_squared_term(x)


def slack_theorem1(S: BodyLike, k: int, lam: float, **options) -> SlackReport:
    return ChernoffUpperInequality(k=k, lam=lam, **options).evaluate(S)


def slack_theorem2(S: BodyLike, k: int, mu: float, **options) -> SlackReport:
    return ChernoffLowerInequality(k=k, mu=mu, **options).evaluate(S)


def slack_corollary31(S: BodyLike, k: int, **options) -> SlackReport:
    return ChernoffAreaInequality(k=k, **options).evaluate(S)


def stability_margin_35(S: BodyLike, k: int, lam: float, **options) -> SlackReport:
    return UpperStabilityInequality(k=k, lam=lam, **options).evaluate(S)


def stability_margin_37(S: BodyLike, k: int, mu: float, **options) -> SlackReport:
    return LowerStabilityInequality(k=k, mu=mu, **options).evaluate(S)


def slack_dual_isoperimetric(S: BodyLike, **options) -> SlackReport:
    return DualIsoperimetricInequality(**options).evaluate(S)


def deficit_phi(S: BodyLike, k: int, lam: float, **options) -> float:
    """phi(lambda) = -slack of T1; non-decreasing in lambda on [0, k/pi]."""
    options.setdefault('oracle', False)
    return -slack_theorem1(S, k, lam, **options).slack


def deficit_psi(S: BodyLike, k: int, mu: float, **options) -> float:
    """psi(mu) = slack of T2; non-increasing in mu on (-inf, -k]."""
    options.setdefault('oracle', False)
    return slack_theorem2(S, k, mu, **options).slack

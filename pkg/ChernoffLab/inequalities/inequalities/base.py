"""
Base inequality class for all sharp inequalities checked by the lab.

This provides the common machinery for parameter admissibility, the
hypothesis check, the quadrature oracle, verdicts and equality
classification. Concrete inequalities only state their two sides and the
slack as a function of the coefficient vector.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import replace
from typing import Optional, Tuple

import numpy as np

from bodies.exceptions import HypothesisError, OracleMismatchError, ParameterRangeError
from bodies.functionals import Method
from bodies.profiles import (
    COEFFICIENT_TOL,
    BodyLike,
    EqualityFamily,
    FourierProfile,
    as_profile,
    canonical_angle,
    check_order,
    hypothesis_violations,
)
from bodies.quadrature import QuadratureSpec
from inequalities import classification
from inequalities.gradients import Term
from inequalities.reports import DEFAULT_RTOL, InequalityId, SlackReport, Verdict, tolerance_for, verdict_for

logger = logging.getLogger(__name__)


class BaseInequality(ABC):
    """
    Abstract base class for all inequalities.

    Subclasses set the parameter flags and implement sides() and
    slack_term(); evaluate() turns the sides into a SlackReport.
    """

    inequality_id: InequalityId = None
    uses_k = True
    uses_lambda = False
    uses_mu = False
    uses_alpha = False
    # +1: slack = rhs - lhs, -1: slack = lhs - rhs
    slack_sign = 1

    def __init__(
        self,
        k: Optional[int] = None,
        lam: Optional[float] = None,
        mu: Optional[float] = None,
        alpha: Optional[float] = None,
        allow_out_of_range: bool = False,
        rtol: float = DEFAULT_RTOL,
        oracle: bool = True,
        quadrature: Optional[QuadratureSpec] = None,
        strict: bool = False,
    ):
        self.k = k
        self.lam = lam
        self.mu = mu
        self.alpha = alpha
        self.allow_out_of_range = allow_out_of_range
        self.rtol = rtol
        self.oracle = oracle
        self.quadrature = quadrature
        self.strict = strict
        self.exploratory = False
        self.check_parameters()

    @property
    def two_body(self) -> bool:
        return self.inequality_id.two_body

    def check_parameters(self) -> None:
        """
        Validate (k, lambda, mu, alpha) against the admissible ranges.

        Raises:
            ParameterRangeError: A parameter is missing, or out of range without the override
        """
        if self.uses_k:
            if self.k is None:
                raise ParameterRangeError(f"{self.inequality_id.value} needs an order k")
            self.k = check_order(self.k)
        elif self.k is not None:
            self.k = check_order(self.k)

        if self.uses_lambda:
            self.lam = self._require_finite('lambda', self.lam)
            upper = classification.lambda_upper(self.k)
            slack = classification.ENDPOINT_RTOL * max(1.0, upper)
            if self.lam < -slack or self.lam > upper + slack:
                self.out_of_range(f"lambda={self.lam!r} outside [0, k/pi] = [0, {upper!r}]")
        else:
            self.lam = None

        if self.uses_mu:
            self.mu = self._require_finite('mu', self.mu)
            if self.mu > -self.k + classification.ENDPOINT_RTOL * max(1.0, self.k):
                self.out_of_range(f"mu={self.mu!r} above -k = {-self.k}")
        else:
            self.mu = None

        if self.uses_alpha:
            alpha = canonical_angle(self._require_finite('alpha', self.alpha))
            if alpha == 0.0:
                self.out_of_range(f"alpha={self.alpha!r} is a multiple of 2*pi, outside (0, 2*pi)")
            self.alpha = alpha
        else:
            self.alpha = None

    def _require_finite(self, name: str, value) -> float:
        if value is None:
            raise ParameterRangeError(f"{self.inequality_id.value} needs {name}")
        value = float(value)
        if not math.isfinite(value):
            raise ParameterRangeError(f"{name} must be finite, got {value!r}")
        return value

    def out_of_range(self, message: str) -> None:
        if not self.allow_out_of_range:
            raise ParameterRangeError(f"{self.inequality_id.value}: {message}; pass --allow-out-of-range to explore")
        logger.info(f"Exploratory {self.inequality_id.value}: {message}")
        self.exploratory = True

    @property
    def parameters(self) -> dict:
        return {'k': self.k, 'lam': self.lam, 'mu': self.mu, 'alpha': self.alpha}

    def predicted_family(self) -> EqualityFamily:
        """Family that attains equality according to the closed forms."""
        return classification.enforced_family(self.inequality_id, self.k, self.lam, self.mu)

    def stated_family(self) -> Optional[EqualityFamily]:
        """Family the inequality is usually quoted with."""
        return classification.stated_family(self.inequality_id, self.k, self.lam, self.mu)

    def check_hypothesis(self, profile: FourierProfile) -> None:
        """
        Raises:
            HypothesisError: Nonzero harmonics where n/k is even
        """
        if not self.inequality_id.needs_hypothesis:
            return
        offending = hypothesis_violations(profile, self.k, COEFFICIENT_TOL)
        if offending:
            raise HypothesisError(self.k, offending)

    @abstractmethod
    def sides(self, f: FourierProfile, g: Optional[FourierProfile], method: Method) -> Tuple[float, float]:
        """
        Compute both sides of the inequality.

        Args:
            f: Profile of the body
            g: Profile of the partner body (two-body inequalities only)
            method: closed_form or quadrature

        Returns:
            (lhs, rhs)
        """
        pass

    @abstractmethod
    def slack_term(self, x: np.ndarray, partner: Optional[np.ndarray] = None) -> Term:
        """
        Slack as a function of the coefficient vector x with the partner held fixed.

        Args:
            x: [a0, a1, b1, a2, b2, ...]
            partner: Coefficient vector of the partner body (two-body inequalities only)

        Returns:
            Term with value, gradient and diagonal curvature of the slack
        """
        pass

    def orient(self, lhs: float, rhs: float) -> float:
        return rhs - lhs if self.slack_sign > 0 else lhs - rhs

    def evaluate(self, S: BodyLike, T: Optional[BodyLike] = None) -> SlackReport:
        """
        Evaluate the inequality on a body (and its partner).

        Args:
            S: Body
            T: Partner body, required for two-body inequalities

        Returns:
            SlackReport with verdict, oracle residual and family match

        Raises:
            ParameterRangeError: Missing partner body
            HypothesisError: Harmonics where n/k is even (T1, stab35)
            OracleMismatchError: Oracle disagreement with strict set
        """
        if self.two_body and T is None:
            raise ParameterRangeError(f"{self.inequality_id.value} needs a second body")
        f = as_profile(S)
        g = as_profile(T) if self.two_body else None
        self.check_hypothesis(f)

        lhs, rhs = self.sides(f, g, Method.CLOSED_FORM)
        slack = self.orient(lhs, rhs)
        tol = tolerance_for(lhs, rhs, self.rtol)
        verdict = verdict_for(slack, tol)

        oracle_lhs = oracle_rhs = residual = None
        if self.oracle:
            oracle_lhs, oracle_rhs = self.sides(f, g, Method.QUADRATURE)
            residual = max(abs(lhs - oracle_lhs), abs(rhs - oracle_rhs))
            if residual > tol:
                logger.error(
                    f"Oracle disagreement in {self.inequality_id.value} ({self.parameters}): residual {residual:.3e}"
                )
                if self.strict:
                    raise OracleMismatchError(
                        f"{self.inequality_id.value}: closed form and quadrature differ by {residual:.3e}"
                    )

        stated = self.stated_family()
        report = SlackReport(
            inequality_id=self.inequality_id,
            lhs=lhs,
            rhs=rhs,
            slack=slack,
            verdict=verdict,
            tolerance=tol,
            k=self.k,
            lam=self.lam,
            mu=self.mu,
            alpha=self.alpha,
            stated_family=stated.label if stated is not None else None,
            method=Method.CLOSED_FORM.value,
            oracle_lhs=oracle_lhs,
            oracle_rhs=oracle_rhs,
            oracle_residual=residual,
            exploratory=self.exploratory,
            expected_violation=self.exploratory,
        )
        return replace(report, equality_family_match=self.family_match(report, f, g))

    def family_match(self, report: SlackReport, f: FourierProfile, g: Optional[FourierProfile]) -> Optional[str]:
        if report.verdict is not Verdict.EQUALITY:
            return None
        match = classification.classify_equality(f, report, g)
        return match.label if match is not None else None


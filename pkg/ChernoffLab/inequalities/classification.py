"""
Equality families of each inequality and classification of equality cases.

The enforced family is the exact set of bodies attaining equality, derived
from the closed forms. The stated family is the one the inequality is
usually quoted with; the two differ for T1 at lambda = k/pi and for
stab35, where every body without odd multiples of k attains equality, and
for mixed_iso, whose closed form forces both bodies to be discs.
"""

import logging
import math
from typing import List, Optional

from bodies.exceptions import ClassificationError
from bodies.profiles import COEFFICIENT_TOL, BodyLike, EqualityFamily, FamilyKind, as_profile
from inequalities.reports import InequalityId, SlackReport, Verdict

logger = logging.getLogger(__name__)

ENDPOINT_RTOL = 1e-12


def lambda_upper(k: int) -> float:
    return k / math.pi


def lambda_at_upper(k: int, lam: float) -> bool:
    upper = lambda_upper(k)
    return abs(lam - upper) <= ENDPOINT_RTOL * max(1.0, upper)


def mu_at_lower(k: int, mu: float) -> bool:
    return abs(mu + k) <= ENDPOINT_RTOL * max(1.0, k)


def enforced_family(
    inequality_id: InequalityId,
    k: Optional[int] = None,
    lam: Optional[float] = None,
    mu: Optional[float] = None,
) -> EqualityFamily:
    """Family of bodies that attain equality for the given inequality and parameters."""
    inequality_id = InequalityId(inequality_id)
    if inequality_id is InequalityId.T1:
        if lambda_at_upper(k, lam):
            return EqualityFamily(FamilyKind.NON_K_MULTIPLES, k)
        return EqualityFamily(FamilyKind.DISC)
    if inequality_id is InequalityId.T2:
        if mu_at_lower(k, mu):
            return EqualityFamily(FamilyKind.FIRST_HARMONIC)
        return EqualityFamily(FamilyKind.DISC)
    if inequality_id is InequalityId.C31:
        return EqualityFamily(FamilyKind.EVEN_K_MULTIPLES, k)
    if inequality_id is InequalityId.STAB35:
        return EqualityFamily(FamilyKind.NON_K_MULTIPLES, k)
    if inequality_id is InequalityId.T3:
        return EqualityFamily(FamilyKind.K_MULTIPLES, k)
    return EqualityFamily(FamilyKind.DISC)


def stated_family(
    inequality_id: InequalityId,
    k: Optional[int] = None,
    lam: Optional[float] = None,
    mu: Optional[float] = None,
) -> Optional[EqualityFamily]:
    """Family the inequality is usually quoted with."""
    inequality_id = InequalityId(inequality_id)
    if inequality_id is InequalityId.T1 and lambda_at_upper(k, lam):
        return EqualityFamily(FamilyKind.FIRST_HARMONIC)
    if inequality_id is InequalityId.STAB35:
        return EqualityFamily(FamilyKind.FIRST_HARMONIC)
    if inequality_id is InequalityId.MIXED_ISO:
        return EqualityFamily(FamilyKind.K_MULTIPLES, k) if k is not None else None
    return enforced_family(inequality_id, k, lam, mu)


def family_chain(family: EqualityFamily) -> List[EqualityFamily]:
    """
    Families nested inside `family`, most specific first, ending with `family`.

    disc < first_harmonic < non_k_multiples(k) and
    disc < even_k_multiples(k) < k_multiples(k).
    """
    disc = EqualityFamily(FamilyKind.DISC)
    if family.kind is FamilyKind.DISC:
        return [disc]
    if family.kind is FamilyKind.FIRST_HARMONIC:
        return [disc, family]
    if family.kind is FamilyKind.NON_K_MULTIPLES:
        return [disc, EqualityFamily(FamilyKind.FIRST_HARMONIC), family]
    if family.kind is FamilyKind.EVEN_K_MULTIPLES:
        return [disc, family]
    return [disc, EqualityFamily(FamilyKind.EVEN_K_MULTIPLES, family.k), family]


def most_specific_family(
    family: EqualityFamily,
    *bodies: BodyLike,
    tol: float = COEFFICIENT_TOL,
) -> Optional[EqualityFamily]:
    """Most specific family within `family` that contains every body, or None."""
    profiles = [as_profile(body) for body in bodies]
    for candidate in family_chain(family):
        if all(candidate.contains(profile, tol) for profile in profiles):
            return candidate
    return None


def support_tolerance(report: SlackReport) -> float:
    """
    Smallest coefficient the verdict can resolve.

    A forbidden coefficient c moves the slack by O(c^2), so coefficients
    below sqrt(tolerance) are invisible to an equality verdict.
    """
    return max(COEFFICIENT_TOL, math.sqrt(report.tolerance))


def classify_equality(S: BodyLike, report: SlackReport, T: Optional[BodyLike] = None) -> Optional[EqualityFamily]:
    """
    Match an equality case against the family its inequality mandates.

    Args:
        S: Body the report was computed for
        report: Report with verdict equality
        T: Partner body for two-body inequalities

    Returns:
        The most specific matching family, or None on mismatch

    Raises:
        ClassificationError: The report is not an equality
    """
    if report.verdict is not Verdict.EQUALITY:
        raise ClassificationError(
            f"classification needs an equality report, got {report.verdict.value} for {report.inequality_id.value}"
        )

    family = enforced_family(report.inequality_id, report.k, report.lam, report.mu)
    bodies = [S] if T is None else [S, T]
    match = most_specific_family(family, *bodies, tol=support_tolerance(report))
    if match is None:
        logger.warning(
            f"Equality for {report.inequality_id.value} outside its family {family.label} "
            f"(k={report.k}, lambda={report.lam}, mu={report.mu}, alpha={report.alpha})"
        )
    return match

"""
Slack reports: one evaluated inequality with its verdict and provenance.

Slack is always oriented so that slack >= 0 means the inequality holds,
whichever direction the inequality is written in.
"""

import hashlib
from dataclasses import asdict, dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

import pandas as pd

DEFAULT_RTOL = 1e-9

CSV_COLUMNS = ['inequality_id', 'k', 'lambda', 'mu', 'alpha', 'lhs', 'rhs', 'slack', 'verdict', 'family']
INTEGER_COLUMNS = ['k', 'body_index', 'partner_index']


class InequalityId(str, Enum):
    T1 = 'T1'
    T2 = 'T2'
    T3 = 'T3'
    C31 = 'C31'
    STAB35 = 'stab35'
    STAB37 = 'stab37'
    DUAL_ISO = 'dual_iso'
    MIXED_ISO = 'mixed_iso'

    @property
    def two_body(self) -> bool:
        return self in (InequalityId.T3, InequalityId.MIXED_ISO)

    @property
    def needs_hypothesis(self) -> bool:
        """Whether harmonics with n/k even must vanish."""
        return self in (InequalityId.T1, InequalityId.STAB35)


class Verdict(str, Enum):
    HOLDS = 'holds'
    EQUALITY = 'equality'
    VIOLATED = 'violated'


def tolerance_for(lhs: float, rhs: float, rtol: float = DEFAULT_RTOL) -> float:
    """rtol * max(1, |lhs|, |rhs|): relative for large values, absolute near zero."""
    return rtol * max(1.0, abs(lhs), abs(rhs))


def verdict_for(slack: float, tol: float) -> Verdict:
    if abs(slack) <= tol:
        return Verdict.EQUALITY
    if slack < -tol:
        return Verdict.VIOLATED
    return Verdict.HOLDS


@dataclass(frozen=True)
class SlackReport:
    """
    One inequality evaluation.

    Attributes:
        inequality_id: Which inequality
        lhs: Left side
        rhs: Right side
        slack: Signed slack, >= 0 when the inequality holds
        verdict: holds, equality or violated
        tolerance: Tolerance used for the verdict
        k, lam, mu, alpha: Parameters (None when not applicable)
        equality_family_match: Family label the body matched, if any
        stated_family: Family the inequality is usually quoted with
        method: Method used for lhs and rhs
        oracle_lhs, oracle_rhs: The same sides by quadrature
        oracle_residual: max of the lhs and rhs residuals
        exploratory: Parameters outside the admissible range were allowed
        expected_violation: Exploratory report, a violation is not a failure
        body_index, partner_index: Positions within an ensemble
    """

    inequality_id: InequalityId
    lhs: float
    rhs: float
    slack: float
    verdict: Verdict
    tolerance: float
    k: Optional[int] = None
    lam: Optional[float] = None
    mu: Optional[float] = None
    alpha: Optional[float] = None
    equality_family_match: Optional[str] = None
    stated_family: Optional[str] = None
    method: str = 'closed_form'
    oracle_lhs: Optional[float] = None
    oracle_rhs: Optional[float] = None
    oracle_residual: Optional[float] = None
    exploratory: bool = False
    expected_violation: bool = False
    body_index: Optional[int] = None
    partner_index: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.verdict is not Verdict.VIOLATED

    @property
    def is_failure(self) -> bool:
        """A violation that was not expected from out-of-range parameters."""
        return self.verdict is Verdict.VIOLATED and not self.expected_violation

    def oracle_agrees(self, rtol: float = DEFAULT_RTOL) -> bool:
        if self.oracle_residual is None:
            return True
        return self.oracle_residual <= tolerance_for(self.lhs, self.rhs, rtol)

    def with_indices(self, body_index: Optional[int], partner_index: Optional[int] = None) -> 'SlackReport':
        return replace(self, body_index=body_index, partner_index=partner_index)

    def to_dict(self) -> Dict:
        """JSON-ready dict; the lambda parameter is keyed 'lambda'."""
        data = asdict(self)
        data['inequality_id'] = self.inequality_id.value
        data['verdict'] = self.verdict.value
        data['lambda'] = data.pop('lam')
        return data

    def csv_row(self) -> Dict:
        return {
            'inequality_id': self.inequality_id.value,
            'k': self.k,
            'lambda': self.lam,
            'mu': self.mu,
            'alpha': self.alpha,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'slack': self.slack,
            'verdict': self.verdict.value,
            'family': self.equality_family_match,
        }


def reports_frame(reports: Iterable[SlackReport], with_indices: bool = False) -> pd.DataFrame:
    """
    Tabulate reports in the fixed CSV column order.

    Args:
        reports: Reports to tabulate
        with_indices: Prepend body_index and partner_index columns

    Returns:
        DataFrame with nullable integer columns for k and the indices
    """
    rows = []
    for report in reports:
        row = report.csv_row()
        if with_indices:
            row = {'body_index': report.body_index, 'partner_index': report.partner_index, **row}
        rows.append(row)

    columns = (['body_index', 'partner_index'] if with_indices else []) + CSV_COLUMNS
    frame = pd.DataFrame(rows, columns=columns)
    for column in INTEGER_COLUMNS:
        if column in frame.columns:
            frame[column] = frame[column].astype('Int64')
    return frame


def write_frame(frame: pd.DataFrame, path) -> Path:
    """Write a table as CSV with shortest round-trip floats and empty cells for missing values."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, na_rep='', lineterminator='\n')
    return path


def write_reports_csv(reports: Sequence[SlackReport], path, with_indices: bool = False) -> Path:
    return write_frame(reports_frame(reports, with_indices), path)


def failures(reports: Iterable[SlackReport]) -> List[SlackReport]:
    return [report for report in reports if report.is_failure]


def file_sha256(path) -> str:
    """Hex digest of a written artifact."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()

"""
Parameter sweeps: every inequality at every grid point on every body.

Grid points expand as follows:
    T1, stab35     k x lambda     (lambda = f k / pi, or explicit values)
    T2, stab37     k x mu         (mu = -m k, or explicit values)
    C31            k
    T3             k x alpha      (alpha_j = (2j + 1) pi / n, or explicit values)
    dual_iso, mixed_iso           one point each
Two-body inequalities pair body i with body (i + 1) mod count.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from bodies.profiles import StarBody
from bodies.quadrature import QuadratureSpec
from bodies.serializers import write_json
from inequalities.ensembles.sampling import ProgressCallback, map_in_order
from inequalities.inequalities import BaseInequality, get_inequality
from inequalities.reports import (
    DEFAULT_RTOL,
    InequalityId,
    SlackReport,
    Verdict,
    file_sha256,
    reports_frame,
    write_frame,
)

logger = logging.getLogger(__name__)

DEFAULT_KS = (2,)
DEFAULT_LAMBDA_FRACTIONS = (0.0, 0.25, 0.5, 0.75, 1.0)
DEFAULT_MU_MULTIPLIERS = (1.0, 2.0, 4.0)
DEFAULT_ALPHA_COUNT = 8

SUMMARY_COLUMNS = ['inequality_id', 'k', 'lambda', 'mu', 'alpha', 'reports', 'min_slack', 'argmin_body', 'violations']

LAMBDA_IDS = (InequalityId.T1, InequalityId.STAB35)
MU_IDS = (InequalityId.T2, InequalityId.STAB37)


@dataclass(frozen=True)
class GridPoint:
    inequality_id: InequalityId
    k: Optional[int] = None
    lam: Optional[float] = None
    mu: Optional[float] = None
    alpha: Optional[float] = None


@dataclass(frozen=True)
class ParameterGrid:
    """
    Attributes:
        inequalities: Inequality ids to sweep
        ks: Orders
        lambda_fractions: lambda = f k / pi, used when lambdas is None
        lambdas: Explicit lambda values
        mu_multipliers: mu = -m k, used when mus is None
        mus: Explicit mu values
        alpha_count: n in alpha_j = (2j + 1) pi / n, used when alphas is None
        alphas: Explicit shifts
        allow_out_of_range: Evaluate inadmissible points as exploratory
    """

    inequalities: Tuple[InequalityId, ...]
    ks: Tuple[int, ...] = DEFAULT_KS
    lambda_fractions: Tuple[float, ...] = DEFAULT_LAMBDA_FRACTIONS
    lambdas: Optional[Tuple[float, ...]] = None
    mu_multipliers: Tuple[float, ...] = DEFAULT_MU_MULTIPLIERS
    mus: Optional[Tuple[float, ...]] = None
    alpha_count: int = DEFAULT_ALPHA_COUNT
    alphas: Optional[Tuple[float, ...]] = None
    allow_out_of_range: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'inequalities', tuple(InequalityId(i) for i in self.inequalities))
        object.__setattr__(self, 'ks', tuple(int(k) for k in self.ks))

    def lambda_values(self, k: int) -> List[float]:
        if self.lambdas is not None:
            return list(self.lambdas)
        return [f * k / math.pi for f in self.lambda_fractions]

    def mu_values(self, k: int) -> List[float]:
        if self.mus is not None:
            return list(self.mus)
        return [-m * k for m in self.mu_multipliers]

    def alpha_values(self) -> List[float]:
        if self.alphas is not None:
            return list(self.alphas)
        return [(2 * j + 1) * math.pi / self.alpha_count for j in range(self.alpha_count)]

    @property
    def hypothesis_orders(self) -> Tuple[int, ...]:
        """Orders to project out of sampled bodies so that T1 and stab35 apply."""
        if any(i.needs_hypothesis for i in self.inequalities):
            return tuple(sorted(set(self.ks)))
        return ()

    def points(self) -> List[GridPoint]:
        points = []
        for inequality_id in self.inequalities:
            if inequality_id in (InequalityId.DUAL_ISO, InequalityId.MIXED_ISO):
                points.append(GridPoint(inequality_id))
                continue
            for k in self.ks:
                if inequality_id in LAMBDA_IDS:
                    points.extend(GridPoint(inequality_id, k, lam=lam) for lam in self.lambda_values(k))
                elif inequality_id in MU_IDS:
                    points.extend(GridPoint(inequality_id, k, mu=mu) for mu in self.mu_values(k))
                elif inequality_id is InequalityId.T3:
                    points.extend(GridPoint(inequality_id, k, alpha=alpha) for alpha in self.alpha_values())
                else:
                    points.append(GridPoint(inequality_id, k))
        return points


@dataclass
class SweepResult:
    reports: List[SlackReport]
    summary: pd.DataFrame

    @property
    def violations(self) -> int:
        return sum(1 for report in self.reports if report.verdict is Verdict.VIOLATED)

    @property
    def failures(self) -> List[SlackReport]:
        return [report for report in self.reports if report.is_failure]

    def reports_frame(self) -> pd.DataFrame:
        return reports_frame(self.reports, with_indices=True)


def _summary_row(point: GridPoint, inequality: BaseInequality, reports: Sequence[SlackReport]) -> Dict:
    best = min(reports, key=lambda report: report.slack)
    violations = sum(1 for report in reports if report.verdict is Verdict.VIOLATED)
    if violations and not inequality.exploratory:
        logger.warning(
            f"{violations} violations of {point.inequality_id.value} at k={inequality.k}, "
            f"lambda={inequality.lam}, mu={inequality.mu}, alpha={inequality.alpha}"
        )
    return {
        'inequality_id': point.inequality_id.value,
        'k': inequality.k,
        'lambda': inequality.lam,
        'mu': inequality.mu,
        'alpha': inequality.alpha,
        'reports': len(reports),
        'min_slack': best.slack,
        'argmin_body': best.body_index,
        'violations': violations,
    }


def sweep(
    bodies: Sequence[StarBody],
    grid: ParameterGrid,
    workers: int = 1,
    rtol: float = DEFAULT_RTOL,
    oracle: bool = True,
    quadrature: Optional[QuadratureSpec] = None,
    progress: Optional[ProgressCallback] = None,
) -> SweepResult:
    """
    Evaluate every grid point on every body.

    Args:
        bodies: Ensemble in index order
        grid: Parameter grid
        workers: Thread cap
        rtol: Verdict tolerance
        oracle: Recompute both sides by quadrature
        quadrature: Oracle node spec
        progress: progress(done, total) callback

    Returns:
        SweepResult with reports ordered by grid point then body index

    Raises:
        ParameterRangeError: Inadmissible grid point without allow_out_of_range
        HypothesisError: A body violates the hypothesis of T1 or stab35
    """
    count = len(bodies)
    points = grid.points()
    inequalities = [
        get_inequality(
            point.inequality_id,
            k=point.k, lam=point.lam, mu=point.mu, alpha=point.alpha,
            allow_out_of_range=grid.allow_out_of_range, rtol=rtol, oracle=oracle, quadrature=quadrature,
        )
        for point in points
    ]

    def evaluate(task: Tuple[int, int]) -> SlackReport:
        p, i = task
        inequality = inequalities[p]
        if inequality.two_body:
            j = (i + 1) % count
            return inequality.evaluate(bodies[i], bodies[j]).with_indices(i, j)
        return inequality.evaluate(bodies[i]).with_indices(i)

    tasks = [(p, i) for p in range(len(points)) for i in range(count)]
    reports = map_in_order(evaluate, tasks, workers, progress)

    rows = [
        _summary_row(point, inequalities[p], reports[p * count:(p + 1) * count])
        for p, point in enumerate(points)
    ]
    summary = pd.DataFrame(rows, columns=SUMMARY_COLUMNS)
    summary['k'] = summary['k'].astype('Int64')
    summary['argmin_body'] = summary['argmin_body'].astype('Int64')

    result = SweepResult(reports, summary)
    logger.info(f"Sweep: {len(points)} grid points x {count} bodies, {result.violations} violations")
    return result


def write_sweep_artifacts(result: SweepResult, output_dir, config: Optional[Dict] = None) -> Dict[str, Path]:
    """
    Write reports.csv, summary.csv and the sweep.json digest.

    The digest holds counts, the config and the sha256 of both tables; no timestamps.
    """
    output_dir = Path(output_dir)
    paths = {
        'reports': write_frame(result.reports_frame(), output_dir / 'reports.csv'),
        'summary': write_frame(result.summary, output_dir / 'summary.csv'),
    }
    digest = {
        'config': config or {},
        'reports': len(result.reports),
        'grid_points': int(len(result.summary)),
        'violations': result.violations,
        'failures': len(result.failures),
        'min_slack': float(result.summary['min_slack'].min()) if len(result.summary) else None,
        'sha256': {name: file_sha256(path) for name, path in sorted(paths.items())},
    }
    paths['digest'] = write_json(digest, output_dir / 'sweep.json')
    return paths

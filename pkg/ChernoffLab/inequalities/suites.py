"""
Acceptance suites.

Each suite runs one family of checks over a seeded ensemble and reports
whether it passed together with the worst value of its metric:

    identity       closed forms against the quadrature oracle
    lemma          the two k-order radial identities
    sign           zero violations over the admissible parameter grid
    sharpness      equality families attain equality, perturbations do not
    monotonicity   phi non-decreasing in lambda, psi non-increasing in mu
    limit          limit study deviations against the closed-form prediction
    search         extremal search lands on the predicted family
    determinism    repeated sweeps produce identical artifacts
"""

import logging
import math
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from bodies.functionals import (
    CROSS_CHECK_RTOL,
    Lemma,
    area,
    chord_mixed_integral,
    chord_self_integral,
    dual_l2_distance_to_mean_disc,
    dual_mixed_area_disk,
    lemma_identity_residual,
    oriented_area,
)
from bodies.profiles import EqualityFamily, FamilyKind, StarBody, make_equality_family
from bodies.serializers import write_json
from inequalities.ensembles.sampling import EnsembleSpec, ProgressCallback, sample_ensemble
from inequalities.ensembles.search import SearchSpec, minimize_slack
from inequalities.ensembles.sweeps import ParameterGrid, sweep, write_sweep_artifacts
from inequalities.inequalities import deficit_phi, deficit_psi, get_inequality
from inequalities.limits import limit_sequence
from inequalities.reports import DEFAULT_RTOL, InequalityId, file_sha256, write_frame

logger = logging.getLogger(__name__)

SUITE_NAMES = ('identity', 'lemma', 'sign', 'sharpness', 'monotonicity', 'limit', 'search', 'determinism')

SHARPNESS_TOL = 1e-10
PERTURBATION = 1e-3
PERTURBED_SLACK = 1e-7
MONOTONE_TOL = 1e-12
LIMIT_TOL = 1e-10
SEARCH_SLACK = 1e-6
SEARCH_MASS = 1e-3


@dataclass(frozen=True)
class SuiteConfig:
    """
    Attributes:
        count: Ensemble size for the identity, lemma and sign suites
        seed: Ensemble seed
        n_max: Truncation order of sampled bodies
        ks: Orders checked
        lemma_alphas: Random shifts per body and k in the lemma suite
        alpha_count: Shift grid size in the sign suite
        monotonicity_count: Bodies in the monotonicity suite
        monotonicity_points: Parameter values per body and k
        limit_pairs: Body pairs in the limit suite
        limit_ks: Orders of the limit study
        search_starts: Random starts in the search suite
        search_n_max: Truncation order of search starts
        determinism_count: Bodies in the repeated sweep
        suites: Suites to run
        rtol: Verdict and oracle tolerance
    """

    count: int = 1000
    seed: int = 0
    n_max: int = 32
    ks: Tuple[int, ...] = (2, 3, 4, 5, 6, 7, 8)
    lemma_alphas: int = 5
    alpha_count: int = 8
    monotonicity_count: int = 100
    monotonicity_points: int = 10
    limit_pairs: int = 20
    limit_ks: Tuple[int, ...] = (2, 4, 8, 16, 32, 64, 128, 256)
    search_starts: int = 20
    search_n_max: int = 8
    determinism_count: int = 20
    suites: Tuple[str, ...] = SUITE_NAMES
    rtol: float = DEFAULT_RTOL


@dataclass
class SuiteResult:
    name: str
    passed: bool
    metric: str
    worst: float
    checked: int
    frame: pd.DataFrame = field(repr=False)

    def to_dict(self) -> Dict:
        return {
            'passed': self.passed,
            'metric': self.metric,
            'worst': self.worst,
            'checked': self.checked,
        }


def _stream(seed: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *keys]))


def _relative(residual: float, value: float) -> float:
    return residual / max(1.0, abs(value))


class SuiteRunner:
    """Runs the acceptance suites for one configuration, sharing the sampled ensembles."""

    def __init__(self, config: SuiteConfig, workers: int = 1, progress: Optional[ProgressCallback] = None):
        self.config = config
        self.workers = workers
        self.progress = progress
        self._ensembles: Dict[Tuple, List[StarBody]] = {}

    def ensemble(self, count: int, n_max: Optional[int] = None, hypothesis: bool = True) -> List[StarBody]:
        n_max = self.config.n_max if n_max is None else n_max
        key = (count, n_max, hypothesis)
        if key not in self._ensembles:
            spec = EnsembleSpec(
                count=count,
                seed=self.config.seed,
                n_max=n_max,
                hypothesis_orders=self.config.ks if hypothesis else (),
            )
            self._ensembles[key] = sample_ensemble(spec, self.workers, self.progress)
        return self._ensembles[key]

    def run(self) -> List[SuiteResult]:
        suites: Dict[str, Callable[[], SuiteResult]] = {
            'identity': self.identity,
            'lemma': self.lemma,
            'sign': self.sign,
            'sharpness': self.sharpness,
            'monotonicity': self.monotonicity,
            'limit': self.limit,
            'search': self.search,
            'determinism': self.determinism,
        }
        results = []
        for name in self.config.suites:
            result = suites[name]()
            if not result.passed:
                logger.error(f"Suite {name} failed: worst {result.metric} = {result.worst!r}")
            else:
                logger.info(f"Suite {name} passed: worst {result.metric} = {result.worst!r}")
            results.append(result)
        return results

    def identity(self) -> SuiteResult:
        bodies = self.ensemble(self.config.count, hypothesis=False)
        rows = []
        for i, S in enumerate(bodies):
            T = bodies[(i + 1) % len(bodies)]
            checks = [
                ('area', None, area(S, cross_check=True)),
                ('oriented_area', None, oriented_area(S, cross_check=True)),
                ('dual_mixed_area_disk', None, dual_mixed_area_disk(S, cross_check=True)),
                ('dual_l2_distance_to_mean_disc', None, dual_l2_distance_to_mean_disc(S, cross_check=True)),
            ]
            for k in self.config.ks:
                alpha = _stream(self.config.seed, i, k).uniform(0.0, 2 * math.pi)
                checks.append(('chord_self_integral', k, chord_self_integral(S, k, cross_check=True)))
                checks.append(('chord_mixed_integral', k, chord_mixed_integral(S, T, k, alpha, cross_check=True)))
            for name, k, value in checks:
                rows.append({
                    'body_index': i,
                    'k': k,
                    'functional': name,
                    'closed_form': value.value,
                    'relative_residual': _relative(value.cross_check_residual, value.value),
                })
        frame = pd.DataFrame(rows, columns=['body_index', 'k', 'functional', 'closed_form', 'relative_residual'])
        frame['k'] = frame['k'].astype('Int64')
        worst = float(frame['relative_residual'].max())
        return SuiteResult('identity', worst <= CROSS_CHECK_RTOL, 'relative_residual', worst, len(frame), frame)

    def lemma(self) -> SuiteResult:
        bodies = self.ensemble(self.config.count, hypothesis=False)
        rows = []
        for i, S in enumerate(bodies):
            T = bodies[(i + 1) % len(bodies)]
            for k in self.config.ks:
                rows.append({'body_index': i, 'k': k, 'lemma': Lemma.LEMMA1.value, 'alpha': None,
                             'residual': lemma_identity_residual(S, k, Lemma.LEMMA1)})
                alphas = _stream(self.config.seed, i, k, 2).uniform(0.0, 2 * math.pi, self.config.lemma_alphas)
                for alpha in alphas:
                    rows.append({'body_index': i, 'k': k, 'lemma': Lemma.LEMMA2.value, 'alpha': float(alpha),
                                 'residual': lemma_identity_residual(S, k, Lemma.LEMMA2, alpha=float(alpha), g=T)})
        frame = pd.DataFrame(rows, columns=['body_index', 'k', 'lemma', 'alpha', 'residual'])
        worst = float(frame['residual'].max())
        return SuiteResult('lemma', worst < CROSS_CHECK_RTOL, 'residual', worst, len(frame), frame)

    def sign_grid(self) -> ParameterGrid:
        return ParameterGrid(inequalities=tuple(InequalityId), ks=self.config.ks, alpha_count=self.config.alpha_count)

    def sign(self) -> SuiteResult:
        bodies = self.ensemble(self.config.count)
        result = sweep(bodies, self.sign_grid(), self.workers, self.config.rtol, oracle=False, progress=self.progress)
        worst = float(result.summary['min_slack'].min())
        return SuiteResult('sign', result.violations == 0, 'min_slack', worst, len(result.reports), result.summary)

    def sharpness_cases(self, k: int) -> List[Tuple[dict, List[StarBody]]]:
        """(inequality parameters, bodies) pairs expected to attain equality."""
        upper = k / math.pi
        disc = make_equality_family(FamilyKind.DISC, 2.0)
        non_multiples = make_equality_family(
            EqualityFamily(FamilyKind.NON_K_MULTIPLES, k), 2.0, {1: (0.3, 0.0), k + 1: (0.05, 0.05)}
        )
        first = make_equality_family(FamilyKind.FIRST_HARMONIC, 2.0, {1: (0.4, 0.1)})
        even = make_equality_family(EqualityFamily(FamilyKind.EVEN_K_MULTIPLES, k), 2.0, {2 * k: (0.1, 0.0)})
        multiples = make_equality_family(EqualityFamily(FamilyKind.K_MULTIPLES, k), 2.0, {k: (0.2, 0.0)})
        return [
            ({'inequality_id': InequalityId.T1, 'k': k, 'lam': 0.5 * upper}, [disc]),
            ({'inequality_id': InequalityId.T1, 'k': k, 'lam': upper}, [non_multiples]),
            ({'inequality_id': InequalityId.T2, 'k': k, 'mu': -2.0 * k}, [disc]),
            ({'inequality_id': InequalityId.T2, 'k': k, 'mu': -float(k)}, [first]),
            ({'inequality_id': InequalityId.C31, 'k': k}, [even]),
            ({'inequality_id': InequalityId.STAB35, 'k': k, 'lam': 0.5 * upper}, [non_multiples]),
            ({'inequality_id': InequalityId.STAB37, 'k': k, 'mu': -float(k)}, [disc]),
            ({'inequality_id': InequalityId.DUAL_ISO}, [disc]),
            ({'inequality_id': InequalityId.MIXED_ISO}, [disc, make_equality_family(FamilyKind.DISC, 3.0)]),
            ({'inequality_id': InequalityId.T3, 'k': k, 'alpha': 2 * math.pi / k}, [multiples, multiples]),
        ]

    def sharpness(self) -> SuiteResult:
        rows = []
        for k in self.config.ks:
            for params, bodies in self.sharpness_cases(k):
                params = dict(params)
                inequality_id = params.pop('inequality_id')
                inequality = get_inequality(inequality_id, oracle=False, rtol=self.config.rtol, **params)
                report = inequality.evaluate(*bodies)
                rows.append({'inequality_id': inequality_id.value, 'k': k, 'perturbed_n': None,
                             'slack': report.slack, 'passed': abs(report.slack) <= SHARPNESS_TOL})

                family = inequality.predicted_family()
                profile = bodies[0].profile
                for n in range(1, 2 * k + 2):
                    if family.allows(n) or (inequality_id.needs_hypothesis and n % (2 * k) == 0):
                        continue
                    a, b = profile.coefficient(n)
                    perturbed = profile.with_coefficient(n, a + PERTURBATION, b)
                    slack = inequality.evaluate(perturbed, *bodies[1:]).slack
                    rows.append({'inequality_id': inequality_id.value, 'k': k, 'perturbed_n': n,
                                 'slack': slack, 'passed': slack > PERTURBED_SLACK})
        frame = pd.DataFrame(rows, columns=['inequality_id', 'k', 'perturbed_n', 'slack', 'passed'])
        frame['perturbed_n'] = frame['perturbed_n'].astype('Int64')
        exact = frame[frame['perturbed_n'].isna()]
        worst = float(exact['slack'].abs().max())
        return SuiteResult('sharpness', bool(frame['passed'].all()), 'abs_equality_slack', worst, len(frame), frame)

    def monotonicity(self) -> SuiteResult:
        bodies = self.ensemble(self.config.monotonicity_count)
        points = self.config.monotonicity_points
        rows = []
        for i, S in enumerate(bodies):
            for k in self.config.ks:
                lambdas = np.linspace(0.0, k / math.pi, points)
                phi = np.array([deficit_phi(S, k, float(lam)) for lam in lambdas])
                mus = np.linspace(-4.0 * k, -float(k), points)
                psi = np.array([deficit_psi(S, k, float(mu)) for mu in mus])
                # phi must not decrease, psi must not increase
                phi_inversion = float(max(0.0, -(np.diff(phi) / np.maximum(1.0, np.abs(phi[1:]))).min()))
                psi_inversion = float(max(0.0, (np.diff(psi) / np.maximum(1.0, np.abs(psi[1:]))).max()))
                rows.append({'body_index': i, 'k': k, 'phi_inversion': phi_inversion, 'psi_inversion': psi_inversion})
        frame = pd.DataFrame(rows, columns=['body_index', 'k', 'phi_inversion', 'psi_inversion'])
        worst = float(max(frame['phi_inversion'].max(), frame['psi_inversion'].max()))
        return SuiteResult('monotonicity', worst <= MONOTONE_TOL, 'inversion', worst, len(frame), frame)

    def limit(self) -> SuiteResult:
        pairs = max(2, self.config.limit_pairs)
        bodies = self.ensemble(pairs, hypothesis=False)
        n_max = max(body.n_max for body in bodies)
        frames = []
        for i, S in enumerate(bodies):
            T = bodies[(i + 1) % len(bodies)]
            alpha = float(_stream(self.config.seed, i, 3).uniform(0.0, 2 * math.pi))
            for row in limit_sequence(S, T, alpha, self.config.limit_ks, oracle=False):
                if row.k > n_max:
                    error = row.deviation
                else:
                    error = abs(row.deviation - row.predicted_deviation) / max(1.0, row.limit)
                frames.append({'body_index': i, 'alpha': alpha, **row.to_dict(), 'error': error})
        frame = pd.DataFrame(frames)
        frame = frame.drop(columns=['oracle_residual'])
        worst = float(frame['error'].max())
        return SuiteResult('limit', worst <= LIMIT_TOL, 'error', worst, len(frame), frame)

    def search(self) -> SuiteResult:
        k = min(self.config.ks)
        starts = self.ensemble(self.config.search_starts, n_max=self.config.search_n_max)
        rows = []
        for i, start in enumerate(starts):
            t1 = minimize_slack(SearchSpec(InequalityId.T1, start, k=k, lam=0.0))
            rows.append({'start_index': i, 'inequality_id': 'T1', 'status': t1.status.value,
                         'iterations': t1.iterations, 'slack': t1.slack, 'forbidden_mass': t1.forbidden_mass,
                         'passed': t1.slack < SEARCH_SLACK and t1.forbidden_mass < SEARCH_MASS})
            t2 = minimize_slack(SearchSpec(InequalityId.T2, start, k=k, mu=-float(k)))
            rows.append({'start_index': i, 'inequality_id': 'T2', 'status': t2.status.value,
                         'iterations': t2.iterations, 'slack': t2.slack, 'forbidden_mass': t2.forbidden_mass,
                         'passed': t2.forbidden_mass < SEARCH_MASS})
        frame = pd.DataFrame(rows)
        worst = float(frame['forbidden_mass'].max())
        return SuiteResult('search', bool(frame['passed'].all()), 'forbidden_mass', worst, len(frame), frame)

    def determinism(self) -> SuiteResult:
        bodies_first = self.ensemble(self.config.determinism_count)
        spec = EnsembleSpec(count=self.config.determinism_count, seed=self.config.seed, n_max=self.config.n_max,
                            hypothesis_orders=self.config.ks)
        bodies_second = sample_ensemble(spec, self.workers)
        grid = self.sign_grid()
        rows = []
        with tempfile.TemporaryDirectory() as first, tempfile.TemporaryDirectory() as second:
            paths_first = write_sweep_artifacts(sweep(bodies_first, grid, self.workers, self.config.rtol), first)
            paths_second = write_sweep_artifacts(sweep(bodies_second, grid, 1, self.config.rtol), second)
            for name in sorted(paths_first):
                rows.append({
                    'artifact': paths_first[name].name,
                    'sha256_first': file_sha256(paths_first[name]),
                    'sha256_second': file_sha256(paths_second[name]),
                })
        frame = pd.DataFrame(rows, columns=['artifact', 'sha256_first', 'sha256_second'])
        mismatches = int((frame['sha256_first'] != frame['sha256_second']).sum())
        return SuiteResult('determinism', mismatches == 0, 'mismatched_artifacts', float(mismatches), len(frame), frame)


def run_suites(config: SuiteConfig, workers: int = 1, progress: Optional[ProgressCallback] = None) -> List[SuiteResult]:
    return SuiteRunner(config, workers, progress).run()


def write_suite_artifacts(results: Sequence[SuiteResult], output_dir, config: Optional[Dict] = None) -> Dict[str, Path]:
    """One CSV per suite plus suite.json with verdicts and the sha256 of every CSV."""
    output_dir = Path(output_dir)
    paths = {result.name: write_frame(result.frame, output_dir / f'{result.name}.csv') for result in results}
    summary = {
        'config': config or {},
        'passed': all(result.passed for result in results),
        'suites': {result.name: result.to_dict() for result in results},
        'sha256': {name: file_sha256(path) for name, path in sorted(paths.items())},
    }
    paths['suite'] = write_json(summary, output_dir / 'suite.json')
    return paths

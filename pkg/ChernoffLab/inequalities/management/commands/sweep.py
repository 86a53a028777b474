"""
Sweep inequalities over an ensemble and a parameter grid.

Usage:
    python manage.py sweep sweep.json --output-dir artifacts/sweep --threads 4
    python manage.py sweep sweep.json --save

Writes reports.csv, summary.csv and sweep.json to the output directory.
Exits 1 when a report in the admissible range is violated or disagrees
with its quadrature oracle.
"""

import logging

from bodies.management.base import EXIT_VIOLATION, LabCommand, lab_settings
from bodies.quadrature import QuadratureSpec
from bodies.serializers import resolve_body
from inequalities.ensembles.sampling import EnsembleSpec, sample_ensemble
from inequalities.ensembles.sweeps import ParameterGrid, sweep, write_sweep_artifacts
from inequalities.forms import SweepConfigForm
from inequalities.models import VerificationRun

logger = logging.getLogger(__name__)


def _optional_tuple(values):
    return tuple(values) if values else None


def build_grid(config) -> ParameterGrid:
    return ParameterGrid(
        inequalities=tuple(config['inequalities']),
        ks=tuple(config['ks']),
        lambda_fractions=tuple(config['lambda_fractions']),
        lambdas=_optional_tuple(config['lambdas']),
        mu_multipliers=tuple(config['mu_multipliers']),
        mus=_optional_tuple(config['mus']),
        alpha_count=config['alpha_count'],
        alphas=_optional_tuple(config['alphas']),
        allow_out_of_range=config['allow_out_of_range'],
    )


def build_ensemble_spec(config, hypothesis_orders=()) -> EnsembleSpec:
    """EnsembleSpec from a validated ensemble config; seed and n_max fall back to the lab settings."""
    lab = lab_settings()
    return EnsembleSpec(
        count=config['count'],
        seed=config['seed'] if config['seed'] is not None else lab['SEED'],
        n_max=config['n_max'] if config['n_max'] is not None else lab['N_MAX'],
        a0_range=tuple(config['a0_range']),
        decay_exponent=config['decay_exponent'],
        sigma=config['sigma'],
        hypothesis_orders=tuple(config['hypothesis_orders']) + tuple(hypothesis_orders),
        positivity_floor=config['positivity_floor'],
    )


class Command(LabCommand):
    help = "Sweep inequalities over a seeded ensemble and a parameter grid"
    progress_label = 'Sweep'

    def add_arguments(self, parser):
        self.add_config_arguments(parser)
        self.add_progress_argument(parser)
        parser.add_argument(
            '--tol',
            type=float,
            help='Relative verdict tolerance (default: settings TOLERANCE)'
        )
        parser.add_argument(
            '--save',
            action='store_true',
            help='Store the reports as a VerificationRun in the database'
        )

    def handle(self, *args, **options):
        config, base_dir = self.load_config(options['config_file'], SweepConfigForm)
        workers = self.workers(options)
        tol = options['tol'] if options['tol'] is not None else lab_settings()['TOLERANCE']
        grid = build_grid(config)
        self.start_progress(options)

        if config['bodies']:
            bodies = [resolve_body(reference, base_dir) for reference in config['bodies']]
            spec = None
        else:
            spec = build_ensemble_spec(config, grid.hypothesis_orders)
            bodies = sample_ensemble(spec, workers)

        result = sweep(
            bodies, grid,
            workers=workers,
            rtol=tol,
            oracle=config['oracle'],
            quadrature=QuadratureSpec(config['nodes']) if config['nodes'] else None,
            progress=self.report_progress,
        )

        # the digest echoes the config with its defaults resolved
        echoed = dict(config, tol=tol)
        if spec is not None:
            echoed.update(seed=spec.seed, n_max=spec.n_max, hypothesis_orders=list(spec.hypothesis_orders))
        output_dir = self.output_dir(options, 'sweep')
        paths = write_sweep_artifacts(result, output_dir, echoed)

        if options['save']:
            run = VerificationRun.record('sweep', result.reports, config=echoed)
            self.stdout.write(f"Saved run {run.pk}")

        mismatches = sum(1 for report in result.reports if not report.oracle_agrees(tol))
        line = (f"{len(result.reports)} reports over {len(result.summary)} grid points, "
                f"{result.violations} violations, {len(result.failures)} failures -> {paths['digest']}")
        if result.failures or mismatches:
            self.stdout.write(self.style.ERROR(line))
            self.fail(f"{len(result.failures)} unexpected violations, {mismatches} oracle mismatches", EXIT_VIOLATION)
        self.stdout.write(self.style.SUCCESS(line))

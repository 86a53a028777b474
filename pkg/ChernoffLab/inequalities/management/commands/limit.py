"""
Limit study of the normalised mixed chord integral as k grows.

Usage:
    python manage.py limit limit.json --output-dir artifacts/limit

Config example:
    {"S": "s.json", "T": {"a0": 2.0, "harmonics": [[0, 0], [0.2, 0]]}, "alpha": 3.14159}

Writes limit.csv with columns k,value,limit,deviation,predicted_deviation,oracle_residual
and limit.json. Exits 1 when a deviation departs from its closed-form
prediction.
"""

import logging

from bodies.management.base import EXIT_VIOLATION, LabCommand
from bodies.quadrature import QuadratureSpec
from bodies.serializers import resolve_body, write_json
from inequalities.forms import LimitConfigForm
from inequalities.limits import limit_frame, limit_sequence
from inequalities.reports import file_sha256, write_frame
from inequalities.suites import LIMIT_TOL

logger = logging.getLogger(__name__)


class Command(LabCommand):
    help = "Tabulate (1/2k^2) I_k(S, T, alpha) against its k -> infinity limit"

    def add_arguments(self, parser):
        self.add_config_arguments(parser)

    def handle(self, *args, **options):
        config, base_dir = self.load_config(options['config_file'], LimitConfigForm)
        S = resolve_body(config['S'], base_dir)
        T = resolve_body(config['T'], base_dir)

        rows = limit_sequence(
            S, T, config['alpha'], config['k_values'],
            oracle=config['oracle'],
            quadrature=QuadratureSpec(config['nodes']) if config['nodes'] else None,
        )
        frame = limit_frame(rows)
        errors = (frame['deviation'] - frame['predicted_deviation']).abs() / frame['limit'].abs().clip(lower=1.0)
        worst = float(errors.max())

        output_dir = self.output_dir(options, 'limit')
        csv_path = write_frame(frame, output_dir / 'limit.csv')
        truncation = min(S.n_max, T.n_max)
        beyond = frame.loc[frame['k'] > truncation, 'deviation']
        digest = {
            'config': config,
            'rows': len(frame),
            'limit': rows[0].limit,
            'max_prediction_error': worst,
            'max_deviation_beyond_truncation': float(beyond.max()) if len(beyond) else None,
            'sha256': {'limit': file_sha256(csv_path)},
        }
        path = write_json(digest, output_dir / 'limit.json')

        line = f"{len(frame)} orders, limit {rows[0].limit!r}, worst prediction error {worst:.3e} -> {path}"
        if worst > LIMIT_TOL:
            self.stdout.write(self.style.ERROR(line))
            self.fail(f"deviation departs from the closed-form prediction by {worst:.3e}", EXIT_VIOLATION)
        self.stdout.write(self.style.SUCCESS(line))

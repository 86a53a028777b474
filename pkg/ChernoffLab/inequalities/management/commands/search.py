"""
Near-equality extremal search from a start body.

Usage:
    python manage.py search search.json --output-dir artifacts/search

Config example:
    {"inequality": "T1", "k": 2, "lambda": 0, "start": "start.json"}

Writes search.json (status, trace summary, family comparison and final
report), trace.csv and the terminal body as body.json.
"""

import logging

import pandas as pd

from bodies.management.base import LabCommand
from bodies.serializers import dump_body, resolve_body, write_json
from inequalities.ensembles.search import SearchSpec, SearchStatus, minimize_slack
from inequalities.forms import SearchConfigForm
from inequalities.reports import write_frame

logger = logging.getLogger(__name__)


class Command(LabCommand):
    help = "Descend the slack of an inequality towards its equality family"

    def add_arguments(self, parser):
        self.add_config_arguments(parser)

    def handle(self, *args, **options):
        config, base_dir = self.load_config(options['config_file'], SearchConfigForm)
        start = resolve_body(config['start'], base_dir)
        partner = resolve_body(config['partner'], base_dir) if config['partner'] is not None else None

        spec = SearchSpec(
            inequality_id=config['inequality'],
            start=start,
            k=config['k'],
            lam=config['lambda'],
            mu=config['mu'],
            alpha=config['alpha'],
            partner=partner,
            max_iters=config['max_iters'],
            convergence_tol=config['convergence_tol'],
            barrier_weight=config['barrier_weight'],
            project=config['project'],
            family_tol=config['family_tol'],
        )
        result = minimize_slack(spec)

        output_dir = self.output_dir(options, 'search')
        trace = pd.DataFrame({'iteration': range(len(result.trace)), 'slack': result.trace})
        write_frame(trace, output_dir / 'trace.csv')
        dump_body(result.body, output_dir / 'body.json')
        summary = result.to_dict()
        summary['config'] = config
        summary['report'] = result.report.to_dict() if result.report is not None else None
        path = write_json(summary, output_dir / 'search.json')

        line = (f"{spec.inequality_id.value}: {result.status.value} after {result.iterations} iterations, "
                f"slack {result.slack:.3e}, family {summary['family_match'] or 'none'} "
                f"(predicted {summary['predicted_family']}) -> {path}")
        if result.status is SearchStatus.BUDGET_EXHAUSTED:
            self.stdout.write(self.style.WARNING(line))
        else:
            self.stdout.write(self.style.SUCCESS(line))

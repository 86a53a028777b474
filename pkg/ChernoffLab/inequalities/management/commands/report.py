"""
Run the acceptance suites, or export a saved verification run.

Usage:
    python manage.py report suite.json --output-dir artifacts/report --threads 8
    python manage.py report --export-run 3

Suites write one CSV per suite plus suite.json; an exported run writes
reports.csv and run.json. Exits 1 when a suite fails.
"""

import logging

from bodies.management.base import EXIT_USAGE, EXIT_VIOLATION, LabCommand, lab_settings
from bodies.serializers import read_json, write_json
from inequalities.forms import SuiteConfigForm
from inequalities.models import VerificationRun
from inequalities.reports import file_sha256, write_reports_csv
from inequalities.suites import SuiteConfig, run_suites, write_suite_artifacts

logger = logging.getLogger(__name__)


class Command(LabCommand):
    help = "Run the acceptance suites and write their artifacts"
    progress_label = 'Ensemble'

    def add_arguments(self, parser):
        parser.add_argument(
            'config_file',
            nargs='?',
            type=str,
            help='Suite config JSON (default: the full acceptance configuration)'
        )
        parser.add_argument(
            '--output-dir',
            type=str,
            help='Directory for the artifacts (default: settings OUTPUT_DIR/report)'
        )
        parser.add_argument(
            '--threads',
            type=int,
            help='Worker threads (default: settings THREADS)'
        )
        parser.add_argument(
            '--export-run',
            type=int,
            metavar='ID',
            help='Export the reports of a saved run instead of running suites'
        )
        self.add_progress_argument(parser)

    def handle(self, *args, **options):
        if options['export_run'] is not None:
            self.export_run(options)
            return

        data = read_json(options['config_file']) if options['config_file'] else {}
        config = SuiteConfigForm.validate(data, source=options['config_file'] or 'suite defaults')
        lab = lab_settings()
        if config['seed'] is None:
            config['seed'] = lab['SEED']
        if config['rtol'] is None:
            config['rtol'] = lab['TOLERANCE']
        suite_config = SuiteConfig(**{
            key: tuple(value) if isinstance(value, list) else value
            for key, value in config.items()
        })

        self.start_progress(options)
        results = run_suites(suite_config, self.workers(options), self.report_progress)
        paths = write_suite_artifacts(results, self.output_dir(options, 'report'), config)

        for result in results:
            line = f"{result.name}: worst {result.metric} {result.worst:.3e} over {result.checked} checks"
            style = self.style.SUCCESS if result.passed else self.style.ERROR
            self.stdout.write(style(f"{'PASS' if result.passed else 'FAIL'} {line}"))
        self.stdout.write(f"Wrote {paths['suite']}")

        failed = [result.name for result in results if not result.passed]
        if failed:
            self.fail(f"suite(s) failed: {', '.join(failed)}", EXIT_VIOLATION)

    def export_run(self, options):
        try:
            run = VerificationRun.objects.get(pk=options['export_run'])
        except VerificationRun.DoesNotExist:
            self.fail(f"No saved run with id {options['export_run']}", EXIT_USAGE)

        output_dir = self.output_dir(options, f"run-{run.pk}")
        csv_path = write_reports_csv(run.slack_reports(), output_dir / 'reports.csv', with_indices=True)
        summary = {
            'command': run.command,
            'config': run.config,
            'reports': run.total_reports,
            'violations': run.violations,
            'failures': run.failures,
            'min_slack': run.min_slack,
            'sha256': {'reports': file_sha256(csv_path)},
        }
        path = write_json(summary, output_dir / 'run.json')
        self.stdout.write(self.style.SUCCESS(f"Exported run {run.pk} ({run.total_reports} reports) -> {path}"))

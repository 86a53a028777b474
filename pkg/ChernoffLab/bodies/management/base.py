"""
Shared base for the lab's management commands.

Lab exceptions are translated into CommandError with a fixed return code so
that `manage.py <command>` exits with the documented status:

    0 holds or equality, 1 violation, 2 parse/config/parameter error,
    3 positivity rejection, 4 hypothesis violation, 5 I/O error.
"""

import logging
import time
from pathlib import Path
from typing import Dict

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from bodies.exceptions import (
    ChernoffLabError,
    HypothesisError,
    OracleMismatchError,
    PositivityError,
)
from bodies.serializers import read_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_POSITIVITY = 3
EXIT_HYPOTHESIS = 4
EXIT_IO = 5

DEFAULT_LAB_SETTINGS = {
    'N_MAX': 64,
    'TOLERANCE': 1e-9,
    'SEED': 0,
    'THREADS': 1,
    'OUTPUT_DIR': 'artifacts',
}


def lab_settings() -> Dict:
    """settings.CHERNOFF_LAB merged over the built-in defaults."""
    merged = dict(DEFAULT_LAB_SETTINGS)
    merged.update(getattr(settings, 'CHERNOFF_LAB', {}))
    return merged


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, PositivityError):
        return EXIT_POSITIVITY
    if isinstance(exc, HypothesisError):
        return EXIT_HYPOTHESIS
    if isinstance(exc, OracleMismatchError):
        return EXIT_VIOLATION
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_USAGE


def calculate_progress_metrics(items_processed, total_items, start_time):
    """
    Calculate progress bar and timing metrics.

    Args:
        items_processed (int): Number of items processed
        total_items (int): Total number of items to process
        start_time (float): Start time for elapsed calculation

    Returns:
        dict: Progress metrics including bar, percentage, timing info
    """
    percentage = min(100, (items_processed / total_items) * 100) if total_items > 0 else 0
    bar_length = 40
    filled_length = int(bar_length * percentage / 100)
    bar = "█" * filled_length + "░" * (bar_length - filled_length)

    elapsed = time.time() - start_time
    if items_processed > 0:
        remaining = (total_items - items_processed) * elapsed / items_processed
    else:
        remaining = 0.0

    return {
        'bar': bar,
        'percentage': percentage,
        'items_processed': items_processed,
        'total_items': total_items,
        'elapsed_min': int(elapsed // 60),
        'elapsed_sec': int(elapsed % 60),
        'remaining_min': int(remaining // 60),
        'remaining_sec': int(remaining % 60),
    }


def format_progress_line(metrics, label='Progress', complete=False):
    """
    Format a single carriage-return progress line.

    Args:
        metrics (dict): Progress metrics from calculate_progress_metrics
        label (str): Leading label
        complete (bool): Whether processing is complete

    Returns:
        str: Formatted progress line
    """
    line = (f"\r{label}: [{metrics['bar']}] {metrics['percentage']:.1f}% "
            f"({metrics['items_processed']:,}/{metrics['total_items']:,})")
    if metrics['items_processed'] > 0:
        line += f" | {metrics['elapsed_min']:02d}:{metrics['elapsed_sec']:02d} elapsed"
        if complete:
            line += " | done\n"
        else:
            line += f" | {metrics['remaining_min']:02d}:{metrics['remaining_sec']:02d} remaining"
    return line


class LabCommand(BaseCommand):
    """
    Base class for lab commands.

    Subclasses implement handle() and may raise lab exceptions freely;
    execute() maps them onto the exit-code contract.
    """

    progress_label = 'Progress'

    def execute(self, *args, **options):
        try:
            return super().execute(*args, **options)
        except CommandError:
            raise
        except (ChernoffLabError, OSError) as exc:
            code = exit_code_for(exc)
            logger.error(f"{type(exc).__name__}: {exc}")
            raise CommandError(str(exc), returncode=code) from exc

    def add_progress_argument(self, parser):
        parser.add_argument(
            '--no-progress',
            action='store_true',
            help='Do not draw the progress bar on stderr'
        )

    def start_progress(self, options):
        self.show_progress = not options.get('no_progress') and options.get('verbosity', 1) >= 1
        self.progress_start_time = time.time()

    def report_progress(self, done, total):
        """Progress callback handed to ensemble code; draws on stderr only."""
        if not getattr(self, 'show_progress', False):
            return
        metrics = calculate_progress_metrics(done, total, self.progress_start_time)
        self.stderr.write(format_progress_line(metrics, self.progress_label, complete=done >= total), ending='')
        self.stderr.flush()

    def fail(self, message, code):
        """Raise CommandError with the given exit status."""
        raise CommandError(message, returncode=code)

    def add_config_arguments(self, parser):
        parser.add_argument(
            'config_file',
            type=str,
            help='JSON config file'
        )
        parser.add_argument(
            '--output-dir',
            type=str,
            help='Directory for the artifacts (default: settings OUTPUT_DIR/<command>)'
        )
        parser.add_argument(
            '--threads',
            type=int,
            help='Worker threads (default: settings THREADS)'
        )

    def load_config(self, path, form_class):
        """
        Read and validate a JSON config file.

        Returns:
            (cleaned_data, directory of the config file) for resolving relative body paths
        """
        path = Path(path)
        return form_class.validate(read_json(path), source=str(path)), path.parent

    def output_dir(self, options, name):
        if options.get('output_dir'):
            return Path(options['output_dir'])
        return Path(lab_settings()['OUTPUT_DIR']) / name

    def workers(self, options):
        threads = options.get('threads') or lab_settings()['THREADS']
        if threads < 1:
            self.fail(f"--threads must be >= 1, got {threads}", EXIT_USAGE)
        return threads

"""
Fit a Fourier profile to sampled radial data and write it as a body file.

Samples are read from CSV (columns theta,rho) or JSON (a list of
[theta, rho] pairs, or an object {"theta": [...], "rho": [...]}).
"""

import logging
from pathlib import Path

import pandas as pd

from bodies.exceptions import ProfileError
from bodies.fitting import fit_profile
from bodies.management.base import LabCommand, lab_settings
from bodies.profiles import validate_positivity
from bodies.serializers import body_to_dict, dumps, profile_to_dict, read_json, write_json

logger = logging.getLogger(__name__)


def read_samples(path):
    """
    Read (theta, rho) samples from a CSV or JSON file.

    Args:
        path: Path to a .csv or .json file

    Returns:
        List of (theta, rho) tuples
    """
    path = Path(path)
    if path.suffix.lower() == '.csv':
        try:
            frame = pd.read_csv(path)
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
            raise ProfileError(f'malformed sample CSV: {exc}', location=str(path)) from exc
        missing = {'theta', 'rho'} - set(frame.columns)
        if missing:
            raise ProfileError(f"sample CSV lacks column(s) {', '.join(sorted(missing))}", location=str(path))
        frame = frame[['theta', 'rho']].apply(pd.to_numeric, errors='coerce')
        if frame.isna().any().any():
            bad_row = int(frame.isna().any(axis=1).to_numpy().argmax())
            raise ProfileError('non-numeric sample value', location=f'{path}: row {bad_row + 1}')
        return list(frame.itertuples(index=False, name=None))

    data = read_json(path)
    if isinstance(data, dict):
        if set(data) != {'theta', 'rho'} or len(data['theta']) != len(data['rho']):
            raise ProfileError('expected {"theta": [...], "rho": [...]} of equal length', location=str(path))
        return list(zip(data['theta'], data['rho']))
    if isinstance(data, list):
        return [tuple(pair) for pair in data]
    raise ProfileError('expected a list of [theta, rho] pairs', location=str(path))


class Command(LabCommand):
    help = "Fit a truncated Fourier radial profile to sampled (theta, rho) data"

    def add_arguments(self, parser):
        parser.add_argument(
            'samples_file',
            type=str,
            help='CSV with columns theta,rho or JSON pairs'
        )
        parser.add_argument(
            '--n-max',
            type=int,
            help='Truncation order of the fitted profile (default: settings N_MAX)'
        )
        parser.add_argument(
            '--output',
            type=str,
            help='Write the body JSON here instead of stdout'
        )
        parser.add_argument(
            '--name',
            type=str,
            help='Optional name stored in the body file'
        )
        parser.add_argument(
            '--skip-positivity',
            action='store_true',
            help='Write the fitted profile even if its radial function is not positive'
        )

    def handle(self, *args, **options):
        n_max = options['n_max'] if options['n_max'] is not None else lab_settings()['N_MAX']
        samples = read_samples(options['samples_file'])
        profile = fit_profile(samples, n_max)
        logger.info(f"Fitted {len(samples)} samples with n_max={n_max}")

        if options['skip_positivity']:
            data = profile_to_dict(profile, options['name'])
        else:
            data = body_to_dict(validate_positivity(profile, name=options['name']))

        if options['output']:
            path = write_json(data, options['output'])
            self.stdout.write(self.style.SUCCESS(f"Wrote fitted body to {path}"))
        else:
            self.stdout.write(dumps(data), ending='')

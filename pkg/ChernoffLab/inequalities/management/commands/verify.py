"""
Verify one inequality on one body (or a pair of bodies) and print its SlackReport as JSON.

Usage:
    python manage.py verify disc.json --inequality T1 --k 2 --lambda 0.5
    python manage.py verify s.json --inequality T2 --k 3 --mu min
    python manage.py verify s.json t.json --inequality T3 --k 2 --alpha 3.14159 --save

Exit status: 0 holds or equality, 1 violation (or oracle mismatch),
2 bad arguments, 3 positivity rejection, 4 hypothesis violation.
"""

import logging

from bodies.management.base import EXIT_USAGE, EXIT_VIOLATION, LabCommand, lab_settings
from bodies.profiles import project_even_k_harmonics, validate_positivity
from bodies.quadrature import QuadratureSpec
from bodies.serializers import dumps, load_body
from inequalities.forms import resolve_lambda, resolve_mu
from inequalities.inequalities import get_inequality
from inequalities.models import VerificationRun
from inequalities.reports import InequalityId

logger = logging.getLogger(__name__)


def parse_parameter(value, token, name):
    """A command-line number, or the endpoint token kept as is."""
    if value is None or value == token:
        return value
    try:
        return float(value)
    except ValueError:
        raise ValueError(f'--{name} expects a number or "{token}", got {value!r}') from None


class Command(LabCommand):
    help = "Verify an inequality on star bodies and print the slack report as JSON"

    def add_arguments(self, parser):
        parser.add_argument(
            'body_files',
            nargs='+',
            type=str,
            help='Body JSON file, plus the partner body for T3 and mixed_iso'
        )
        parser.add_argument(
            '--inequality',
            required=True,
            choices=[i.value for i in InequalityId],
            help='Inequality id'
        )
        parser.add_argument(
            '--k',
            type=int,
            help='Order k >= 2'
        )
        parser.add_argument(
            '--lambda',
            dest='lam',
            type=str,
            help='lambda in [0, k/pi], or "max" for k/pi (T1, stab35)'
        )
        parser.add_argument(
            '--mu',
            type=str,
            help='mu <= -k, or "min" for -k (T2, stab37)'
        )
        parser.add_argument(
            '--alpha',
            type=float,
            help='Shift angle in (0, 2*pi) (T3)'
        )
        parser.add_argument(
            '--nodes',
            type=int,
            help='Quadrature nodes of the oracle (default: 4*N_max + 16)'
        )
        parser.add_argument(
            '--tol',
            type=float,
            help='Relative verdict tolerance (default: settings TOLERANCE)'
        )
        parser.add_argument(
            '--allow-out-of-range',
            action='store_true',
            help='Evaluate inadmissible parameters as an exploratory report'
        )
        parser.add_argument(
            '--project',
            action='store_true',
            help='Zero the harmonics at even multiples of k before T1 or stab35'
        )
        parser.add_argument(
            '--no-oracle',
            action='store_true',
            help='Skip the quadrature cross-check'
        )
        parser.add_argument(
            '--save',
            action='store_true',
            help='Store the report as a VerificationRun in the database'
        )

    def handle(self, *args, **options):
        inequality_id = InequalityId(options['inequality'])
        expected = 2 if inequality_id.two_body else 1
        if len(options['body_files']) != expected:
            self.fail(f"{inequality_id.value} takes {expected} body file(s), got {len(options['body_files'])}", EXIT_USAGE)

        try:
            lam = parse_parameter(options['lam'], 'max', 'lambda')
            mu = parse_parameter(options['mu'], 'min', 'mu')
        except ValueError as exc:
            self.fail(str(exc), EXIT_USAGE)
        k = options['k']
        if k is None and (lam == 'max' or mu == 'min'):
            self.fail('"max" and "min" need --k', EXIT_USAGE)
        if k is not None:
            lam, mu = resolve_lambda(lam, k), resolve_mu(mu, k)

        tol = options['tol'] if options['tol'] is not None else lab_settings()['TOLERANCE']
        inequality = get_inequality(
            inequality_id,
            k=k, lam=lam, mu=mu, alpha=options['alpha'],
            allow_out_of_range=options['allow_out_of_range'],
            rtol=tol,
            oracle=not options['no_oracle'],
            quadrature=QuadratureSpec(options['nodes']) if options['nodes'] else None,
            strict=True,
        )

        bodies = [load_body(path) for path in options['body_files']]
        if options['project'] and inequality_id.needs_hypothesis:
            projected = project_even_k_harmonics(bodies[0].profile, inequality.k)
            bodies[0] = validate_positivity(projected, name=bodies[0].name)

        report = inequality.evaluate(*bodies)
        self.stdout.write(dumps(report.to_dict()), ending='')

        if options['save']:
            run = VerificationRun.record('verify', [report], config={
                'bodies': options['body_files'],
                'inequality': inequality_id.value,
                **{key: value for key, value in inequality.parameters.items() if value is not None},
                'tol': tol,
                'project': options['project'],
            })
            logger.info(f"Saved verification run {run.pk}")

        if report.is_failure:
            self.fail(f"{inequality_id.value} violated: slack {report.slack!r}", EXIT_VIOLATION)

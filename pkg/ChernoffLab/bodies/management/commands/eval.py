"""
Evaluate geometric functionals of a body file by closed form and by quadrature.

Usage:
    python manage.py eval body.json --functional area,oriented_area
    python manage.py eval body.json --functional chord_mixed_integral --other t.json --k 3 --alpha 1.0 --json
"""

import json
import logging

from bodies.functionals import (
    CROSS_CHECK_RTOL,
    Lemma,
    Method,
    area,
    chord_mixed_integral,
    chord_self_integral,
    dual_l2_distance,
    dual_l2_distance_to_mean_disc,
    dual_mixed_area_disk,
    isoperimetric_deficit,
    lemma_identity_residual,
    oriented_area,
)
from bodies.management.base import EXIT_USAGE, LabCommand
from bodies.quadrature import QuadratureSpec, default_spec
from bodies.serializers import load_body

logger = logging.getLogger(__name__)

# name -> (printed symbol, needs other body, needs k, needs alpha)
FUNCTIONALS = {
    'area': ('A', False, False, False),
    'oriented_area': ('Ã', False, False, False),
    'dual_mixed_area_disk': ('Ã(S,B)', False, False, False),
    'dual_l2_distance': ('δ₂(S,T)', True, False, False),
    'dual_l2_distance_to_mean_disc': ('δ₂(S,a0/2·B)', False, False, False),
    'isoperimetric_deficit': ('πA − Ã(S,B)²', False, False, False),
    'chord_self_integral': ('∫ρ_kρ_k(·+π/k)', False, True, False),
    'chord_mixed_integral': ('∫ρ_k(S)ρ_k(T,·+α)', True, True, True),
    'lemma1': ('lemma1 residual', False, True, False),
    'lemma2': ('lemma2 residual', True, True, True),
}

DEFAULT_FUNCTIONALS = 'area,oriented_area,dual_mixed_area_disk,dual_l2_distance_to_mean_disc,isoperimetric_deficit'


class Command(LabCommand):
    help = "Evaluate geometric functionals of a star body (closed form, quadrature and residual)"

    def add_arguments(self, parser):
        parser.add_argument(
            'body_file',
            type=str,
            help='Body JSON file: {"a0": ..., "harmonics": [[a1, b1], ...]}'
        )
        parser.add_argument(
            '--functional',
            type=str,
            default=DEFAULT_FUNCTIONALS,
            help=f"Comma-separated functionals from: {', '.join(FUNCTIONALS)} (default: {DEFAULT_FUNCTIONALS})"
        )
        parser.add_argument(
            '--other',
            type=str,
            help='Second body file for two-body functionals'
        )
        parser.add_argument(
            '--k',
            type=int,
            help='Order of the k-order radial function'
        )
        parser.add_argument(
            '--alpha',
            type=float,
            help='Shift angle in radians'
        )
        parser.add_argument(
            '--nodes',
            type=int,
            help='Quadrature nodes (default: 4*N_max + 16)'
        )
        parser.add_argument(
            '--json',
            action='store_true',
            help='Print the values as JSON'
        )

    def handle(self, *args, **options):
        names = [name.strip() for name in options['functional'].split(',') if name.strip()]
        unknown = [name for name in names if name not in FUNCTIONALS]
        if unknown or not names:
            self.fail(f"Unknown functional(s): {', '.join(unknown) or '(none given)'}", EXIT_USAGE)

        for name in names:
            _, needs_other, needs_k, needs_alpha = FUNCTIONALS[name]
            if needs_other and not options['other']:
                self.fail(f"{name} needs --other", EXIT_USAGE)
            if needs_k and options['k'] is None:
                self.fail(f"{name} needs --k", EXIT_USAGE)
            if needs_alpha and options['alpha'] is None:
                self.fail(f"{name} needs --alpha", EXIT_USAGE)

        body = load_body(options['body_file'])
        other = load_body(options['other']) if options['other'] else None

        n_max = max(body.n_max, other.n_max if other else 0)
        spec = QuadratureSpec(options['nodes']) if options['nodes'] else default_spec(n_max)

        results = {}
        for name in names:
            results[name] = self._evaluate(name, body, other, options['k'], options['alpha'], spec)

        if options['json']:
            payload = {'body': options['body_file'], 'nodes': spec.nodes, 'functionals': results}
            if other is not None:
                payload['other'] = options['other']
            self.stdout.write(json.dumps(payload, indent=2, sort_keys=True))
            return

        for name, result in results.items():
            symbol = FUNCTIONALS[name][0]
            if 'residual' in result and 'closed_form' not in result:
                self.stdout.write(f"{symbol} = {result['residual']:.3e}")
                continue
            line = (f"{symbol} = {result['closed_form']!r} (closed) / {result['quadrature']!r} (quadrature), "
                    f"residual {result['residual']:.3e}")
            style = self.style.SUCCESS if result['agrees'] else self.style.WARNING
            self.stdout.write(style(line))

    def _evaluate(self, name, body, other, k, alpha, spec):
        if name in ('lemma1', 'lemma2'):
            residual = lemma_identity_residual(body, k, Lemma(name), alpha=alpha, g=other, quadrature=spec)
            return {'residual': residual}

        def run(method):
            if name == 'area':
                return area(body, method, quadrature=spec)
            if name == 'oriented_area':
                return oriented_area(body, method, quadrature=spec)
            if name == 'dual_mixed_area_disk':
                return dual_mixed_area_disk(body, method, quadrature=spec)
            if name == 'dual_l2_distance':
                return dual_l2_distance(body, other, method, quadrature=spec)
            if name == 'dual_l2_distance_to_mean_disc':
                return dual_l2_distance_to_mean_disc(body, method, quadrature=spec)
            if name == 'isoperimetric_deficit':
                return isoperimetric_deficit(body, method, quadrature=spec)
            if name == 'chord_self_integral':
                return chord_self_integral(body, k, method, quadrature=spec)
            return chord_mixed_integral(body, other, k, alpha, method, quadrature=spec)

        closed = run(Method.CLOSED_FORM).value
        quadrature = run(Method.QUADRATURE).value
        residual = abs(closed - quadrature)
        agrees = residual <= CROSS_CHECK_RTOL * max(1.0, abs(closed))
        if not agrees:
            logger.error(f"{name}: closed form {closed!r} and quadrature {quadrature!r} disagree")
        return {'closed_form': closed, 'quadrature': quadrature, 'residual': residual, 'agrees': agrees}

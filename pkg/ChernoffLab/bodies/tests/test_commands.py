import json
import math
from io import StringIO

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from bodies.serializers import load_body
from bodies.tests.helpers import TempDirMixin

PI = math.pi


class EvalCommandTests(TempDirMixin, SimpleTestCase):

    def run_eval(self, *args, **options):
        out = StringIO()
        call_command('eval', *args, stdout=out, stderr=StringIO(), **options)
        return out.getvalue()

    def test_disc_area(self):
        path = self.write_json('disc.json', {'a0': 2})
        output = self.run_eval(path, functional='area')
        self.assertIn('A = 3.141592653589793 (closed)', output)

    def test_json_values(self):
        path = self.write_json('s.json', {'a0': 2, 'harmonics': [[0, 0], [0, 0], [0.2, 0]]})
        payload = json.loads(self.run_eval(path, functional='area,oriented_area', json=True))
        values = payload['functionals']
        self.assertAlmostEqual(values['area']['closed_form'], 1.02 * PI, places=12)
        self.assertAlmostEqual(values['oriented_area']['quadrature'], 0.18 * PI, places=12)
        self.assertLess(values['area']['residual'], 1e-12)

    def test_two_body_functional(self):
        s = self.write_json('s.json', {'a0': 2, 'harmonics': [[0, 0], [0, 0], [0.2, 0]]})
        t = self.write_json('t.json', {'a0': 2, 'harmonics': [[0, 0], [0, 0], [0, 0.1]]})
        payload = json.loads(self.run_eval(s, functional='chord_mixed_integral,lemma2', other=t, k=3, alpha=0.4, json=True))
        expected = PI * 9 * (2.0 + 0.02 * math.sin(1.2))
        self.assertAlmostEqual(payload['functionals']['chord_mixed_integral']['closed_form'], expected, places=11)
        self.assertLess(payload['functionals']['lemma2']['residual'], 1e-10)

    def test_malformed_json_exit_2(self):
        path = self.write_text('bad.json', '{"a0": }')
        with self.assertRaises(CommandError) as cm:
            self.run_eval(path)
        self.assertEqual(cm.exception.returncode, 2)
        self.assertIn('bad.json:1:', str(cm.exception))

    def test_positivity_exit_3(self):
        path = self.write_json('neg.json', {'a0': 2, 'harmonics': [[1.5, 0]]})
        with self.assertRaises(CommandError) as cm:
            self.run_eval(path)
        self.assertEqual(cm.exception.returncode, 3)

    def test_missing_file_exit_5(self):
        with self.assertRaises(CommandError) as cm:
            self.run_eval(str(self.tmp / 'absent.json'))
        self.assertEqual(cm.exception.returncode, 5)

    def test_unknown_functional_exit_2(self):
        path = self.write_json('disc.json', {'a0': 2})
        with self.assertRaises(CommandError) as cm:
            self.run_eval(path, functional='volume')
        self.assertEqual(cm.exception.returncode, 2)

    def test_missing_order_exit_2(self):
        path = self.write_json('disc.json', {'a0': 2})
        with self.assertRaises(CommandError) as cm:
            self.run_eval(path, functional='chord_self_integral')
        self.assertEqual(cm.exception.returncode, 2)


class FitCommandTests(TempDirMixin, SimpleTestCase):

    def test_fit_csv_to_body_file(self):
        theta = 2 * PI * np.arange(32) / 32
        rho = 1 + 0.2 * np.cos(3 * theta)
        lines = ['theta,rho'] + [f'{t!r},{r!r}' for t, r in zip(theta, rho)]
        samples = self.write_text('samples.csv', '\n'.join(lines) + '\n')
        output = self.tmp / 'fitted.json'

        out = StringIO()
        call_command('fit', samples, n_max=4, output=str(output), stdout=out)

        star = load_body(output)
        self.assertEqual(star.n_max, 4)
        self.assertAlmostEqual(star.a0, 2.0, delta=1e-12)
        self.assertAlmostEqual(star.profile.coefficient(3)[0], 0.2, delta=1e-12)
        self.assertIn('Wrote fitted body', out.getvalue())

    def test_fit_json_pairs_to_stdout(self):
        pairs = [[2 * PI * j / 9, 1.0] for j in range(9)]
        samples = self.write_json('samples.json', pairs)
        out = StringIO()
        call_command('fit', samples, n_max=2, stdout=out)
        data = json.loads(out.getvalue())
        self.assertAlmostEqual(data['a0'], 2.0, delta=1e-12)
        self.assertEqual(len(data['harmonics']), 2)

    def test_underdetermined_exit_2(self):
        samples = self.write_json('few.json', {'theta': [0, 1, 2, 3, 4], 'rho': [1, 1, 1, 1, 1]})
        with self.assertRaises(CommandError) as cm:
            call_command('fit', samples, n_max=8, stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)

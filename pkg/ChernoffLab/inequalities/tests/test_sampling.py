import threading

import numpy as np
from django.test import SimpleTestCase

from bodies.exceptions import ParameterRangeError
from bodies.profiles import FourierProfile, min_radial_on_grid
from inequalities.ensembles.sampling import (
    EnsembleSpec,
    map_in_order,
    sample_ensemble,
    sample_star_body,
    shrink_to_floor,
)


class SampleStarBodyTests(SimpleTestCase):

    def test_zero_sigma_gives_disc(self):
        spec = EnsembleSpec(count=3, seed=5, n_max=6, sigma=0.0)
        for index in range(3):
            S = sample_star_body(spec, index)
            self.assertEqual(S.profile.support(), [])
            self.assertGreaterEqual(S.a0, 1.0)
            self.assertLessEqual(S.a0, 3.0)

    def test_deterministic_in_seed_and_index(self):
        spec = EnsembleSpec(count=10, seed=42, n_max=16)
        first = sample_star_body(spec, 7)
        second = sample_star_body(spec, 7)
        np.testing.assert_array_equal(first.profile.as_vector(), second.profile.as_vector())
        self.assertEqual(first.name, 'sample-42-7')

    def test_independent_of_count(self):
        small = sample_star_body(EnsembleSpec(count=3, seed=1, n_max=8), 2)
        large = sample_star_body(EnsembleSpec(count=300, seed=1, n_max=8), 2)
        np.testing.assert_array_equal(small.profile.as_vector(), large.profile.as_vector())

    def test_seeds_differ(self):
        a = sample_star_body(EnsembleSpec(count=1, seed=1, n_max=8), 0)
        b = sample_star_body(EnsembleSpec(count=1, seed=2, n_max=8), 0)
        self.assertFalse(np.array_equal(a.profile.as_vector(), b.profile.as_vector()))

    def test_hypothesis_projection(self):
        spec = EnsembleSpec(count=5, seed=0, n_max=20, hypothesis_orders=(2,))
        for index in range(5):
            profile = sample_star_body(spec, index).profile
            for n in (4, 8, 12, 16, 20):
                self.assertEqual(profile.coefficient(n), (0.0, 0.0))
            self.assertNotEqual(profile.coefficient(2), (0.0, 0.0))

    def test_positivity_floor(self):
        spec = EnsembleSpec(count=10, seed=9, n_max=12, sigma=3.0, decay_exponent=0.0, positivity_floor=0.2)
        for index in range(10):
            S = sample_star_body(spec, index)
            _, value = min_radial_on_grid(S.profile)
            self.assertGreaterEqual(value, 0.2 * 0.5 * S.a0 * (1 - 1e-9))

    def test_index_out_of_range(self):
        spec = EnsembleSpec(count=2)
        with self.assertRaises(ParameterRangeError):
            sample_star_body(spec, 2)
        with self.assertRaises(ParameterRangeError):
            sample_star_body(spec, -1)


class EnsembleSpecTests(SimpleTestCase):

    def test_invalid_specs(self):
        for kwargs in (
            {'count': 0},
            {'count': 1, 'seed': -1},
            {'count': 1, 'a0_range': (0.0, 1.0)},
            {'count': 1, 'a0_range': (2.0, 1.0)},
            {'count': 1, 'sigma': -0.1},
            {'count': 1, 'positivity_floor': 1.0},
            {'count': 1, 'hypothesis_orders': (1,)},
        ):
            with self.subTest(kwargs=kwargs):
                with self.assertRaises(ParameterRangeError):
                    EnsembleSpec(**kwargs)

    def test_hypothesis_orders_normalised(self):
        spec = EnsembleSpec(count=1, hypothesis_orders=(3, 2, 3))
        self.assertEqual(spec.hypothesis_orders, (2, 3))


class ShrinkTests(SimpleTestCase):

    def test_positive_profile_untouched(self):
        profile = FourierProfile(2.0, ((0.1, 0.0),))
        self.assertIs(shrink_to_floor(profile, 0.05), profile)

    def test_shrinks_to_floor(self):
        profile = FourierProfile(2.0, ((1.5, 0.0), (0.0, 0.7)))
        shrunk = shrink_to_floor(profile, 0.1)
        _, value = min_radial_on_grid(shrunk)
        self.assertGreaterEqual(value, 0.1 * (1 - 1e-9))
        self.assertEqual(shrunk.a0, 2.0)
        a1, _ = shrunk.coefficient(1)
        _, b2 = shrunk.coefficient(2)
        self.assertAlmostEqual(a1 / 1.5, b2 / 0.7, places=12)


class MapInOrderTests(SimpleTestCase):

    def test_order_preserved_across_workers(self):
        items = list(range(50))
        self.assertEqual(map_in_order(lambda x: x * x, items, workers=8), [x * x for x in items])

    def test_progress_reported(self):
        calls = []
        lock = threading.Lock()

        def progress(done, total):
            with lock:
                calls.append((done, total))

        map_in_order(str, [1, 2, 3], workers=2, progress=progress)
        self.assertEqual(calls[-1], (3, 3))
        self.assertEqual(len(calls), 3)

    def test_ensemble_independent_of_workers(self):
        spec = EnsembleSpec(count=12, seed=4, n_max=10)
        serial = sample_ensemble(spec, workers=1)
        threaded = sample_ensemble(spec, workers=4)
        for a, b in zip(serial, threaded):
            np.testing.assert_array_equal(a.profile.as_vector(), b.profile.as_vector())

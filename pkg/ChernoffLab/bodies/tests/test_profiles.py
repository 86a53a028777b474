import math

import numpy as np
from django.test import SimpleTestCase

from bodies.exceptions import ParameterRangeError, PositivityError, ProfileError
from bodies.profiles import (
    TWO_PI,
    Angle,
    EqualityFamily,
    FamilyKind,
    FourierProfile,
    PositivityCertificate,
    canonical_angle,
    disc,
    eval_radial,
    eval_radial_derivative,
    hypothesis_violations,
    k_order_radial,
    k_order_radial_closed_form,
    make_equality_family,
    min_radial_on_grid,
    project_even_k_harmonics,
    validate_positivity,
)
from bodies.tests.helpers import random_profile


class AngleTests(SimpleTestCase):

    def test_canonical_range(self):
        self.assertEqual(canonical_angle(0.0), 0.0)
        self.assertAlmostEqual(canonical_angle(-0.5), TWO_PI - 0.5)
        self.assertAlmostEqual(canonical_angle(7.0), 7.0 - TWO_PI)
        self.assertEqual(canonical_angle(TWO_PI), 0.0)
        self.assertLess(canonical_angle(-1e-300), TWO_PI)

    def test_angle_is_float(self):
        alpha = Angle(-math.pi / 2)
        self.assertIsInstance(alpha, float)
        self.assertAlmostEqual(alpha, 1.5 * math.pi)


class FourierProfileTests(SimpleTestCase):

    def test_rejects_non_finite(self):
        with self.assertRaises(ProfileError):
            FourierProfile(float('nan'))
        with self.assertRaises(ProfileError):
            FourierProfile(2.0, ((0.1, float('inf')),))

    def test_vector_layout(self):
        profile = FourierProfile(2.0, ((0.3, 0.1), (0.0, -0.2)))
        np.testing.assert_array_equal(profile.as_vector(), [2.0, 0.3, 0.1, 0.0, -0.2])
        self.assertEqual(FourierProfile.from_vector(profile.as_vector()), profile)

    def test_coefficient_arrays_are_read_only(self):
        profile = FourierProfile(2.0, ((0.3, 0.1),))
        with self.assertRaises(ValueError):
            profile.cos_coefficients[0] = 1.0

    def test_support_and_energies(self):
        profile = FourierProfile.from_coefficients(2.0, {3: (0.2, 0.0), 5: (0.0, 0.1)})
        self.assertEqual(profile.n_max, 5)
        self.assertEqual(profile.support(), [3, 5])
        np.testing.assert_allclose(profile.harmonic_energies(), [0, 0, 0.04, 0, 0.01])

    def test_with_coefficient_extends_order(self):
        profile = FourierProfile(2.0).with_coefficient(4, 0.1)
        self.assertEqual(profile.n_max, 4)
        self.assertEqual(profile.coefficient(4), (0.1, 0.0))
        self.assertEqual(profile.coefficient(9), (0.0, 0.0))


class EvalRadialTests(SimpleTestCase):

    def test_constant_profile(self):
        self.assertEqual(eval_radial(FourierProfile(2.0), 1.234), 1.0)

    def test_first_harmonic_at_zero(self):
        self.assertAlmostEqual(eval_radial(FourierProfile(2.0, ((0.3, 0.0),)), 0.0), 1.3, places=15)

    def test_third_harmonic_node(self):
        profile = FourierProfile.from_coefficients(2.0, {3: (0.2, 0.0)})
        self.assertAlmostEqual(eval_radial(profile, math.pi / 6), 1.0, places=15)

    def test_vectorized_shape(self):
        profile = FourierProfile(2.0, ((0.3, 0.1),))
        values = eval_radial(profile, np.zeros((3, 4)))
        self.assertEqual(values.shape, (3, 4))

    def test_periodicity(self):
        rng = np.random.default_rng(7)
        profile = random_profile(rng, 16)
        theta = rng.uniform(0, TWO_PI, 50)
        np.testing.assert_allclose(eval_radial(profile, theta + TWO_PI), eval_radial(profile, theta), atol=1e-12)
        np.testing.assert_allclose(eval_radial(profile, theta - TWO_PI), eval_radial(profile, theta), atol=1e-12)


class DerivativeTests(SimpleTestCase):

    def test_disc_derivative_is_zero(self):
        self.assertEqual(eval_radial_derivative(FourierProfile(2.0), 0.7), 0.0)

    def test_sine_derivative(self):
        self.assertAlmostEqual(eval_radial_derivative(FourierProfile(2.0, ((0.0, 0.5),)), 0.0), 0.5, places=15)

    def test_third_harmonic_derivative(self):
        profile = FourierProfile.from_coefficients(2.0, {3: (0.2, 0.0)})
        self.assertAlmostEqual(eval_radial_derivative(profile, 0.0), 0.0, places=15)
        h = 1e-5
        finite = (eval_radial(profile, h) - eval_radial(profile, -h)) / (2 * h)
        self.assertAlmostEqual(eval_radial_derivative(profile, 0.0), finite, delta=1e-8)

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(11)
        h = 1e-5
        theta = rng.uniform(0, TWO_PI, 40)
        # bounded coefficients at low order, decaying ones at high order
        profiles = [
            FourierProfile.from_arrays(2.0, rng.uniform(-1, 1, 8), rng.uniform(-1, 1, 8)),
            random_profile(rng, 32, scale=1.0),
        ]
        for profile in profiles:
            finite = (eval_radial(profile, theta + h) - eval_radial(profile, theta - h)) / (2 * h)
            np.testing.assert_allclose(eval_radial_derivative(profile, theta), finite, atol=1e-7)


class KOrderRadialTests(SimpleTestCase):

    def test_disc(self):
        self.assertAlmostEqual(k_order_radial(FourierProfile(2.0), 4, 0.3), 4.0, places=14)

    def test_first_harmonic_cancels(self):
        profile = FourierProfile(2.0, ((0.3, 0.0),))
        for theta in (0.0, 0.4, 2.0):
            self.assertAlmostEqual(k_order_radial(profile, 2, theta), 2.0, places=14)

    def test_harmonic_at_k_doubles(self):
        profile = FourierProfile.from_coefficients(2.0, {2: (0.2, 0.0)})
        self.assertAlmostEqual(k_order_radial(profile, 2, 0.0), 2.4, places=14)
        self.assertAlmostEqual(k_order_radial_closed_form(profile, 2, 0.0), 2.4, places=14)

    def test_rejects_small_order(self):
        with self.assertRaises(ParameterRangeError):
            k_order_radial(FourierProfile(2.0), 1, 0.0)
        with self.assertRaises(ParameterRangeError):
            k_order_radial_closed_form(FourierProfile(2.0), 0, 0.0)

    def test_summation_matches_harmonic_filter(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            profile = random_profile(rng, int(rng.integers(1, 33)))
            theta = rng.uniform(0, TWO_PI, 100)
            for k in range(2, 9):
                np.testing.assert_allclose(
                    k_order_radial(profile, k, theta),
                    k_order_radial_closed_form(profile, k, theta),
                    atol=1e-10,
                )

    def test_period_two_pi_over_k(self):
        rng = np.random.default_rng(5)
        profile = random_profile(rng, 24)
        theta = rng.uniform(0, TWO_PI, 50)
        for k in range(2, 9):
            np.testing.assert_allclose(
                k_order_radial(profile, k, theta + TWO_PI / k),
                k_order_radial(profile, k, theta),
                atol=1e-12,
            )


class PositivityTests(SimpleTestCase):

    def test_sufficient_condition(self):
        star = validate_positivity(FourierProfile(2.0, ((0.3, 0.0),)))
        self.assertEqual(star.positivity_certificate, PositivityCertificate.SUFFICIENT_CONDITION)
        self.assertAlmostEqual(star.min_radial, 0.7, places=15)

    def test_rejects_negative_radius(self):
        with self.assertRaises(PositivityError) as cm:
            validate_positivity(FourierProfile(2.0, ((1.5, 0.0),)))
        self.assertAlmostEqual(cm.exception.argmin, math.pi, places=12)
        self.assertAlmostEqual(cm.exception.value, -0.5, places=12)

    def test_grid_scan_rejects(self):
        profile = FourierProfile(2.0, ((0.6, 0.0), (0.0, 0.6)))
        with self.assertRaises(PositivityError) as cm:
            validate_positivity(profile)
        self.assertLess(cm.exception.value, 0.0)
        self.assertTrue(2.3 < cm.exception.argmin < 2.7)

    def test_grid_scan_accepts(self):
        # 1 + 0.6 cos t + 0.5 cos 2t has minimum 0.41 at cos t = -0.3
        star = validate_positivity(FourierProfile(2.0, ((0.6, 0.0), (0.5, 0.0))))
        self.assertEqual(star.positivity_certificate, PositivityCertificate.GRID_VERIFIED)
        self.assertAlmostEqual(star.min_radial, 0.41, delta=1e-3)

    def test_grid_too_coarse(self):
        with self.assertRaises(ParameterRangeError):
            validate_positivity(FourierProfile(2.0, ((0.3, 0.0),)), grid_nodes=512)

    def test_min_radial_on_grid(self):
        argmin, value = min_radial_on_grid(FourierProfile(2.0, ((0.3, 0.0),)), 1024)
        self.assertAlmostEqual(argmin, math.pi, places=12)
        self.assertAlmostEqual(value, 0.7, places=12)


class ProjectionTests(SimpleTestCase):

    def test_zeroes_multiples_of_2k(self):
        profile = FourierProfile.from_coefficients(2.0, {4: (0.1, 0.0)})
        projected = project_even_k_harmonics(profile, 2)
        self.assertEqual(projected.coefficient(4), (0.0, 0.0))

    def test_keeps_odd_multiples(self):
        profile = FourierProfile.from_coefficients(2.0, {2: (0.2, 0.0)})
        self.assertEqual(project_even_k_harmonics(profile, 2), profile)

    def test_order_three(self):
        profile = FourierProfile.from_coefficients(2.0, {3: (0.2, 0.0), 6: (0.1, 0.0), 12: (0.05, 0.0)})
        projected = project_even_k_harmonics(profile, 3)
        self.assertEqual(projected.support(), [3])
        self.assertEqual(hypothesis_violations(profile, 3), [6, 12])
        self.assertEqual(hypothesis_violations(projected, 3), [])

    def test_idempotent_and_bit_identical_elsewhere(self):
        rng = np.random.default_rng(2)
        profile = random_profile(rng, 30)
        once = project_even_k_harmonics(profile, 3)
        self.assertEqual(project_even_k_harmonics(once, 3), once)
        for n in range(1, 31):
            if n % 6:
                self.assertEqual(once.coefficient(n), profile.coefficient(n))


class EqualityFamilyTests(SimpleTestCase):

    def test_labels(self):
        self.assertEqual(EqualityFamily.parse('k_multiples(3)'), EqualityFamily(FamilyKind.K_MULTIPLES, 3))
        self.assertEqual(EqualityFamily.parse('disc').label, 'disc')
        self.assertEqual(str(EqualityFamily(FamilyKind.EVEN_K_MULTIPLES, 2)), 'even_k_multiples(2)')
        with self.assertRaises(ProfileError):
            EqualityFamily.parse('square')
        with self.assertRaises(ParameterRangeError):
            EqualityFamily(FamilyKind.K_MULTIPLES)

    def test_allowed_indices(self):
        self.assertFalse(EqualityFamily(FamilyKind.DISC).allows(1))
        self.assertTrue(EqualityFamily(FamilyKind.FIRST_HARMONIC).allows(1))
        self.assertFalse(EqualityFamily(FamilyKind.FIRST_HARMONIC).allows(2))
        self.assertTrue(EqualityFamily(FamilyKind.K_MULTIPLES, 3).allows(6))
        self.assertFalse(EqualityFamily(FamilyKind.EVEN_K_MULTIPLES, 3).allows(3))
        self.assertTrue(EqualityFamily(FamilyKind.NON_K_MULTIPLES, 3).allows(4))
        self.assertFalse(EqualityFamily(FamilyKind.NON_K_MULTIPLES, 3).allows(9))

    def test_disc(self):
        star = make_equality_family('disc', 2.0)
        self.assertEqual(star(0.3), 1.0)
        self.assertEqual(disc(1.0), star)

    def test_first_harmonic(self):
        star = make_equality_family(FamilyKind.FIRST_HARMONIC, 2.0, {1: (0.4, 0.0)})
        self.assertAlmostEqual(star(0.0), 1.4, places=15)

    def test_k_multiples(self):
        star = make_equality_family('k_multiples(3)', 2.0, {3: (0.2, 0.0)})
        self.assertAlmostEqual(star(0.0), 1.2, places=15)
        self.assertEqual(star.name, 'k_multiples(3)')

    def test_rejects_forbidden_index(self):
        with self.assertRaises(ProfileError):
            make_equality_family('k_multiples(3)', 2.0, {2: (0.1, 0.0)})

    def test_rejects_non_positive(self):
        with self.assertRaises(PositivityError):
            make_equality_family(FamilyKind.FIRST_HARMONIC, 2.0, {1: (1.5, 0.0)})

    def test_forbidden_mass(self):
        family = EqualityFamily(FamilyKind.FIRST_HARMONIC)
        profile = FourierProfile(2.0, ((0.4, 0.0), (0.0, 0.03), (0.04, 0.0)))
        self.assertAlmostEqual(family.forbidden_mass(profile), 0.05, places=15)
        self.assertFalse(family.contains(profile))

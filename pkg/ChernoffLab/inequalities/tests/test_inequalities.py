import math

from django.test import SimpleTestCase

from bodies.exceptions import HypothesisError, OracleMismatchError, ParameterRangeError
from bodies.profiles import disc
from bodies.quadrature import QuadratureSpec
from bodies.tests.helpers import PI, body
from inequalities.ensembles.sampling import EnsembleSpec, sample_ensemble
from inequalities.inequalities import (
    INEQUALITIES,
    ChernoffUpperInequality,
    deficit_phi,
    deficit_psi,
    get_inequality,
    slack_corollary31,
    slack_dual_isoperimetric,
    slack_mixed_isoperimetric,
    slack_theorem1,
    slack_theorem2,
    slack_theorem3,
    stability_margin_35,
    stability_margin_37,
)
from inequalities.reports import InequalityId, Verdict


class ChernoffUpperTests(SimpleTestCase):

    def test_disc_is_equality(self):
        report = slack_theorem1(disc(1.0), 2, 0.5)
        self.assertEqual(report.verdict, Verdict.EQUALITY)
        self.assertAlmostEqual(report.lhs, 2 * PI, places=12)
        self.assertEqual(report.equality_family_match, 'disc')
        self.assertEqual(report.stated_family, 'disc')

    def test_odd_multiple_slack(self):
        report = slack_theorem1(body(a2=0.2), 2, 0.5)
        self.assertEqual(report.verdict, Verdict.HOLDS)
        self.assertAlmostEqual(report.slack, 0.08 * PI - 0.01 * PI ** 2, places=12)
        self.assertIsNone(report.equality_family_match)

    def test_upper_lambda_first_harmonic(self):
        report = slack_theorem1(body(a1=0.3), 2, 2 / PI)
        self.assertEqual(report.verdict, Verdict.EQUALITY)
        self.assertEqual(report.equality_family_match, 'first_harmonic')
        self.assertEqual(report.stated_family, 'first_harmonic')

    def test_upper_lambda_non_multiples(self):
        report = slack_theorem1(body(a1=0.1, a3=0.2), 2, 2 / PI)
        self.assertEqual(report.verdict, Verdict.EQUALITY)
        self.assertEqual(report.equality_family_match, 'non_k_multiples(2)')

    def test_hypothesis_violation(self):
        with self.assertRaises(HypothesisError) as cm:
            slack_theorem1(body(a4=0.1), 2, 0.5)
        self.assertEqual(cm.exception.indices, [4])
        self.assertIn('--project', str(cm.exception))

    def test_lambda_out_of_range(self):
        with self.assertRaises(ParameterRangeError):
            slack_theorem1(disc(), 2, 1.0)
        with self.assertRaises(ParameterRangeError):
            slack_theorem1(disc(), 2, -0.1)

    def test_lambda_endpoint_tolerance(self):
        report = slack_theorem1(disc(), 2, (2 / PI) * (1 + 1e-13))
        self.assertFalse(report.exploratory)

    def test_out_of_range_exploratory(self):
        report = slack_theorem1(body(a1=0.3), 2, 1.0, allow_out_of_range=True)
        self.assertTrue(report.exploratory)
        self.assertTrue(report.expected_violation)
        self.assertEqual(report.verdict, Verdict.VIOLATED)
        self.assertFalse(report.is_failure)
        self.assertAlmostEqual(report.slack, 0.5 * PI * 0.09 * (2 - PI), places=12)

    def test_order_below_two(self):
        with self.assertRaises(ParameterRangeError):
            slack_theorem1(disc(), 1, 0.1)

    def test_oracle_residual(self):
        report = slack_theorem1(body(a1=0.1, a2=0.05, b3=0.02), 2, 0.3)
        self.assertLess(report.oracle_residual, 1e-10)
        self.assertTrue(report.oracle_agrees())

    def test_no_oracle(self):
        report = slack_theorem1(body(a2=0.2), 2, 0.5, oracle=False)
        self.assertIsNone(report.oracle_residual)

    def test_strict_oracle_with_coarse_nodes(self):
        inequality = ChernoffUpperInequality(k=2, lam=0.5, quadrature=QuadratureSpec(5), strict=True)
        with self.assertRaises(OracleMismatchError):
            inequality.evaluate(body(a1=0.2, a2=0.1, a3=0.1, b5=0.05))


class ChernoffLowerTests(SimpleTestCase):

    def test_worked_example(self):
        report = slack_theorem2(body(a3=0.2), 3, -3)
        self.assertEqual(report.verdict, Verdict.HOLDS)
        self.assertAlmostEqual(report.lhs, 2.94 * PI, places=12)
        self.assertAlmostEqual(report.rhs, 2.52 * PI, places=12)
        self.assertAlmostEqual(report.slack, 0.42 * PI, places=12)

    def test_first_harmonic_at_lower_mu(self):
        report = slack_theorem2(body(a1=0.3), 2, -2)
        self.assertEqual(report.verdict, Verdict.EQUALITY)
        self.assertEqual(report.equality_family_match, 'first_harmonic')

    def test_first_harmonic_below_lower_mu(self):
        report = slack_theorem2(body(a1=0.3), 2, -4)
        self.assertEqual(report.verdict, Verdict.HOLDS)
        self.assertAlmostEqual(report.slack, 0.09 * PI, places=12)

    def test_mu_out_of_range(self):
        with self.assertRaises(ParameterRangeError):
            slack_theorem2(disc(), 2, -1.0)

    def test_missing_mu(self):
        with self.assertRaises(ParameterRangeError):
            get_inequality('T2', k=2)


class AreaAndStabilityTests(SimpleTestCase):

    def test_even_multiples_equality(self):
        report = slack_corollary31(body(a4=0.1), 2)
        self.assertEqual(report.verdict, Verdict.EQUALITY)
        self.assertEqual(report.equality_family_match, 'even_k_multiples(2)')

    def test_area_slack(self):
        report = slack_corollary31(body(a1=0.1), 2)
        self.assertAlmostEqual(report.slack, 0.005 * PI, places=12)

    def test_upper_stability_margin(self):
        report = stability_margin_35(body(a2=0.2), 2, 0.5)
        self.assertAlmostEqual(report.slack, 0.04 * PI, places=12)

    def test_upper_stability_margin_independent_of_lambda(self):
        slacks = [stability_margin_35(body(a2=0.2), 2, lam).slack for lam in (0.0, 0.3, 2 / PI)]
        for slack in slacks:
            self.assertAlmostEqual(slack, 0.04 * PI, places=12)

    def test_upper_stability_equality_off_multiples(self):
        report = stability_margin_35(body(a1=0.2, a3=0.1), 2, 0.2)
        self.assertEqual(report.verdict, Verdict.EQUALITY)
        self.assertEqual(report.equality_family_match, 'non_k_multiples(2)')
        self.assertEqual(report.stated_family, 'first_harmonic')

    def test_lower_stability_margin(self):
        report = stability_margin_37(body(a3=0.2), 3, -3)
        self.assertAlmostEqual(report.lhs, 0.42 * PI, places=12)
        self.assertAlmostEqual(report.rhs, -0.06 * PI, places=12)
        self.assertAlmostEqual(report.slack, 0.48 * PI, places=12)

    def test_lower_stability_disc(self):
        report = stability_margin_37(disc(2.0), 2, -3)
        self.assertEqual(report.verdict, Verdict.EQUALITY)
        self.assertEqual(report.equality_family_match, 'disc')

    def test_dual_isoperimetric(self):
        self.assertEqual(slack_dual_isoperimetric(disc(1.5)).verdict, Verdict.EQUALITY)
        report = slack_dual_isoperimetric(body(a3=0.2))
        self.assertAlmostEqual(report.slack, 0.02 * PI ** 2, places=12)
        self.assertIsNone(report.k)


class TwoBodyTests(SimpleTestCase):

    def test_aligned_k_multiples_equality(self):
        S = body(a2=0.2)
        report = slack_theorem3(S, S, 2, PI)
        self.assertEqual(report.verdict, Verdict.EQUALITY)
        self.assertAlmostEqual(report.lhs, 1.02 * PI, places=12)
        self.assertEqual(report.equality_family_match, 'k_multiples(2)')

    def test_quarter_turn(self):
        S = body(a2=0.2)
        report = slack_theorem3(S, S, 2, PI / 2)
        self.assertAlmostEqual(report.slack, 0.04 * PI, places=12)
        # advisory: the bodies are in the family although equality fails
        self.assertEqual(report.equality_family_match, 'k_multiples(2)')

    def test_shifted_partner(self):
        report = slack_theorem3(body(a3=0.2), body(b3=0.1), 3, 0.4)
        expected = PI * (math.sqrt(1.02 * 1.005) - 1 - 0.01 * math.sin(1.2))
        self.assertAlmostEqual(report.slack, expected, places=12)
        self.assertLess(report.oracle_residual, 1e-10)

    def test_alpha_canonicalised(self):
        report = slack_theorem3(disc(), disc(), 2, -PI / 2)
        self.assertAlmostEqual(report.alpha, 1.5 * PI, places=14)

    def test_alpha_multiple_of_two_pi(self):
        with self.assertRaises(ParameterRangeError):
            slack_theorem3(disc(), disc(), 2, 2 * PI)

    def test_missing_partner(self):
        with self.assertRaises(ParameterRangeError):
            get_inequality('T3', k=2, alpha=1.0).evaluate(disc())

    def test_mixed_isoperimetric_worked_example(self):
        report = slack_mixed_isoperimetric(body(a3=0.2), disc())
        self.assertAlmostEqual(report.slack, PI ** 2 * (math.sqrt(1.02) - 1), places=12)
        self.assertAlmostEqual(report.slack, 0.098207, places=6)

    def test_mixed_isoperimetric_discs(self):
        report = slack_mixed_isoperimetric(disc(1.0), disc(2.0))
        self.assertEqual(report.verdict, Verdict.EQUALITY)
        self.assertEqual(report.equality_family_match, 'disc')


class DeficitTests(SimpleTestCase):

    def test_phi_non_decreasing(self):
        S = body(a1=0.1, a2=0.15, b3=0.05)
        values = [deficit_phi(S, 2, f * 2 / PI) for f in (0.0, 0.25, 0.5, 0.75, 1.0)]
        for before, after in zip(values, values[1:]):
            self.assertGreaterEqual(after, before - 1e-12)

    def test_psi_non_increasing(self):
        S = body(a1=0.1, a2=0.15, b3=0.05)
        values = [deficit_psi(S, 2, mu) for mu in (-8.0, -6.0, -4.0, -2.0)]
        for before, after in zip(values, values[1:]):
            self.assertLessEqual(after, before + 1e-12)


class EnsembleSignTests(SimpleTestCase):
    """Every inequality holds on a seeded ensemble over admissible parameters."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        spec = EnsembleSpec(count=25, seed=3, n_max=12, hypothesis_orders=(2, 3))
        cls.bodies = sample_ensemble(spec)

    def assertHolds(self, report):
        self.assertTrue(report.holds, f"{report.inequality_id.value} violated: {report}")
        self.assertTrue(report.oracle_agrees(), f"{report.inequality_id.value} oracle residual {report.oracle_residual}")

    def test_single_body(self):
        for S in self.bodies:
            for k in (2, 3):
                for lam in (0.0, 0.5 * k / PI, k / PI):
                    self.assertHolds(slack_theorem1(S, k, lam))
                    self.assertHolds(stability_margin_35(S, k, lam))
                for mu in (-k, -2.0 * k):
                    self.assertHolds(slack_theorem2(S, k, mu))
                    self.assertHolds(stability_margin_37(S, k, mu))
                self.assertHolds(slack_corollary31(S, k))
            self.assertHolds(slack_dual_isoperimetric(S))

    def test_two_body(self):
        for S, T in zip(self.bodies, self.bodies[1:]):
            for alpha in (0.3, PI, 5.0):
                self.assertHolds(slack_theorem3(S, T, 3, alpha))
            self.assertHolds(slack_mixed_isoperimetric(S, T))


class RegistryTests(SimpleTestCase):

    def test_every_id_registered(self):
        self.assertEqual(set(INEQUALITIES), set(InequalityId))

    def test_unused_parameters_dropped(self):
        inequality = get_inequality('C31', k=2, lam=0.3, mu=-5.0, alpha=1.0)
        self.assertEqual(inequality.parameters, {'k': 2, 'lam': None, 'mu': None, 'alpha': None})

    def test_unknown_id(self):
        with self.assertRaises(ValueError):
            get_inequality('T9', k=2)

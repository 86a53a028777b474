import math

from django.test import SimpleTestCase

from bodies.exceptions import ClassificationError
from bodies.profiles import EqualityFamily, FamilyKind, disc
from bodies.tests.helpers import body
from inequalities.classification import (
    classify_equality,
    enforced_family,
    family_chain,
    lambda_at_upper,
    most_specific_family,
    mu_at_lower,
    stated_family,
    support_tolerance,
)
from inequalities.inequalities import slack_theorem1, slack_theorem2
from inequalities.reports import InequalityId, SlackReport, Verdict


def equality_report(inequality_id, k=None, lam=None, mu=None, tolerance=1e-9):
    return SlackReport(inequality_id, 1.0, 1.0, 0.0, Verdict.EQUALITY, tolerance, k=k, lam=lam, mu=mu)


class FamilyTests(SimpleTestCase):

    def test_enforced_families(self):
        cases = [
            ((InequalityId.T1, 2, 0.3, None), 'disc'),
            ((InequalityId.T1, 2, 2 / math.pi, None), 'non_k_multiples(2)'),
            ((InequalityId.T2, 3, None, -6.0), 'disc'),
            ((InequalityId.T2, 3, None, -3.0), 'first_harmonic'),
            ((InequalityId.C31, 4, None, None), 'even_k_multiples(4)'),
            ((InequalityId.STAB35, 2, 0.1, None), 'non_k_multiples(2)'),
            ((InequalityId.STAB37, 2, None, -2.0), 'disc'),
            ((InequalityId.T3, 5, None, None), 'k_multiples(5)'),
            ((InequalityId.DUAL_ISO, None, None, None), 'disc'),
            ((InequalityId.MIXED_ISO, None, None, None), 'disc'),
        ]
        for args, label in cases:
            with self.subTest(args=args):
                self.assertEqual(enforced_family(*args).label, label)

    def test_stated_families(self):
        self.assertEqual(stated_family(InequalityId.T1, 2, 2 / math.pi).label, 'first_harmonic')
        self.assertEqual(stated_family(InequalityId.STAB35, 2, 0.1).label, 'first_harmonic')
        self.assertEqual(stated_family(InequalityId.MIXED_ISO, 3).label, 'k_multiples(3)')
        self.assertIsNone(stated_family(InequalityId.MIXED_ISO))
        self.assertEqual(stated_family(InequalityId.T2, 2, mu=-4.0).label, 'disc')

    def test_endpoint_tolerance(self):
        self.assertTrue(lambda_at_upper(3, 3 / math.pi * (1 + 1e-13)))
        self.assertFalse(lambda_at_upper(3, 3 / math.pi * (1 - 1e-9)))
        self.assertTrue(mu_at_lower(4, -4.0 - 1e-13))
        self.assertFalse(mu_at_lower(4, -4.001))

    def test_chains(self):
        chain = family_chain(EqualityFamily(FamilyKind.NON_K_MULTIPLES, 3))
        self.assertEqual([family.label for family in chain], ['disc', 'first_harmonic', 'non_k_multiples(3)'])
        chain = family_chain(EqualityFamily(FamilyKind.K_MULTIPLES, 2))
        self.assertEqual([family.label for family in chain], ['disc', 'even_k_multiples(2)', 'k_multiples(2)'])
        self.assertEqual(family_chain(EqualityFamily(FamilyKind.DISC)), [EqualityFamily(FamilyKind.DISC)])

    def test_most_specific_family(self):
        family = EqualityFamily(FamilyKind.K_MULTIPLES, 2)
        self.assertEqual(most_specific_family(family, disc()).label, 'disc')
        self.assertEqual(most_specific_family(family, body(a4=0.1)).label, 'even_k_multiples(2)')
        self.assertEqual(most_specific_family(family, body(a4=0.1), body(a2=0.1)).label, 'k_multiples(2)')
        self.assertIsNone(most_specific_family(family, body(a3=0.1)))


class ClassifyEqualityTests(SimpleTestCase):

    def test_disc_equality(self):
        report = slack_theorem1(disc(2.0), 3, 0.2)
        self.assertEqual(classify_equality(disc(2.0), report).label, 'disc')

    def test_first_harmonic_equality(self):
        S = body(b1=0.4)
        report = slack_theorem2(S, 2, -2.0)
        self.assertEqual(classify_equality(S, report).label, 'first_harmonic')

    def test_rejects_non_equality(self):
        report = slack_theorem1(body(a2=0.2), 2, 0.5)
        with self.assertRaises(ClassificationError):
            classify_equality(body(a2=0.2), report)

    def test_mismatch_logged(self):
        report = equality_report(InequalityId.T1, k=2, lam=0.5)
        with self.assertLogs('inequalities.classification', 'WARNING') as logs:
            self.assertIsNone(classify_equality(body(a3=0.2), report))
        self.assertIn('outside its family disc', logs.output[0])

    def test_two_body_classification(self):
        report = equality_report(InequalityId.MIXED_ISO)
        self.assertEqual(classify_equality(disc(1.0), report, disc(3.0)).label, 'disc')
        with self.assertLogs('inequalities.classification', 'WARNING'):
            self.assertIsNone(classify_equality(disc(1.0), report, body(a1=0.1)))

    def test_support_tolerance(self):
        self.assertAlmostEqual(support_tolerance(equality_report(InequalityId.C31, k=2, tolerance=1e-10)), 1e-5)
        # coefficients below sqrt(tolerance) do not break a disc match
        report = equality_report(InequalityId.DUAL_ISO, tolerance=1e-9)
        self.assertEqual(classify_equality(body(a2=1e-6), report).label, 'disc')

import json

from django.test import SimpleTestCase

from bodies.tests.helpers import TempDirMixin
from inequalities.reports import file_sha256
from inequalities.suites import SUITE_NAMES, SuiteConfig, SuiteRunner, run_suites, write_suite_artifacts

SMALL = SuiteConfig(
    count=6,
    seed=1,
    n_max=6,
    ks=(2, 3),
    lemma_alphas=2,
    alpha_count=2,
    monotonicity_count=3,
    monotonicity_points=4,
    limit_pairs=3,
    limit_ks=(2, 4, 8, 16),
    search_starts=2,
    search_n_max=4,
    determinism_count=3,
)


class SuiteTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.results = {result.name: result for result in run_suites(SMALL)}

    def test_every_suite_runs(self):
        self.assertEqual(list(self.results), list(SUITE_NAMES))

    def test_every_suite_passes(self):
        for name, result in self.results.items():
            with self.subTest(suite=name):
                self.assertTrue(result.passed, f"{name}: worst {result.metric} = {result.worst!r}")

    def test_identity_coverage(self):
        # four single-body functionals plus two chord integrals per k
        self.assertEqual(self.results['identity'].checked, 6 * (4 + 2 * 2))
        self.assertLessEqual(self.results['identity'].worst, 1e-9)

    def test_lemma_coverage(self):
        self.assertEqual(self.results['lemma'].checked, 6 * 2 * (1 + 2))

    def test_sign_minimum_slack_non_negative(self):
        self.assertGreaterEqual(self.results['sign'].worst, -1e-9)

    def test_sharpness_equalities(self):
        frame = self.results['sharpness'].frame
        exact = frame[frame['perturbed_n'].isna()]
        self.assertEqual(len(exact), 10 * len(SMALL.ks))
        self.assertLessEqual(self.results['sharpness'].worst, 1e-10)

    def test_determinism_digests_match(self):
        frame = self.results['determinism'].frame
        self.assertEqual(sorted(frame['artifact']), ['reports.csv', 'summary.csv', 'sweep.json'])
        self.assertTrue((frame['sha256_first'] == frame['sha256_second']).all())


class SuiteSelectionTests(TempDirMixin, SimpleTestCase):

    def test_selected_suites_only(self):
        config = SuiteConfig(count=3, n_max=4, ks=(2,), suites=('identity', 'limit'), limit_pairs=2, limit_ks=(2, 8))
        results = SuiteRunner(config).run()
        self.assertEqual([result.name for result in results], ['identity', 'limit'])

    def test_artifacts(self):
        config = SuiteConfig(count=3, n_max=4, ks=(2,), suites=('identity', 'lemma'), lemma_alphas=1)
        results = run_suites(config)
        paths = write_suite_artifacts(results, self.tmp, {'count': 3})
        summary = json.loads(paths['suite'].read_text())
        self.assertTrue(summary['passed'])
        self.assertEqual(sorted(summary['suites']), ['identity', 'lemma'])
        self.assertEqual(summary['sha256']['identity'], file_sha256(paths['identity']))
        self.assertTrue((self.tmp / 'lemma.csv').exists())

    def test_ensembles_shared_between_suites(self):
        runner = SuiteRunner(SuiteConfig(count=2, n_max=3, ks=(2,)))
        self.assertIs(runner.ensemble(2), runner.ensemble(2))
        self.assertIsNot(runner.ensemble(2), runner.ensemble(2, hypothesis=False))

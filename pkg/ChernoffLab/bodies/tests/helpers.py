"""
Shared fixtures for the lab's tests.
"""

import json
import math
import tempfile
from pathlib import Path

import numpy as np

from bodies.profiles import FourierProfile, validate_positivity


def random_profile(rng, n_max, scale=0.3, decay=2.0, a0_range=(1.5, 3.0)):
    """Seeded random profile with coefficients of size scale/n^decay."""
    n = np.arange(1, n_max + 1, dtype=float)
    sigma = scale / n ** decay
    a = rng.normal(0.0, 1.0, n_max) * sigma
    b = rng.normal(0.0, 1.0, n_max) * sigma
    return FourierProfile.from_arrays(rng.uniform(*a0_range), a, b)


def random_body(rng, n_max, scale=0.3, decay=2.0):
    """Random profile shrunk until positive, then certified."""
    profile = random_profile(rng, n_max, scale, decay)
    bound = 0.5 * profile.a0 - float(np.sqrt(profile.harmonic_energies()).sum())
    if bound <= 0.25 * profile.a0:
        x = profile.as_vector()
        factor = 0.25 * profile.a0 / (0.5 * profile.a0 - bound)
        x[1:] *= factor
        profile = FourierProfile.from_vector(x)
    return validate_positivity(profile)


def body(a0=2.0, **coefficients):
    """Body from keyword coefficients such as a3=0.2, b1=0.5."""
    pairs = {}
    for key, value in coefficients.items():
        n = int(key[1:])
        a, b = pairs.get(n, (0.0, 0.0))
        pairs[n] = (value, b) if key[0] == 'a' else (a, value)
    return validate_positivity(FourierProfile.from_coefficients(a0, pairs))


class TempDirMixin:
    """Per-test temporary directory with JSON helpers."""

    def setUp(self):
        super().setUp()
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()
        super().tearDown()

    def write_json(self, name, data):
        path = self.tmp / name
        path.write_text(json.dumps(data), encoding='utf-8')
        return str(path)

    def write_text(self, name, text):
        path = self.tmp / name
        path.write_text(text, encoding='utf-8')
        return str(path)


PI = math.pi

"""
Forms for inequalities app.

Sweep, search, limit and suite config files are JSON objects validated by
these forms before any computation starts.
"""

import math

from django import forms

from bodies.forms import ConfigForm, FloatListField, IntegerListField
from inequalities.ensembles.sampling import DEFAULT_A0_RANGE, DEFAULT_DECAY, DEFAULT_FLOOR, DEFAULT_SIGMA
from inequalities.ensembles.search import (
    DEFAULT_BARRIER_WEIGHT,
    DEFAULT_CONVERGENCE_TOL,
    DEFAULT_FAMILY_TOL,
    DEFAULT_MAX_ITERS,
)
from inequalities.ensembles.sweeps import DEFAULT_ALPHA_COUNT, DEFAULT_LAMBDA_FRACTIONS, DEFAULT_MU_MULTIPLIERS
from inequalities.reports import InequalityId
from inequalities.suites import SUITE_NAMES, SuiteConfig

INEQUALITY_CHOICES = [(i.value, i.value) for i in InequalityId]
DEFAULT_LIMIT_KS = [2, 4, 8, 16, 32, 64, 128, 256]


class BodyReferenceField(forms.Field):
    """A body given as a file path (relative to the config file) or an inline body object."""

    def to_python(self, value):
        if value in self.empty_values:
            return None
        if not isinstance(value, (str, dict)):
            raise forms.ValidationError('Expected a body file path or a body object.', code='invalid')
        return value


class ParameterField(forms.Field):
    """A finite number, or a named endpoint token such as 'max' or 'min'."""

    def __init__(self, *, token, **kwargs):
        self.token = token
        super().__init__(**kwargs)

    def to_python(self, value):
        if value in self.empty_values:
            return None
        if value == self.token:
            return value
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise forms.ValidationError(f'Expected a finite number or "{self.token}".', code='invalid')
        return float(value)


def resolve_lambda(value, k):
    """'max' stands for k/pi."""
    if value == 'max':
        return k / math.pi
    return value


def resolve_mu(value, k):
    """'min' stands for -k, the largest admissible mu."""
    if value == 'min':
        return -float(k)
    return value


class EnsembleForm(ConfigForm):
    """
    Ensemble schema. seed and n_max fall back to the lab settings when omitted.
    """
    count = forms.IntegerField(min_value=1, initial=100)
    seed = forms.IntegerField(min_value=0, required=False)
    n_max = forms.IntegerField(min_value=0, required=False)
    a0_range = FloatListField(min_length=2, initial=list(DEFAULT_A0_RANGE))
    decay_exponent = forms.FloatField(min_value=0.0, initial=DEFAULT_DECAY)
    sigma = forms.FloatField(min_value=0.0, initial=DEFAULT_SIGMA)
    positivity_floor = forms.FloatField(initial=DEFAULT_FLOOR)
    hypothesis_orders = IntegerListField(min_value=2, required=False, initial=[])

    def clean_a0_range(self):
        value = self.cleaned_data['a0_range']
        if len(value) != 2 or not 0.0 < value[0] <= value[1]:
            raise forms.ValidationError('Expected [low, high] with 0 < low <= high.', code='invalid')
        return value

    def clean_positivity_floor(self):
        value = self.cleaned_data['positivity_floor']
        if not 0.0 < value < 1.0:
            raise forms.ValidationError('Must lie in (0, 1).', code='invalid')
        return value


class SweepConfigForm(EnsembleForm):
    """
    Sweep schema: an ensemble (or explicit body files) and a parameter grid.
    """
    bodies = forms.JSONField(required=False)
    inequalities = forms.MultipleChoiceField(choices=INEQUALITY_CHOICES)
    ks = IntegerListField(min_value=2, initial=[2])
    lambda_fractions = FloatListField(initial=list(DEFAULT_LAMBDA_FRACTIONS))
    lambdas = FloatListField(required=False)
    mu_multipliers = FloatListField(initial=list(DEFAULT_MU_MULTIPLIERS))
    mus = FloatListField(required=False)
    alpha_count = forms.IntegerField(min_value=1, initial=DEFAULT_ALPHA_COUNT)
    alphas = FloatListField(required=False)
    allow_out_of_range = forms.BooleanField(required=False, initial=False)
    oracle = forms.BooleanField(required=False, initial=True)
    nodes = forms.IntegerField(min_value=4, required=False)

    def clean_bodies(self):
        value = self.cleaned_data.get('bodies')
        if value in (None, []):
            return []
        if not isinstance(value, list) or not all(isinstance(item, (str, dict)) for item in value):
            raise forms.ValidationError('Expected a list of body file paths or body objects.', code='invalid')
        return value

    def clean(self):
        cleaned = super().clean()
        for name in ('lambdas', 'mus', 'alphas'):
            if not cleaned.get(name):
                cleaned[name] = None
        return cleaned


class SearchConfigForm(ConfigForm):
    """
    Search schema. "lambda" may be "max" and "mu" may be "min".
    """
    inequality = forms.ChoiceField(choices=INEQUALITY_CHOICES)
    k = forms.IntegerField(min_value=2, required=False)
    mu = ParameterField(token='min', required=False)
    alpha = forms.FloatField(required=False)
    start = BodyReferenceField()
    partner = BodyReferenceField(required=False)
    max_iters = forms.IntegerField(min_value=0, initial=DEFAULT_MAX_ITERS)
    convergence_tol = forms.FloatField(min_value=0.0, initial=DEFAULT_CONVERGENCE_TOL)
    barrier_weight = forms.FloatField(min_value=0.0, initial=DEFAULT_BARRIER_WEIGHT)
    family_tol = forms.FloatField(min_value=0.0, initial=DEFAULT_FAMILY_TOL)
    project = forms.BooleanField(required=False, initial=True)

    def clean(self):
        cleaned = super().clean()
        k = cleaned.get('k')
        if k is not None:
            cleaned['lambda'] = resolve_lambda(cleaned.get('lambda'), k)
            cleaned['mu'] = resolve_mu(cleaned.get('mu'), k)
        elif cleaned.get('lambda') == 'max' or cleaned.get('mu') == 'min':
            raise forms.ValidationError('"max" and "min" need k.', code='invalid')
        return cleaned


# "lambda" is a keyword, so the field is attached by name.
SearchConfigForm.base_fields['lambda'] = ParameterField(token='max', required=False)


class LimitConfigForm(ConfigForm):
    """
    Limit study schema: two bodies, a shift and increasing orders.
    """
    S = BodyReferenceField()
    T = BodyReferenceField()
    alpha = forms.FloatField()
    k_values = IntegerListField(min_value=2, initial=DEFAULT_LIMIT_KS)
    oracle = forms.BooleanField(required=False, initial=True)
    nodes = forms.IntegerField(min_value=4, required=False)

    def clean_k_values(self):
        value = self.cleaned_data['k_values']
        if not value or any(b <= a for a, b in zip(value, value[1:])):
            raise forms.ValidationError('Expected a non-empty strictly increasing list.', code='invalid')
        return value


_SUITE_DEFAULTS = SuiteConfig()


class SuiteConfigForm(ConfigForm):
    """
    Acceptance suite schema; every key is optional.
    """
    count = forms.IntegerField(min_value=2, initial=_SUITE_DEFAULTS.count)
    seed = forms.IntegerField(min_value=0, required=False)
    n_max = forms.IntegerField(min_value=1, initial=_SUITE_DEFAULTS.n_max)
    ks = IntegerListField(min_value=2, initial=list(_SUITE_DEFAULTS.ks))
    lemma_alphas = forms.IntegerField(min_value=1, initial=_SUITE_DEFAULTS.lemma_alphas)
    alpha_count = forms.IntegerField(min_value=1, initial=_SUITE_DEFAULTS.alpha_count)
    monotonicity_count = forms.IntegerField(min_value=1, initial=_SUITE_DEFAULTS.monotonicity_count)
    monotonicity_points = forms.IntegerField(min_value=2, initial=_SUITE_DEFAULTS.monotonicity_points)
    limit_pairs = forms.IntegerField(min_value=2, initial=_SUITE_DEFAULTS.limit_pairs)
    limit_ks = IntegerListField(min_value=2, initial=list(_SUITE_DEFAULTS.limit_ks))
    search_starts = forms.IntegerField(min_value=1, initial=_SUITE_DEFAULTS.search_starts)
    search_n_max = forms.IntegerField(min_value=1, initial=_SUITE_DEFAULTS.search_n_max)
    determinism_count = forms.IntegerField(min_value=1, initial=_SUITE_DEFAULTS.determinism_count)
    suites = forms.MultipleChoiceField(choices=[(name, name) for name in SUITE_NAMES], initial=list(SUITE_NAMES))
    rtol = forms.FloatField(min_value=0.0, required=False)

    def clean_ks(self):
        value = self.cleaned_data['ks']
        if not value:
            raise forms.ValidationError('Expected at least one order.', code='required')
        return value

    def clean_limit_ks(self):
        value = self.cleaned_data['limit_ks']
        if not value or any(b <= a for a, b in zip(value, value[1:])):
            raise forms.ValidationError('Expected a non-empty strictly increasing list.', code='invalid')
        return value

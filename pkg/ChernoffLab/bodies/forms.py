"""
Forms for bodies app.

Config and body files are JSON objects; these forms validate the parsed
object the same way a form validates submitted data.
"""

import math
from typing import Dict

from django import forms

from bodies.exceptions import ConfigError


class FloatListField(forms.Field):
    """A JSON list of finite numbers."""

    def __init__(self, *, min_length=0, **kwargs):
        self.min_length = min_length
        super().__init__(**kwargs)

    def to_python(self, value):
        if value in self.empty_values:
            return []
        if not isinstance(value, (list, tuple)):
            raise forms.ValidationError('Expected a list of numbers.', code='invalid')
        result = []
        for i, item in enumerate(value):
            if isinstance(item, bool) or not isinstance(item, (int, float)) or not math.isfinite(item):
                raise forms.ValidationError(f'Item {i} is not a finite number: {item!r}.', code='invalid')
            result.append(float(item))
        if len(result) < self.min_length:
            raise forms.ValidationError(f'Expected at least {self.min_length} values.', code='min_length')
        return result


class IntegerListField(forms.Field):
    """A JSON list of integers, each at least min_value."""

    def __init__(self, *, min_value=None, **kwargs):
        self.min_value = min_value
        super().__init__(**kwargs)

    def to_python(self, value):
        if value in self.empty_values:
            return []
        if not isinstance(value, (list, tuple)):
            raise forms.ValidationError('Expected a list of integers.', code='invalid')
        result = []
        for i, item in enumerate(value):
            if isinstance(item, bool) or not isinstance(item, (int, float)) or int(item) != item:
                raise forms.ValidationError(f'Item {i} is not an integer: {item!r}.', code='invalid')
            if self.min_value is not None and item < self.min_value:
                raise forms.ValidationError(f'Item {i} must be >= {self.min_value}.', code='min_value')
            result.append(int(item))
        return result


class HarmonicsField(forms.Field):
    """The harmonics list of a body file: [[a1, b1], [a2, b2], ...]."""

    def to_python(self, value):
        if value in self.empty_values:
            return []
        if not isinstance(value, (list, tuple)):
            raise forms.ValidationError('Expected a list of [a_n, b_n] pairs.', code='invalid')
        pairs = []
        for i, pair in enumerate(value):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise forms.ValidationError(f'harmonics[{i}] must be a pair [a_n, b_n].', code='invalid')
            for j, item in enumerate(pair):
                if isinstance(item, bool) or not isinstance(item, (int, float)) or not math.isfinite(item):
                    raise forms.ValidationError(
                        f'harmonics[{i}][{j}] is not a finite number: {item!r}.', code='invalid'
                    )
            pairs.append((float(pair[0]), float(pair[1])))
        return pairs


class ConfigForm(forms.Form):
    """
    Base form for JSON config objects.

    Missing keys take the field's initial value, unknown keys are rejected.
    """

    @classmethod
    def validate(cls, data, source: str = 'config') -> Dict:
        """
        Validate a parsed JSON object.

        Args:
            data: Parsed JSON value
            source: Name used in error messages (usually the file path)

        Returns:
            The form's cleaned_data

        Raises:
            ConfigError: Not an object, unknown keys, or invalid values
        """
        if not isinstance(data, dict):
            raise ConfigError(f'{source}: expected a JSON object, got {type(data).__name__}')

        unknown = sorted(set(data) - set(cls.base_fields))
        if unknown:
            raise ConfigError(f'{source}: unknown keys', {key: ['Unknown key.'] for key in unknown})

        merged = {
            name: field.initial
            for name, field in cls.base_fields.items()
            if field.initial is not None
        }
        merged.update(data)

        form = cls(data=merged)
        if not form.is_valid():
            errors = {field: [str(message) for message in messages] for field, messages in form.errors.items()}
            raise ConfigError(f'{source}: invalid values', errors)
        return form.cleaned_data


class StarBodyForm(ConfigForm):
    """
    Body file schema: {"a0": number, "harmonics": [[a1, b1], ...], "name": optional}.
    """
    a0 = forms.FloatField()
    harmonics = HarmonicsField(required=False, initial=[])
    name = forms.CharField(required=False, max_length=200)


from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from bodies.exceptions import ConfigError, PositivityError, ProfileError
from bodies.forms import FloatListField, IntegerListField, StarBodyForm
from bodies.profiles import PositivityCertificate
from bodies.serializers import body_to_dict, dump_body, load_body, parse_json, read_json, resolve_body
from bodies.tests.helpers import TempDirMixin, body


class LoadBodyTests(TempDirMixin, SimpleTestCase):

    def test_loads_and_certifies(self):
        path = self.write_json('s.json', {'a0': 2, 'harmonics': [[0, 0], [0, 0], [0.2, 0]], 'name': 'trefoil'})
        star = load_body(path)
        self.assertEqual(star.n_max, 3)
        self.assertEqual(star.profile.coefficient(3), (0.2, 0.0))
        self.assertEqual(star.name, 'trefoil')
        self.assertEqual(star.positivity_certificate, PositivityCertificate.SUFFICIENT_CONDITION)

    def test_harmonics_optional(self):
        self.assertEqual(load_body(self.write_json('disc.json', {'a0': 2})).profile.n_max, 0)

    def test_malformed_json_has_location(self):
        path = self.write_text('bad.json', '{"a0": 2,\n "harmonics": [[0.1, 0.2],]}')
        with self.assertRaises(ProfileError) as cm:
            load_body(path)
        self.assertIn(f'{path}:2:', str(cm.exception))

    def test_unknown_key(self):
        with self.assertRaises(ProfileError) as cm:
            load_body(self.write_json('u.json', {'a0': 2, 'radius': 1}))
        self.assertIn('radius', str(cm.exception))

    def test_bad_pair(self):
        with self.assertRaises(ProfileError) as cm:
            load_body(self.write_json('p.json', {'a0': 2, 'harmonics': [[0.1, 0.2], [0.3]]}))
        self.assertIn('harmonics[1]', str(cm.exception))

    def test_missing_a0(self):
        with self.assertRaises(ProfileError) as cm:
            load_body(self.write_json('m.json', {'harmonics': []}))
        self.assertEqual(cm.exception.location, f'{self.tmp / "m.json"}: a0')

    def test_not_positive(self):
        with self.assertRaises(PositivityError):
            load_body(self.write_json('n.json', {'a0': 2, 'harmonics': [[1.5, 0]]}))

    def test_missing_file(self):
        with self.assertRaises(OSError):
            load_body(self.tmp / 'absent.json')

    def test_dump_is_loadable(self):
        star = body(a1=0.3, b2=-0.1)
        path = dump_body(star, self.tmp / 'out' / 'b.json')
        self.assertEqual(read_json(path), body_to_dict(star))
        self.assertEqual(load_body(path), star)

    def test_resolve_relative_path_and_inline_body(self):
        self.write_json('s.json', {'a0': 3})
        self.assertEqual(resolve_body('s.json', self.tmp).a0, 3.0)
        inline = resolve_body({'a0': 2, 'harmonics': [[0.1, 0]]}, self.tmp)
        self.assertEqual(inline.profile.coefficient(1), (0.1, 0.0))
        with self.assertRaises(PositivityError):
            resolve_body({'a0': 2, 'harmonics': [[1.5, 0]]})


class ConfigFormTests(SimpleTestCase):

    def test_parse_json_error(self):
        with self.assertRaises(ProfileError):
            parse_json('[1, 2', source='inline')

    def test_not_an_object(self):
        with self.assertRaises(ConfigError):
            StarBodyForm.validate([1, 2])

    def test_rejects_non_finite_a0(self):
        with self.assertRaises(ConfigError) as cm:
            StarBodyForm.validate({'a0': float('inf')})
        self.assertIn('a0', cm.exception.errors)

    def test_list_fields(self):
        self.assertEqual(FloatListField().clean([1, 2.5]), [1.0, 2.5])
        self.assertEqual(IntegerListField(min_value=2).clean([2, 3.0]), [2, 3])
        with self.assertRaises(ValidationError):
            IntegerListField(min_value=2).clean([1])
        with self.assertRaises(ValidationError):
            FloatListField().clean([True])

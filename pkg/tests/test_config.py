from fractions import Fraction

import pytest

from formality_utils import (
    ContractViolation,
    get_settings,
    ImproperlyConfigured,
    Settings
)
from formality_utils.utils import format_scalar, sign, to_scalar


class TestSettings:
    def test_defaults(self):
        settings = get_settings({})
        assert settings == Settings()
        assert settings.max_arity == 6
        assert settings.archive_url is None

    def test_environment(self):
        settings = get_settings({
            'FORMALITY_UTILS_MAX_ARITY': '4',
            'FORMALITY_UTILS_WORKERS': '3',
            'FORMALITY_UTILS_ARCHIVE': 'sqlite://',
            'FORMALITY_UTILS_LOG_LEVEL': 'debug',
        })
        assert settings.max_arity == 4
        assert settings.workers == 3
        assert settings.archive_url == 'sqlite://'
        assert settings.log_level == 'DEBUG'

    def test_non_integer_environment_value(self):
        with pytest.raises(ImproperlyConfigured) as e:
            get_settings({'FORMALITY_UTILS_MAX_P': 'many'})
        assert str(e.value) == (
            "FORMALITY_UTILS_MAX_P must be an integer, got 'many'."
        )

    @pytest.mark.parametrize(
        'values',
        (
            {'max_arity': 1},
            {'max_p': 0},
            {'workers': 0},
            {'log_level': 'LOUD'},
        )
    )
    def test_invalid_values(self, values):
        with pytest.raises(ImproperlyConfigured):
            Settings(**values)

    def test_override_skips_none(self):
        settings = Settings().override(max_arity=4, workers=None)
        assert settings.max_arity == 4
        assert settings.workers == 1


class TestScalars:
    @pytest.mark.parametrize(
        ('value', 'expected'),
        (
            (3, Fraction(3)),
            ('3/6', Fraction(1, 2)),
            (' -2 ', Fraction(-2)),
            (Fraction(2, 3), Fraction(2, 3)),
        )
    )
    def test_to_scalar(self, value, expected):
        assert to_scalar(value) == expected

    @pytest.mark.parametrize('value', (0.5, True, '1.5', '1/0', None))
    def test_rejected(self, value):
        with pytest.raises(ContractViolation):
            to_scalar(value)

    def test_format_scalar(self):
        assert format_scalar(Fraction(4, 2)) == '2'
        assert format_scalar(Fraction(-1, 3)) == '-1/3'

    def test_sign(self):
        assert sign(3) == -1
        assert sign(-2) == 1

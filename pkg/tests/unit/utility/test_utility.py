"""Tests the scope of utilities"""

from fractions import Fraction

import pytest

from pbb.utility.exception import CertificateError, ParseError
from pbb.utility.utility import canonicalize_name, format_rational, require_probability


class TestUtility:
    """Tests the utility functionality"""

    @staticmethod
    def test_none() -> None:
        """Verifies that no exception is thrown with an empty string"""
        test = canonicalize_name('')

        assert not test.group
        assert not test.name

    @staticmethod
    def test_only_group() -> None:
        """Verifies that no exception is thrown when only a group is specified"""
        test = canonicalize_name('Suite')

        assert test.group == 'suite'
        assert not test.name

    @staticmethod
    def test_name_group() -> None:
        """Test that canonicalization works"""
        test = canonicalize_name('GraftingSuite')

        assert test.group == 'suite'
        assert test.name == 'grafting'

    @staticmethod
    def test_hyphenated_name() -> None:
        """Leading words are joined with hyphens"""
        test = canonicalize_name('JointDecompositionSuite')

        assert test.group == 'suite'
        assert test.name == 'joint-decomposition'

    @staticmethod
    def test_group_only_caps() -> None:
        """Test that canonicalization works"""
        test = canonicalize_name('NameSUITE')

        assert test.group == 'suite'
        assert test.name == 'name'

    @staticmethod
    def test_name_only_caps() -> None:
        """Test that canonicalization works"""
        test = canonicalize_name('NAMESuite')
        assert test.group == 'suite'
        assert test.name == 'name'

    @staticmethod
    @pytest.mark.parametrize(
        ('value', 'text'),
        [(Fraction(0), '0'), (Fraction(1), '1'), (Fraction(2, 4), '1/2'), (Fraction(-1, 3), '-1/3')],
    )
    def test_format_rational(value: Fraction, text: str) -> None:
        """Rationals print in lowest terms, integers bare

        Args:
            value: The rational
            text: Its expected form
        """
        assert format_rational(value) == text


class TestException:
    """Exceptions keep their underlying message"""

    @staticmethod
    def test_parse_error_position() -> None:
        """The position prefixes the message"""
        error = ParseError('unexpected token', 2, 5)

        assert error.error == 'unexpected token'
        assert (error.line, error.column) == (2, 5)
        assert str(error) == '2:5: unexpected token'

    @staticmethod
    def test_plain_error() -> None:
        """Domain errors expose the message"""
        error = CertificateError('not related')

        assert error.error == 'not related'
        assert str(error) == 'not related'


class TestProbability:
    """Probability checks"""

    @staticmethod
    def test_bounds() -> None:
        """Both ends of [0, 1] are probabilities"""
        assert require_probability(0, 'ratio') == 0
        assert require_probability(Fraction(1, 3), 'ratio') == Fraction(1, 3)
        assert require_probability(1, 'ratio', positive=True) == 1

    @staticmethod
    def test_outside() -> None:
        """Values outside [0, 1] name what was checked"""
        with pytest.raises(ValueError, match='weight 3/2 is outside'):
            require_probability(Fraction(3, 2), 'weight')

    @staticmethod
    def test_zero_excluded() -> None:
        """Positive probabilities exclude zero"""
        with pytest.raises(ValueError, match='0 < r'):
            require_probability(0, 'ratio', positive=True)

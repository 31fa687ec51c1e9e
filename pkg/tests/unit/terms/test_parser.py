"""Tests the term grammar"""

from fractions import Fraction

import pytest

from pbb.distr.distribution import Distribution, dirac
from pbb.terms.ast import Action, Choice, Dirac, Nil, PChoice, Prefix, Sort, format_term
from pbb.terms.parser import parse, parse_distribution, parse_literal, parse_nterm, parse_pterm
from pbb.test.data.variants import G2, NU, T, Y
from pbb.utility.exception import ParseError


class TestParser:
    """Parsing of the three literal sorts"""

    @staticmethod
    def test_nil() -> None:
        """The inactive process parses to the empty node"""
        assert parse('0') == Nil()

    @staticmethod
    def test_prefix() -> None:
        """A prefix takes a probabilistic body"""
        assert parse_nterm('a.D(0)') == Prefix(Action('a'), Dirac(Nil()))

    @staticmethod
    def test_choice_left_associative() -> None:
        """Chains of sums nest to the left"""
        term = parse_nterm('a.D(0) + b.D(0) + 0')
        assert term == Choice(Choice(parse_nterm('a.D(0)'), parse_nterm('b.D(0)')), Nil())

    @staticmethod
    def test_probabilistic_choice() -> None:
        """The ratio is the weight of the left branch"""
        term = parse_pterm('D(0) +[1/3] D(a.D(0))')
        assert term == PChoice(Dirac(Nil()), Fraction(1, 3), Dirac(parse_nterm('a.D(0)')))

    @staticmethod
    @pytest.mark.parametrize('text', [T, Y, '0 + 0', 'tau.(D(0) +[1/2] (D(a.D(0)) +[1/3] D(b.D(0))))'])
    def test_printer_reads_back(text: str) -> None:
        """The canonical form parses to the same term"""
        term = parse_nterm(text)
        assert parse_nterm(format_term(term)) == term

    @staticmethod
    def test_nested_printing() -> None:
        """Right operands of the same operator keep their parentheses"""
        assert format_term(parse_nterm('a.D(0) + (b.D(0) + 0)')) == 'a.D(0) + (b.D(0) + 0)'
        assert format_term(parse_nterm(G2)).startswith('a.(D(tau.(')

    @staticmethod
    def test_error_position() -> None:
        """Errors point at the offending token"""
        with pytest.raises(ParseError) as info:
            parse('a.0')
        assert info.value.line == 1
        assert info.value.column == 3

    @staticmethod
    def test_error_line() -> None:
        """Lines are counted across newlines"""
        with pytest.raises(ParseError) as info:
            parse('a.D(0)\n+ ?')
        assert info.value.line == 2

    @staticmethod
    def test_ratio_outside_unit() -> None:
        """Ratios above one are rejected"""
        with pytest.raises(ParseError):
            parse('D(0) +[3/2] D(0)', Sort.PROB)

    @staticmethod
    def test_trailing_input() -> None:
        """A complete term followed by more tokens is rejected"""
        with pytest.raises(ParseError):
            parse('0 0')

    @staticmethod
    def test_distribution_literal() -> None:
        """Repeated states are summed"""
        parsed = parse_distribution('{1/2: a.D(0), 1/4: 0, 1/4: a.D(0)}')
        assert parsed == Distribution.from_pairs([(parse_nterm('a.D(0)'), Fraction(3, 4)), (Nil(), Fraction(1, 4))])

    @staticmethod
    def test_distribution_weights() -> None:
        """Weights must sum to one"""
        with pytest.raises(ParseError):
            parse_distribution('{1/2: 0}')


class TestLiteral:
    """Reading any sort as a distribution"""

    @staticmethod
    def test_nondet_is_dirac() -> None:
        """A process denotes its Dirac distribution"""
        assert parse_literal('a.D(0)') == dirac(parse_nterm('a.D(0)'))

    @staticmethod
    def test_prob_is_denotation() -> None:
        """A probabilistic process denotes its mixture"""
        assert parse_literal('D(0) +[1/2] (D(0) +[1/2] D(a.D(0)))') == parse_distribution(
            '{3/4: 0, 1/4: a.D(0)}'
        )

    @staticmethod
    def test_distribution_as_is() -> None:
        """A distribution literal is taken unchanged"""
        assert str(parse_literal(NU)) == str(parse_distribution(NU))

    @staticmethod
    def test_garbage() -> None:
        """Text of no sort is a parse error"""
        with pytest.raises(ParseError):
            parse_literal('a.')

"""Tests the syntax tree"""

from fractions import Fraction

import pytest

from pbb.terms.ast import TAU, Action, Dirac, Nil, PChoice, Sort, choice, complexity, sort_of, summands
from pbb.terms.parser import parse_nterm, parse_pterm
from pbb.test.data.variants import A, T


class TestAst:
    """Node invariants and helpers"""

    @staticmethod
    def test_action_names() -> None:
        """Action names start with a lower-case letter"""
        assert TAU.silent
        assert not Action('a').silent
        with pytest.raises(ValueError, match='not a valid action'):
            Action('Tau')

    @staticmethod
    def test_ratio_range() -> None:
        """Probabilistic choice ratios lie in [0, 1]"""
        with pytest.raises(ValueError, match='outside'):
            PChoice(Dirac(Nil()), Fraction(2), Dirac(Nil()))

    @staticmethod
    def test_complexity() -> None:
        """Prefixes and Dirac embeddings count one each"""
        assert complexity(Nil()) == 0
        assert complexity(parse_nterm(A)) == 2
        assert complexity(parse_nterm(T)) == 7
        assert complexity(parse_pterm('D(0) +[1/2] D(0)')) == 2

    @staticmethod
    def test_sorts() -> None:
        """Sorts follow the node type"""
        assert sort_of(Nil()) is Sort.NONDET
        assert sort_of(Dirac(Nil())) is Sort.PROB

    @staticmethod
    def test_choice_helpers() -> None:
        """Sums flatten back into their summands"""
        parts = (parse_nterm('a.D(0)'), parse_nterm('b.D(0)'), Nil())
        assert choice() == Nil()
        assert summands(choice(*parts)) == parts

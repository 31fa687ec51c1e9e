"""Tests joint decomposition and limit residuals"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pbb.distr.combinatorics import (
    column_part,
    column_sums,
    joint_decompose,
    limit_residual,
    row_part,
    row_sums,
)
from pbb.distr.distribution import Distribution, binary_mix, dirac, distance, mix
from pbb.terms.ast import Nil
from pbb.terms.parser import parse_distribution, parse_nterm
from pbb.test.data.variants import A, B, MU, NU, T
from pbb.utility.exception import DistributionError

STATES = [Nil(), parse_nterm(A), parse_nterm(B), parse_nterm(T)]

weights = st.lists(st.integers(min_value=0, max_value=6), min_size=len(STATES), max_size=len(STATES)).filter(any)


def _distribution(counts: list[int]) -> Distribution:
    total = sum(counts)
    return Distribution.from_pairs((state, Fraction(count, total)) for state, count in zip(STATES, counts, strict=True))


class TestJointDecompose:
    """Common refinement of two presentations"""

    @staticmethod
    def test_intro_presentations() -> None:
        """ν as three thirds against ν as one-third T plus two-thirds μ"""
        t, a, b = (dirac(parse_nterm(text)) for text in (T, A, B))
        third = Fraction(1, 3)
        left = [(third, t), (third, a), (third, b)]
        right = [(third, t), (2 * third, parse_distribution(MU))]
        matrix = joint_decompose(left, right)

        assert row_sums(matrix) == (third, third, third)
        assert column_sums(matrix) == (third, 2 * third)
        assert matrix[0][1][0] == 0
        assert matrix[1][1] == (third, a)
        assert [row_part(matrix, index) for index in range(3)] == [t, a, b]
        assert column_part(matrix, 1) == parse_distribution(MU)

    @staticmethod
    def test_rejects_different_mixtures() -> None:
        """Both presentations denote one distribution"""
        with pytest.raises(DistributionError):
            joint_decompose([(Fraction(1), parse_distribution(MU))], [(Fraction(1), parse_distribution(NU))])

    @staticmethod
    @given(weights, weights, st.integers(min_value=1, max_value=5))
    def test_marginals(first: list[int], second: list[int], numerator: int) -> None:
        """Rows and columns add up to the presentation coefficients"""
        ratio = Fraction(numerator, 6)
        mu, nu = _distribution(first), _distribution(second)
        xi = binary_mix(ratio, mu, nu)
        left = [(ratio, mu), (1 - ratio, nu)]
        right = [(Fraction(1), xi)]
        matrix = joint_decompose(left, right)

        assert row_sums(matrix) == (ratio, 1 - ratio)
        assert column_sums(matrix) == (Fraction(1),)
        assert row_part(matrix, 0) == mu
        assert row_part(matrix, 1) == nu
        assert column_part(matrix, 0) == xi


class TestLimitResidual:
    """μ_i = (1 − r)·μ ⊕ r·μ'"""

    @staticmethod
    def test_equal() -> None:
        """A distribution has no residual against itself"""
        nu = parse_distribution(NU)
        assert limit_residual(nu, nu) == (Fraction(0), nu)

    @staticmethod
    def test_disjoint() -> None:
        """Disjoint supports give r = 1"""
        ratio, residual = limit_residual(dirac(Nil()), parse_distribution(MU))
        assert ratio == 1
        assert residual == dirac(Nil())

    @staticmethod
    @given(weights, weights)
    def test_reconstruction(first: list[int], second: list[int]) -> None:
        """The split reassembles the component and r is bounded by the distance"""
        component, limit = _distribution(first), _distribution(second)
        ratio, residual = limit_residual(component, limit)

        assert 0 <= ratio <= 1
        assert mix([(1 - ratio, limit), (ratio, residual)]) == component
        assert ratio <= distance(component, limit) / min(weight for _, weight in limit.entries)

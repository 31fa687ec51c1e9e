"""The weight of a distribution, the descent measure of stabilization"""

from fractions import Fraction

from pbb.distr.distribution import Distribution
from pbb.terms.ast import complexity


def weight(distribution: Distribution) -> Fraction:
    """Σ μ(E)·c(E), the expected complexity of a support state

    Every full τ-firing of positive mass strictly lowers it.
    """
    return sum((mass * complexity(state) for state, mass in distribution.entries), Fraction(0))

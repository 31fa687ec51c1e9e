"""Exact finite-support distributions over non-deterministic processes"""

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Self

from pbb.terms.ast import NTerm, format_term, term_key
from pbb.utility.exception import DistributionError
from pbb.utility.utility import format_rational

type Measure = dict[NTerm, Fraction]


@dataclass(frozen=True, slots=True)
class Distribution:
    """A probability distribution with finite support

    Entries are kept sorted by the canonical term order with strictly positive weights summing to exactly one,
    so structural equality is distribution equality.
    """

    entries: tuple[tuple[NTerm, Fraction], ...]

    def __post_init__(self) -> None:
        """Checks the canonical form"""
        if not self.entries:
            raise DistributionError('a distribution needs a non-empty support')
        if sum((weight for _, weight in self.entries), Fraction(0)) != 1:
            raise DistributionError(f'weights of {self} do not sum to 1')
        if any(weight <= 0 for _, weight in self.entries):
            raise DistributionError('distribution weights must be positive')
        keys = [term_key(term) for term, _ in self.entries]
        if keys != sorted(set(keys)):
            raise DistributionError('distribution entries are not in canonical order')

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[NTerm, Fraction]]) -> Self:
        """Builds the canonical distribution from weighted terms

        Repeated terms are summed and zero weights dropped.

        Args:
            pairs: Terms with their weights

        Raises:
            DistributionError: When a weight is negative or the weights do not sum to one

        Returns:
            The distribution
        """
        measure: Measure = {}
        for term, weight in pairs:
            if weight < 0:
                raise DistributionError(f'negative weight {weight} for {format_term(term)}')
            measure[term] = measure.get(term, Fraction(0)) + Fraction(weight)
        return cls.from_measure(measure)

    @classmethod
    def from_measure(cls, measure: Mapping[NTerm, Fraction]) -> Self:
        """Normalizes a measure of total mass one into a distribution"""
        entries = sorted(
            ((term, Fraction(weight)) for term, weight in measure.items() if weight != 0),
            key=lambda entry: term_key(entry[0]),
        )
        total = sum((weight for _, weight in entries), Fraction(0))
        if total != 1:
            raise DistributionError(f'weights sum to {total}, not 1')
        return cls(tuple(entries))

    @classmethod
    def dirac(cls, term: NTerm) -> Self:
        """The Dirac distribution on a term"""
        return cls(((term, Fraction(1)),))

    def __getitem__(self, term: NTerm) -> Fraction:
        """The probability of a term, zero outside the support"""
        for candidate, weight in self.entries:
            if candidate == term:
                return weight
        return Fraction(0)

    def __iter__(self) -> Iterator[NTerm]:
        """Iterates the support in canonical order"""
        return (term for term, _ in self.entries)

    def __len__(self) -> int:
        """The size of the support"""
        return len(self.entries)

    def __str__(self) -> str:
        """The distribution literal"""
        inner = ', '.join(f'{format_rational(weight)}: {format_term(term)}' for term, weight in self.entries)
        return f'{{{inner}}}'

    @property
    def support(self) -> tuple[NTerm, ...]:
        """spt(μ), in canonical order"""
        return tuple(term for term, _ in self.entries)

    @property
    def is_dirac(self) -> bool:
        """Whether all mass sits on one term"""
        return len(self.entries) == 1

    @property
    def max_denominator(self) -> int:
        """The largest denominator among the weights"""
        return max(weight.denominator for _, weight in self.entries)

    def measure(self, scale: Fraction = Fraction(1)) -> Measure:
        """The weights as a mutable measure, optionally scaled"""
        return {term: weight * scale for term, weight in self.entries}


type Mixture = Sequence[tuple[Fraction, Distribution]]


def dirac(term: NTerm) -> Distribution:
    """δ(e)

    Args:
        term: The term carrying all mass

    Returns:
        The Dirac distribution
    """
    return Distribution.dirac(term)


def accumulate(parts: Iterable[tuple[Fraction, Distribution]]) -> Measure:
    """Pointwise weighted sum of distributions, without normalization"""
    measure: Measure = {}
    for coefficient, distribution in parts:
        if coefficient == 0:
            continue
        for term, weight in distribution.entries:
            measure[term] = measure.get(term, Fraction(0)) + coefficient * weight
    return measure


def mix(parts: Mixture) -> Distribution:
    """⊕ p_i · μ_i

    Args:
        parts: Coefficients with their distributions

    Raises:
        DistributionError: When a coefficient is negative or the coefficients do not sum to one

    Returns:
        The pointwise convex combination with zero entries dropped
    """
    if any(coefficient < 0 for coefficient, _ in parts):
        raise DistributionError('mixture coefficients must be non-negative')
    total = sum((coefficient for coefficient, _ in parts), Fraction(0))
    if total != 1:
        raise DistributionError(f'mixture coefficients sum to {total}, not 1')
    return Distribution.from_measure(accumulate(parts))


def binary_mix(ratio: Fraction, left: Distribution, right: Distribution) -> Distribution:
    """μ ⊕r ν"""
    return mix([(ratio, left), (1 - ratio, right)])


def distance(left: Distribution, right: Distribution) -> Fraction:
    """The Chebyshev distance, sup over terms of |μ(x) − ν(x)|

    Args:
        left: First distribution
        right: Second distribution

    Returns:
        The exact distance, in [0, 1]
    """
    terms = set(left) | set(right)
    return max((abs(left[term] - right[term]) for term in terms), default=Fraction(0))

"""Certificates: finite generators of a relation on distributions plus closure flags"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from typing import Self

from pbb.distr.distribution import Distribution
from pbb.semantics.feasibility import Expr, LinearSystem, Solution, constant, total
from pbb.terms.ast import NTerm, term_key

type Pair = tuple[Distribution, Distribution]


class Closure(StrEnum):
    """Operations the denoted relation is closed under"""

    SYMMETRIC = 'symmetric'
    DIAGONAL = 'diagonal'
    CONVEX = 'convex'


@dataclass(frozen=True, slots=True)
class Certificate:
    """A relation given by generator pairs and closure flags

    Without the convex flag the relation is the pairs, their mirrors when symmetric and the diagonal when
    diagonal. With it, the relation is the convex closure of that set.
    """

    pairs: tuple[Pair, ...]
    closures: frozenset[Closure] = frozenset()

    @classmethod
    def diagonal(cls) -> Self:
        """The identity relation"""
        return cls((), frozenset({Closure.SYMMETRIC, Closure.DIAGONAL, Closure.CONVEX}))

    @classmethod
    def of(cls, pairs: Iterable[Pair], *closures: Closure) -> Self:
        """Builds a certificate, dropping duplicate pairs"""
        return cls(tuple(dict.fromkeys(pairs)), frozenset(closures))

    @property
    def symmetric(self) -> bool:
        """Whether mirrors are included"""
        return Closure.SYMMETRIC in self.closures

    @property
    def reflexive(self) -> bool:
        """Whether the diagonal is included"""
        return Closure.DIAGONAL in self.closures

    @property
    def convex(self) -> bool:
        """Whether the convex closure is taken"""
        return Closure.CONVEX in self.closures

    def generators(self) -> tuple[Pair, ...]:
        """The oriented generators: pairs, plus mirrors when symmetric, without duplicates"""
        oriented = list(self.pairs)
        if self.symmetric:
            oriented.extend((right, left) for left, right in self.pairs)
        return tuple(dict.fromkeys(oriented))

    def mirrored(self) -> Self:
        """The certificate with every pair reversed"""
        return type(self)(tuple((right, left) for left, right in self.pairs), self.closures)

    def union(self, other: 'Certificate', *closures: Closure) -> Self:
        """Pairs and flags of both certificates, plus extra flags"""
        return type(self).of((*self.pairs, *other.pairs), *self.closures, *other.closures, *closures)

    def distributions(self) -> tuple[Distribution, ...]:
        """Every distribution occurring in a pair"""
        return tuple(dict.fromkeys(item for pair in self.pairs for item in pair))

    def rights_of(self, left: Distribution) -> tuple[Distribution, ...]:
        """The distributions related to `left` without convex combination"""
        found = [right for candidate, right in self.generators() if candidate == left]
        if self.reflexive:
            found.append(left)
        return tuple(dict.fromkeys(found))

    def lefts(self) -> tuple[Distribution, ...]:
        """The left sides of the oriented generators"""
        return tuple(dict.fromkeys(left for left, _ in self.generators()))

    def contains(self, left: Distribution, right: Distribution) -> bool:
        """Decides membership of a pair in the denoted relation

        Args:
            left: The left distribution
            right: The right distribution

        Returns:
            Whether the pair is related
        """
        if (self.reflexive and left == right) or (left, right) in self.generators():
            return True
        if not self.convex:
            return False
        system = LinearSystem('member')
        ClosureEncoding(system, self, left.measure(), right.measure())
        return system.solve() is not None

    @property
    def max_denominator(self) -> int:
        """The largest denominator in any pair"""
        return max((item.max_denominator for item in self.distributions()), default=1)


class ClosureEncoding:
    """Linear encoding of (left, right) ∈ mass · cc(R)

    One coefficient per oriented generator and, for diagonal certificates, a free measure on the states shared by
    both sides. Only meaningful for convex certificates; other certificates are matched by enumeration.
    """

    def __init__(
        self,
        system: LinearSystem,
        certificate: Certificate,
        left: Mapping[NTerm, Expr | Fraction],
        right: Mapping[NTerm, Expr | Fraction],
        mass: Fraction = Fraction(1),
    ) -> None:
        """Adds the membership constraints to a system

        Args:
            system: The system to extend
            certificate: The relation
            left: The left measure, constant or symbolic
            right: The right measure, constant or symbolic
            mass: Total mass of both measures
        """
        self.generators = certificate.generators()
        self.coefficients = [system.variable(f'g{index}') for index in range(len(self.generators))]
        self.diagonal: dict[NTerm, Expr] = {}
        if certificate.reflexive:
            shared = sorted(set(left) & set(right), key=term_key)
            self.diagonal = {state: system.variable('d') for state in shared}

        system.require(total([*self.coefficients, *self.diagonal.values()]) == constant(mass))
        for side, measure in ((0, left), (1, right)):
            terms = set(measure) | set(self.diagonal)
            for generator in self.generators:
                terms |= set(generator[side])
            for term in terms:
                contributions = [
                    coefficient * constant(generator[side][term])
                    for coefficient, generator in zip(self.coefficients, self.generators, strict=True)
                    if generator[side][term]
                ]
                if term in self.diagonal:
                    contributions.append(self.diagonal[term])
                value = measure.get(term, Fraction(0))
                system.require(total(contributions) == (constant(value) if isinstance(value, Fraction) else value))

    def used(self, solution: Solution) -> frozenset[int]:
        """Indices of the generators with a positive coefficient"""
        return frozenset(
            index for index, coefficient in enumerate(self.coefficients) if solution.value(coefficient) > 0
        )

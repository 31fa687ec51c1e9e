"""State partitions, class vectors and strong probabilistic bisimilarity

Strong bisimilarity is computed by partition refinement: two states stay together while, for every action, the
class vectors of their successors span the same hull. Hulls are compared through their extreme points.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Self

from pbb.distr.distribution import Distribution
from pbb.semantics.feasibility import LinearSystem, constant, total
from pbb.semantics.universe import Universe
from pbb.terms.ast import Action, NTerm, format_term, term_key
from pbb.utility.exception import SemanticsError

logger = logging.getLogger('pbb.equiv')

type Vector = tuple[Fraction, ...]


@dataclass(frozen=True, slots=True)
class ClassVector:
    """The mass a distribution puts on every block of a partition, in block order"""

    entries: Vector

    def __post_init__(self) -> None:
        """Checks the entries sum to one"""
        if sum(self.entries, Fraction(0)) != 1:
            raise ValueError('class vector entries must sum to 1')

    def __getitem__(self, block: int) -> Fraction:
        """The mass of one block"""
        return self.entries[block]

    def __len__(self) -> int:
        """The number of blocks"""
        return len(self.entries)


@dataclass(frozen=True)
class StatePartition:
    """A disjoint cover of a set of states by non-empty blocks

    Blocks and their members are kept in canonical order: members by term order, blocks by their first member.
    """

    blocks: tuple[tuple[NTerm, ...], ...]

    def __post_init__(self) -> None:
        """Checks the blocks are non-empty and disjoint"""
        seen: set[NTerm] = set()
        for block in self.blocks:
            if not block:
                raise ValueError('partition blocks must be non-empty')
            for state in block:
                if state in seen:
                    raise ValueError(f"state '{format_term(state)}' occurs in two blocks")
                seen.add(state)

    @classmethod
    def of(cls, blocks: Iterable[Iterable[NTerm]]) -> Self:
        """Builds the canonical partition from blocks in any order"""
        ordered = [tuple(sorted(block, key=term_key)) for block in blocks]
        ordered = [block for block in ordered if block]
        return cls(tuple(sorted(ordered, key=lambda block: term_key(block[0]))))

    @classmethod
    def from_pairs(cls, states: Sequence[NTerm], pairs: Iterable[tuple[NTerm, NTerm]]) -> Self:
        """The finest partition in which every pair shares a block (union-find)"""
        parent = {state: state for state in states}

        def find(state: NTerm) -> NTerm:
            while parent[state] != state:
                parent[state] = parent[parent[state]]
                state = parent[state]
            return state

        for left, right in pairs:
            root_left, root_right = find(left), find(right)
            if root_left != root_right:
                parent[max(root_left, root_right, key=term_key)] = min(root_left, root_right, key=term_key)

        groups: dict[NTerm, list[NTerm]] = {}
        for state in states:
            groups.setdefault(find(state), []).append(state)
        return cls.of(groups.values())

    @cached_property
    def index(self) -> dict[NTerm, int]:
        """Block index of every state"""
        return {state: position for position, block in enumerate(self.blocks) for state in block}

    def __len__(self) -> int:
        """The number of blocks"""
        return len(self.blocks)

    def __contains__(self, state: object) -> bool:
        """Whether the state is covered"""
        return state in self.index

    def block_of(self, state: NTerm) -> int:
        """The block index of a state

        Raises:
            SemanticsError: When the state is not covered
        """
        if state not in self.index:
            raise SemanticsError(f"state '{format_term(state)}' is not covered by the partition")
        return self.index[state]

    def vector(self, distribution: Distribution) -> ClassVector:
        """The block masses μ[C] of a distribution

        Raises:
            SemanticsError: When a support state is not covered
        """
        masses = [Fraction(0)] * len(self.blocks)
        for state, weight in distribution.entries:
            masses[self.block_of(state)] += weight
        return ClassVector(tuple(masses))

    def related(self, left: NTerm, right: NTerm) -> bool:
        """Whether two states share a block"""
        return self.block_of(left) == self.block_of(right)


def _in_hull(point: Vector, others: Sequence[Vector]) -> bool:
    if not others:
        return False
    system = LinearSystem('hull')
    weights = [system.variable('w') for _ in others]
    system.require(total(weights) == 1)
    for position, value in enumerate(point):
        mass = total(weight * constant(other[position]) for weight, other in zip(weights, others, strict=True))
        system.require(mass == constant(value))
    return system.solve() is not None


def extreme_points(points: Iterable[Vector]) -> frozenset[Vector]:
    """The extreme points of the hull of a finite point set"""
    distinct = list(dict.fromkeys(points))
    if len(distinct) <= 2:
        return frozenset(distinct)
    return frozenset(
        point for index, point in enumerate(distinct) if not _in_hull(point, distinct[:index] + distinct[index + 1 :])
    )


type Hulls = dict[Action, frozenset[Vector]]
type Discriminator = tuple[Action, int]


def _hulls(universe: Universe, partition: StatePartition, state: NTerm) -> Hulls:
    return {
        action: extreme_points(partition.vector(target).entries for target in universe.successors(state, action))
        for action in universe.actions(state)
    }


def _key(hulls: Hulls, action: Action, block: int, width: int) -> object:
    """What a state shows to the discriminator (action, block)

    A block index below `width` compares the range of masses an action can move into that block; `width` itself
    compares the whole hull.
    """
    if action not in hulls:
        return None
    if block == width:
        return hulls[action]
    masses = [point[block] for point in hulls[action]]
    return min(masses), max(masses)


def _split(partition: StatePartition, keys: dict[NTerm, object]) -> StatePartition:
    groups: dict[tuple[int, object], list[NTerm]] = {}
    for index, block in enumerate(partition.blocks):
        for state in block:
            groups.setdefault((index, keys[state]), []).append(state)
    return StatePartition.of(groups.values())


def _discriminate(
    universe: Universe, partition: StatePartition
) -> tuple[Discriminator, StatePartition] | None:
    """The refinement by the lexicographically smallest (action, block-index) discriminator that splits a block"""
    hulls = {state: _hulls(universe, partition, state) for state in universe.states}
    width = len(partition)
    for action in universe.alphabet:
        for block in range(width + 1):
            keys = {state: _key(hulls[state], action, block, width) for state in universe.states}
            refined = _split(partition, keys)
            if len(refined) > len(partition):
                return (action, block), refined
    return None


def strong_partition(universe: Universe) -> StatePartition:
    """The coarsest strong probabilistic bisimulation partition of the universe

    Each round splits every block by the lexicographically smallest (action, block-index) discriminator that
    separates two of its states.

    Args:
        universe: The universe

    Returns:
        The partition, blocks in canonical order
    """
    partition = StatePartition.of([universe.states]) if universe.states else StatePartition(())
    rounds = 0
    while (found := _discriminate(universe, partition)) is not None:
        rounds += 1
        (action, block), partition = found
        logger.debug('Round %d splits by (%s, %d) into %d blocks', rounds, action, block, len(partition))
    logger.info('Strong partition: %d blocks after %d rounds', len(partition), rounds)
    return partition


def strong_equiv(
    universe: Universe, left: Distribution, right: Distribution, partition: StatePartition | None = None
) -> bool:
    """Whether two distributions put equal mass on every strong class

    Args:
        universe: The universe holding both supports
        left: μ
        right: ν
        partition: A precomputed strong partition of the universe

    Returns:
        μ[C] = ν[C] for every class C
    """
    universe.require_support(left, right)
    if partition is None:
        partition = strong_partition(universe)
    return partition.vector(left) == partition.vector(right)

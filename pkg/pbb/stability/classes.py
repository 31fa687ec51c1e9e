"""Branching classes of states and class-vector comparison of stable distributions"""

import logging
from collections.abc import Iterable
from itertools import combinations

from pbb.core.schema import Budget
from pbb.distr.distribution import Distribution, dirac
from pbb.equiv.checker import check_certificate
from pbb.equiv.partition import ClassVector, StatePartition
from pbb.equiv.refute import refute, tau_free
from pbb.equiv.search import candidate_pairs, greatest_certificate
from pbb.semantics.universe import Universe
from pbb.stability.stabilizer import stability_proof
from pbb.terms.ast import NTerm
from pbb.utility.exception import StabilityError

logger = logging.getLogger('pbb.stability')


def class_vector(distribution: Distribution, partition: StatePartition) -> ClassVector:
    """μ[C] for every block C

    Raises:
        SemanticsError: When a support state is not covered
    """
    return partition.vector(distribution)


def branching_partition(universe: Universe, budget: Budget | None = None) -> StatePartition:
    """Groups states whose Dirac distributions are related by an accepted certificate

    Blocks only merge on accepted pairs, so related states are branching bisimilar; bisimilar states the search
    misses stay apart.

    Args:
        universe: The universe
        budget: Search limits

    Returns:
        The partition of every universe state
    """
    budget = budget or Budget(pairs=max(Budget().pairs, len(universe) ** 2))
    candidates = candidate_pairs(universe, universe.states, budget)
    certificate = greatest_certificate(universe, candidates, budget)
    if not check_certificate(universe, certificate, budget).accepted:
        logger.warning('Greatest certificate was not accepted, keeping every state apart')
        return StatePartition.from_pairs(universe.states, ())

    pairs = [
        (left.support[0], right.support[0]) for left, right in certificate.pairs if left.is_dirac and right.is_dirac
    ]
    partition = StatePartition.from_pairs(universe.states, pairs)
    logger.info('Branching partition: %d blocks over %d states', len(partition), len(universe))
    return partition


def separated(universe: Universe, partition: StatePartition, states: Iterable[NTerm]) -> bool:
    """Whether every two blocks holding the states are refuted apart

    Blocks only merge on accepted pairs, so when this holds the partition is exactly branching bisimilarity on
    those blocks and class vectors over them are authoritative both ways.
    """
    blocks = sorted({partition.block_of(state) for state in states})
    representatives = [partition.blocks[index][0] for index in blocks]
    return all(
        refute(universe, dirac(first), dirac(second)) is not None
        for first, second in combinations(representatives, 2)
    )


def stable_equiv(
    universe: Universe,
    left: Distribution,
    right: Distribution,
    partition: StatePartition | None = None,
    budget: Budget | None = None,
) -> bool:
    """Compares stable distributions by their class vectors

    Args:
        universe: The universe holding both supports
        left: σ1
        right: σ2
        partition: A branching partition of the universe
        budget: Search limits when the partition is computed here

    Raises:
        StabilityError: When a distribution is not known to be stable

    Returns:
        Whether σ1[C] = σ2[C] for every block C
    """
    universe.require_support(left, right)
    for distribution in (left, right):
        if not tau_free(universe, distribution) and stability_proof(universe, distribution) is None:
            raise StabilityError(f'{distribution} is not known to be stable')
    if partition is None:
        partition = branching_partition(universe, budget)
    return class_vector(left, partition) == class_vector(right, partition)

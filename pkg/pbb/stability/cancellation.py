"""Cancellation: from μ ⊕r ν ≈ μ' ⊕r ν' and ν ≈ ν' to μ ≈ μ'

Both mixtures are stabilized and each stable form is split into its μ- and ν-components. The ν-components are
stable and related, so their class vectors agree and subtracting them leaves the class vectors of the
μ-components. Equal vectors relate the stable μ-components and feed the search for the conclusion; different
vectors over a partition that is exact on the touched blocks refute it.
"""

import logging
from fractions import Fraction

from pbb.core.schema import Budget
from pbb.distr.distribution import Distribution, binary_mix
from pbb.equiv.certificate import Pair
from pbb.equiv.partition import ClassVector, StatePartition
from pbb.equiv.schema import Status, Verdict
from pbb.equiv.search import search_branching
from pbb.semantics.composition import decompose_transition
from pbb.semantics.universe import Universe
from pbb.stability.classes import branching_partition, class_vector, separated
from pbb.stability.schema import Cancellation
from pbb.stability.stabilizer import stabilize
from pbb.utility.utility import require_probability

logger = logging.getLogger('pbb.stability')


def _component_vector(mixed: ClassVector, other: ClassVector, ratio: Fraction) -> tuple[Fraction, ...]:
    """(σ[C] − (1 − r)·ν̄[C]) / r per block"""
    return tuple((whole - (1 - ratio) * part) / ratio for whole, part in zip(mixed.entries, other.entries, strict=True))


def _reason(verdict: Verdict) -> str:
    if verdict.accepted:
        return ''
    return f'no certificate for the conclusion: {verdict.note or verdict.status}'


def block_pairs(partition: StatePartition, left: Distribution, right: Distribution) -> tuple[Pair, ...]:
    """The restrictions of two distributions to each block both put mass on, renormalized

    Stable distributions with equal class vectors are related block by block, so these pairs seed a certificate.
    """
    pairs: list[Pair] = []
    for block in partition.blocks:
        restricted = [{state: side[state] for state in block if side[state]} for side in (left, right)]
        masses = [sum(measure.values(), Fraction(0)) for measure in restricted]
        if all(masses):
            first, second = (
                Distribution.from_measure({state: mass / total for state, mass in measure.items()})
                for measure, total in zip(restricted, masses, strict=True)
            )
            pairs.append((first, second))
    return tuple(pairs)


def cancel_check(
    universe: Universe,
    left: tuple[Distribution, Distribution],
    right: tuple[Distribution, Distribution],
    ratio: Fraction,
    budget: Budget | None = None,
) -> Cancellation:
    """Derives μ ≈ μ' from μ ⊕r ν ≈ μ' ⊕r ν' and ν ≈ ν'

    Args:
        universe: The universe holding every support
        left: μ and μ'
        right: ν and ν'
        ratio: r in (0, 1]
        budget: Search limits

    Raises:
        ValueError: When r lies outside (0, 1]

    Returns:
        Accepted with a checked certificate for μ ≈ μ', rejected when the class vectors of the stable
        μ-components differ over an exact partition, or inconclusive naming the step that did not go through
    """
    ratio = require_probability(ratio, 'cancellation', positive=True)
    budget = budget or Budget()
    (first, second), (rest, rest_prime) = left, right
    universe.require_support(first, second, rest, rest_prime)

    if ratio == 1 or first == second:
        verdict = search_branching(universe, first, second, budget)
        return Cancellation(verdict.status, ratio, _reason(verdict), verdict)

    mixtures = (binary_mix(ratio, first, rest), binary_mix(ratio, second, rest_prime))
    for name, premise in (('mixtures', mixtures), ('remainders', (rest, rest_prime))):
        verdict = search_branching(universe, *premise, budget)
        if not verdict.accepted:
            logger.info('Premise on the %s is %s', name, verdict.status)
            return Cancellation(Status.INCONCLUSIVE, ratio, f'premise on the {name} is {verdict.status}', verdict)

    stabilizations = tuple(stabilize(universe, mixture, budget) for mixture in mixtures)
    if not all(item.stable for item in stabilizations):
        return Cancellation(
            Status.INCONCLUSIVE, ratio, 'a mixture could not be stabilized', stabilizations=stabilizations
        )

    components = [
        decompose_transition(universe, [(ratio, part), (1 - ratio, remainder)], item.schedule)
        for item, (part, remainder) in zip(stabilizations, ((first, rest), (second, rest_prime)), strict=True)
    ]
    part, remainder = (witness.target for witness in components[0])
    part_prime, remainder_prime = (witness.target for witness in components[1])
    links = ((remainder, remainder_prime), (first, part), (second, part_prime))
    if not all(search_branching(universe, *link, budget).accepted for link in links):
        return Cancellation(
            Status.INCONCLUSIVE,
            ratio,
            'the stable components are not known to be related to their sources',
            stabilizations=stabilizations,
        )

    partition = branching_partition(universe, budget)
    vectors = {
        'mixture': class_vector(stabilizations[0].target, partition),
        'mixture-prime': class_vector(stabilizations[1].target, partition),
        'remainder': class_vector(remainder, partition),
        'remainder-prime': class_vector(remainder_prime, partition),
    }
    vectors['part'] = ClassVector(_component_vector(vectors['mixture'], vectors['remainder'], ratio))
    vectors['part-prime'] = ClassVector(_component_vector(vectors['mixture-prime'], vectors['remainder-prime'], ratio))

    if vectors['part'] != vectors['part-prime']:
        touched = {*part, *part_prime}
        if separated(universe, partition, touched):
            logger.info('Class vectors of the stable parts differ over an exact partition')
            return Cancellation(
                Status.REJECTED,
                ratio,
                'class vectors of the stable μ-components differ',
                partition=partition,
                vectors=vectors,
                stabilizations=stabilizations,
            )
        return Cancellation(
            Status.INCONCLUSIVE,
            ratio,
            'class vectors of the stable μ-components differ over a partition that may be too fine',
            partition=partition,
            vectors=vectors,
            stabilizations=stabilizations,
        )

    hints: tuple[Pair, ...] = (
        (first, part),
        (second, part_prime),
        (part, part_prime),
        *block_pairs(partition, part, part_prime),
    )
    verdict = search_branching(universe, first, second, budget, hints)
    return Cancellation(verdict.status, ratio, _reason(verdict), verdict, partition, vectors, stabilizations)

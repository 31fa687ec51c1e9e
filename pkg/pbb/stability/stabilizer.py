"""Stability detection and weight-descending stabilization

Unfoldings are explored by firing all the mass of one support state over one of its τ-targets. Such a firing
strictly lowers the weight, so the best-first search by weight terminates even without the node limit.

A distribution is reported stable without search when it has no τ or when, for some visible action, no unfolding
can weakly regain the mass it puts on states able to do that action.
"""

import heapq
import logging
from collections.abc import Iterator
from fractions import Fraction
from itertools import count

from pbb.core.schema import Budget
from pbb.distr.distribution import Distribution
from pbb.equiv.certificate import Certificate
from pbb.equiv.checker import check_certificate
from pbb.equiv.refute import Profile, state_profiles, tau_free
from pbb.equiv.schema import Verdict
from pbb.equiv.search import search_branching
from pbb.semantics.feasibility import LinearSystem, as_expr, constant, total
from pbb.semantics.schema import Instruction, Step, Witness, WitnessKind
from pbb.semantics.universe import Universe
from pbb.semantics.weak import ReachEncoding
from pbb.stability.schema import Stability, Stabilization, StabilityVerdict
from pbb.stability.weight import weight
from pbb.terms.ast import TAU, Action, NTerm

logger = logging.getLogger('pbb.stability')


def full_firings(universe: Universe, distribution: Distribution) -> Iterator[Witness]:
    """Partial τ-steps in which one support state fires all its mass over one τ-target

    Heavier states come first, then transition order.

    Args:
        universe: The universe holding the support
        distribution: The source

    Yields:
        One-step witnesses of kind partial
    """
    for state, mass in sorted(distribution.entries, key=lambda entry: -entry[1]):
        for target in universe.successors(state, TAU):
            instructions = tuple(
                Instruction(other, Fraction(0), ((target, mass),)) if other == state else Instruction(other, share, ())
                for other, share in distribution.entries
            )
            step = Step(TAU, True, instructions)
            yield Witness(WitnessKind.PARTIAL, distribution, step.target, (step,))


def _keeps_mass(
    universe: Universe, distribution: Distribution, action: Action, profiles: dict[NTerm, Profile]
) -> bool:
    """Whether some unfolding that fires positive mass can weakly regain μ's mass on α-profile states"""
    expected = sum((mass for state, mass in distribution.entries if action in profiles[state]), Fraction(0))
    system = LinearSystem(f'keep {action}-mass of {distribution}')
    reach = ReachEncoding(system, universe, distribution)
    regained = total(as_expr(mass) for state, mass in reach.final.items() if action in profiles[state])
    system.require(reach.layers[0].fired > 0, regained >= constant(expected))
    return system.solve() is not None


def stability_proof(universe: Universe, distribution: Distribution) -> str | None:
    """Looks for a visible action whose weak mass every unfolding loses

    A distribution equivalent to μ weakly reaches, for every α, at least the mass μ puts on states with α in their
    action profile. When each unfolding that fires positive mass falls short of that for one fixed α, μ is stable.

    Args:
        universe: The universe holding the support
        distribution: μ, with some τ in its support

    Returns:
        The reason μ is stable, or None when no single action separates it from all its unfoldings
    """
    profiles = state_profiles(universe)
    for action in universe.visible:
        if not any(action in profiles[state] for state in distribution):
            continue
        if not _keeps_mass(universe, distribution, action, profiles):
            return f'every unfolding loses {action}-mass'
    return None


def is_stable(universe: Universe, distribution: Distribution, budget: Budget | None = None) -> StabilityVerdict:
    """Decides stability where it can

    Args:
        universe: The universe holding the support
        distribution: μ
        budget: Search limits for the equivalence checks

    Returns:
        Stable when no support state can do τ or every unfolding is refuted, unstable with an equivalent
        firing when one is found, inconclusive otherwise
    """
    universe.require_support(distribution)
    if tau_free(universe, distribution):
        return StabilityVerdict(distribution, Stability.STABLE, reason='no support state can do τ')
    if (reason := stability_proof(universe, distribution)) is not None:
        logger.info('%s is stable: %s', distribution, reason)
        return StabilityVerdict(distribution, Stability.STABLE, reason=reason)

    for firing in full_firings(universe, distribution):
        verdict = search_branching(universe, distribution, firing.target, budget)
        if verdict.accepted:
            logger.info('%s is unstable: it fires to %s', distribution, firing.target)
            return StabilityVerdict(distribution, Stability.UNSTABLE, firing, verdict)
    return StabilityVerdict(distribution, Stability.INCONCLUSIVE)


def stabilize(universe: Universe, distribution: Distribution, budget: Budget | None = None) -> Stabilization:
    """Finds a stable σ with μ ⇒ σ and σ ≈ μ

    Args:
        universe: The universe holding the support
        distribution: μ
        budget: `nodes` limits the explored distributions, the rest bounds the equivalence searches

    Returns:
        The lightest equivalent unfolding found, stable when it has no τ or every full firing is refuted;
        inconclusive with the best distribution so far otherwise
    """
    budget = budget or Budget()
    universe.require_support(distribution)
    order = count()
    found: dict[Distribution, tuple[tuple[Step, ...], Verdict]] = {
        distribution: ((), check_certificate(universe, Certificate.diagonal(), budget))
    }
    refused: set[Distribution] = set()
    frontier = [(weight(distribution), next(order), distribution)]
    explored = 0

    def result(target: Distribution, status: Stability) -> Stabilization:
        steps, verdict = found[target]
        schedule = Witness(WitnessKind.WEAK, distribution, target, steps)
        return Stabilization(distribution, target, status, schedule, verdict, explored)

    while frontier and explored < budget.nodes:
        _, _, current = heapq.heappop(frontier)
        explored += 1
        if tau_free(universe, current) or stability_proof(universe, current) is not None:
            logger.info('Stabilized %s to %s after %d nodes', distribution, current, explored)
            return result(current, Stability.STABLE)

        for firing in full_firings(universe, current):
            target = firing.target
            if target in found or target in refused:
                continue
            verdict = search_branching(universe, distribution, target, budget)
            if not verdict.accepted:
                refused.add(target)
                continue
            found[target] = (found[current][0] + firing.steps, verdict)
            heapq.heappush(frontier, (weight(target), next(order), target))

    best = min(found, key=weight)
    logger.warning('No stable distribution equivalent to %s found, best so far %s', distribution, best)
    return result(best, Stability.INCONCLUSIVE)

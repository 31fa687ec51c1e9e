"""Authoritative negatives for branching probabilistic bisimilarity

The action profile of a state is the set of visible actions it can weakly reach a fully enabled distribution for.
Profiles are invariant under ≈. Each Dirac part of a weak decomposition therefore lands on states whose profiles
contain its own, and a distribution whose support cannot do τ must be matched, mass for mass, on the states of
each profile.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from pbb.distr.distribution import Distribution
from pbb.semantics.feasibility import Expr, LinearSystem, as_expr, constant, total
from pbb.semantics.universe import Universe
from pbb.semantics.weak import ReachEncoding
from pbb.terms.ast import TAU, Action, NTerm, complexity

logger = logging.getLogger('pbb.equiv')

type Profile = frozenset[Action]


def state_profiles(universe: Universe) -> dict[NTerm, Profile]:
    """The action profile of every state

    α belongs to the profile of E when E can do α, or some τ-target of E lies entirely on states whose profile
    contains α.
    """
    profiles: dict[NTerm, Profile] = {}
    # targets have lower complexity, so they are settled first
    for state in sorted(universe.states, key=complexity):
        enabled = {action for action in universe.actions(state) if not action.silent}
        for target in universe.successors(state, TAU):
            enabled |= frozenset.intersection(*(profiles[item] for item in target))
        profiles[state] = frozenset(enabled)
    return profiles


def profile(universe: Universe, distribution: Distribution, profiles: dict[NTerm, Profile] | None = None) -> Profile:
    """The actions every support state can weakly reach, the intersection of the state profiles"""
    profiles = state_profiles(universe) if profiles is None else profiles
    return frozenset.intersection(*(profiles[state] for state in distribution))


def tau_free(universe: Universe, distribution: Distribution) -> bool:
    """Whether no support state has a τ-transition"""
    return all(not universe.successors(state, TAU) for state in distribution)


@dataclass(frozen=True, slots=True)
class Refutation:
    """Evidence that two distributions are not branching bisimilar

    `decomposition` marks evidence that the weak decomposability of `left` against `right` fails in any relation.
    """

    left: Distribution
    right: Distribution
    reason: str
    system: str | None = None
    decomposition: bool = False

    def __str__(self) -> str:
        """Readable form"""
        return f'({self.left}, {self.right}) are not branching bisimilar: {self.reason}'


def _format_profile(actions: Profile) -> str:
    return '{' + ', '.join(sorted(action.name for action in actions)) + '}'


def _mass_mismatch(
    universe: Universe,
    stable: Distribution,
    other: Distribution,
    profiles: dict[NTerm, Profile],
) -> Refutation | None:
    classes: dict[Profile, list[NTerm]] = {}
    for state in universe.states:
        classes.setdefault(profiles[state], []).append(state)

    system = LinearSystem('refute')
    reach = ReachEncoding(system, universe, other)
    for states in classes.values():
        expected = sum((stable[state] for state in states), Fraction(0))
        reached = total(as_expr(reach.final[state]) for state in states if state in reach.final)
        system.require(reached == constant(expected))
    if system.solve() is not None:
        return None
    return Refutation(
        stable,
        other,
        f'{other} cannot weakly reach the profile masses of the τ-free {stable}',
        system.describe(),
    )


def _split_mismatch(
    universe: Universe,
    left: Distribution,
    right: Distribution,
    profiles: dict[NTerm, Profile],
) -> Refutation | None:
    """Weak decomposability fails in any certificate

    A part ν_E ≈ δE has the profile of E, so every state of ν_E has a profile containing it.
    """
    system = LinearSystem('split')
    reach = ReachEncoding(system, universe, right)
    shares: dict[NTerm, list[Expr]] = {}
    for state, mass in left.entries:
        usable = [term for term in reach.final if profiles[state] <= profiles[term]]
        parts = [system.variable('part') for _ in usable]
        system.require(total(parts) == constant(mass))
        for term, part in zip(usable, parts, strict=True):
            shares.setdefault(term, []).append(part)
    for term, reached in reach.final.items():
        system.require(total(shares.get(term, [])) == as_expr(reached))
    if system.solve() is not None:
        return None
    return Refutation(
        left,
        right,
        f'{right} cannot weakly reach a split keeping the action profiles of {left}',
        system.describe(),
        decomposition=True,
    )


def refute(universe: Universe, left: Distribution, right: Distribution) -> Refutation | None:
    """Looks for a proof that μ and ν are not branching bisimilar

    Args:
        universe: The universe holding both supports
        left: μ
        right: ν

    Returns:
        A refutation, or None when no check applies
    """
    universe.require_support(left, right)
    profiles = state_profiles(universe)
    left_profile, right_profile = profile(universe, left, profiles), profile(universe, right, profiles)
    if left_profile != right_profile:
        return Refutation(
            left,
            right,
            f'action profiles differ: {_format_profile(left_profile)} and {_format_profile(right_profile)}',
        )

    for first, second in ((left, right), (right, left)):
        if found := _split_mismatch(universe, first, second, profiles):
            logger.info('Refuted (%s, %s) by decomposition', left, right)
            return found

    for stable, other in ((left, right), (right, left)):
        if tau_free(universe, stable) and (found := _mass_mismatch(universe, stable, other, profiles)):
            logger.info('Refuted (%s, %s)', left, right)
            return found
    return None

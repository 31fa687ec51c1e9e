"""Bounded search for branching bisimulation certificates

Candidate pairs are collected from the query, caller hints, inert τ-steps and Dirac pairs of profile-compatible
states. The greatest subset whose convex closure passes every obligation is kept; the query is found when that
closure relates it. A failed search is inconclusive, never a negative.
"""

import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction

from pbb.core.schema import Budget
from pbb.distr.distribution import Distribution, binary_mix, dirac
from pbb.equiv.certificate import Certificate, Closure, Pair
from pbb.equiv.checker import CertificateChecker, check_certificate
from pbb.equiv.refute import Profile, refute, state_profiles
from pbb.equiv.schema import Clause, Counterexample, Discharge, Status, Verdict
from pbb.semantics.universe import Universe
from pbb.terms.ast import TAU, NTerm
from pbb.utility.exception import CertificateError
from pbb.utility.utility import require_probability

logger = logging.getLogger('pbb.equiv')

FLAGS = (Closure.SYMMETRIC, Closure.DIAGONAL, Closure.CONVEX)

# larger certificates are returned as found
MINIMIZE_LIMIT = 12


def _profile_of(profiles: dict[NTerm, Profile], distribution: Distribution) -> Profile:
    return frozenset.intersection(*(profiles[state] for state in distribution))


def candidate_pairs(
    universe: Universe,
    states: Iterable[NTerm],
    budget: Budget,
    hints: Iterable[Pair] = (),
) -> list[Pair]:
    """Pairs worth trying, in priority order

    Args:
        universe: The universe
        states: States whose reachable part is searched
        budget: Pair and denominator limits
        hints: Pairs tried first

    Returns:
        At most `budget.pairs` distinct non-diagonal pairs with compatible profiles
    """
    profiles = state_profiles(universe)
    reachable = universe.reachable(states)
    found: dict[Pair, None] = {}

    def offer(left: Distribution, right: Distribution) -> None:
        if left == right or max(left.max_denominator, right.max_denominator) > budget.denominator:
            return
        if _profile_of(profiles, left) == _profile_of(profiles, right) and (right, left) not in found:
            found.setdefault((left, right), None)

    for left, right in hints:
        offer(left, right)
    for state in reachable:
        for target in universe.successors(state, TAU):
            offer(dirac(state), target)
    for position, state in enumerate(reachable):
        for other in reachable[position + 1 :]:
            offer(dirac(state), dirac(other))

    pairs = list(found)
    if len(pairs) > budget.pairs:
        logger.info('Keeping %d of %d candidate pairs', budget.pairs, len(pairs))
    return pairs[: budget.pairs]


def _holds(checker: CertificateChecker, pair: Pair) -> bool:
    left, right = pair
    return all(
        isinstance(outcome, Discharge)
        for oriented in ((left, right), (right, left))
        for outcome in checker.obligations(*oriented)
    )


def greatest_certificate(universe: Universe, candidates: Sequence[Pair], budget: Budget | None = None) -> Certificate:
    """The largest subset of candidates whose convex closure is a branching bisimulation

    Pairs failing an obligation are removed until every remaining pair holds.

    Args:
        universe: The universe
        candidates: Pairs to start from
        budget: Weak depth and vertex limits

    Returns:
        A symmetric, diagonal and convex certificate, possibly without pairs
    """
    budget = budget or Budget()
    certificate = Certificate.of(candidates, *FLAGS)
    rounds = 0
    while True:
        rounds += 1
        checker = CertificateChecker(universe, certificate, budget)
        kept = [pair for pair in certificate.pairs if _holds(checker, pair)]
        if len(kept) == len(certificate.pairs):
            logger.info('Greatest certificate: %d pairs after %d rounds', len(kept), rounds)
            return certificate
        certificate = Certificate.of(kept, *FLAGS)


def _minimize(universe: Universe, certificate: Certificate, target: Pair, budget: Budget) -> Certificate:
    """Drops pairs one at a time while the rest still relates the target and is accepted"""
    pairs = list(certificate.pairs)
    if len(pairs) > MINIMIZE_LIMIT:
        return certificate
    for pair in list(pairs):
        if pair == target:
            continue
        smaller = Certificate.of([item for item in pairs if item != pair], *FLAGS)
        if smaller.contains(*target) and check_certificate(universe, smaller, budget).accepted:
            pairs.remove(pair)
    return Certificate.of(pairs, *FLAGS)


def search_branching(
    universe: Universe,
    left: Distribution,
    right: Distribution,
    budget: Budget | None = None,
    hints: Iterable[Pair] = (),
) -> Verdict:
    """Looks for a certificate relating μ and ν

    Args:
        universe: The universe holding both supports
        left: μ
        right: ν
        budget: Search limits
        hints: Pairs tried before the generated candidates

    Returns:
        Accepted with a checked certificate, rejected with an authoritative refutation, or inconclusive
    """
    budget = budget or Budget()
    universe.require_support(left, right)
    if left == right:
        return check_certificate(universe, Certificate.diagonal(), budget)

    if (refutation := refute(universe, left, right)) is not None:
        if refutation.decomposition:
            clause, obligation = Clause.DECOMPOSITION, 'Dirac decomposition'
        else:
            clause, obligation = Clause.REFUTATION, 'branching bisimilarity'
        counterexample = Counterexample(refutation.left, refutation.right, clause, obligation, refutation.reason)
        return Verdict.rejected(counterexample)

    target = (left, right)
    candidates = candidate_pairs(universe, (*left, *right), budget, (target, *hints))
    certificate = greatest_certificate(universe, candidates, budget)
    if not certificate.contains(left, right):
        logger.info('No certificate for (%s, %s) among %d candidates', left, right, len(candidates))
        return Verdict(Status.INCONCLUSIVE, note=f'no certificate within {len(candidates)} candidate pairs')

    certificate = _minimize(universe, certificate, target, budget)
    verdict = check_certificate(universe, certificate, budget)
    if not verdict.accepted:
        return Verdict(Status.INCONCLUSIVE, certificate, verdict.counterexample, note='found certificate not accepted')
    return verdict


def check_congruence(
    universe: Universe,
    lefts: tuple[Distribution, Distribution],
    rights: tuple[Distribution, Distribution],
    ratio: Fraction,
    certificates: tuple[Certificate, Certificate],
    budget: Budget | None = None,
) -> Verdict:
    """Builds and checks a certificate for μ1 ⊕r μ2 ≈ ν1 ⊕r ν2

    Args:
        universe: The universe holding every support
        lefts: μ1 and μ2
        rights: ν1 and ν2
        ratio: r in [0, 1]
        certificates: Certificates relating μ1 with ν1 and μ2 with ν2
        budget: Checking limits

    Raises:
        CertificateError: When an input certificate is not accepted or does not relate its pair
        ValueError: When r lies outside [0, 1]

    Returns:
        The verdict on the union of both certificates under the convex flag
    """
    ratio = require_probability(ratio, 'congruence ratio')
    budget = budget or Budget()
    verdicts = []
    for index, (left, right, certificate) in enumerate(zip(lefts, rights, certificates, strict=True), start=1):
        verdict = check_certificate(universe, certificate, budget)
        if not verdict.accepted:
            raise CertificateError(f'certificate {index} is not accepted: {verdict.counterexample}')
        if not certificate.contains(left, right):
            raise CertificateError(f'certificate {index} does not relate ({left}, {right})')
        verdicts.append(verdict)

    if ratio == 1:
        return verdicts[0]
    if ratio == 0:
        return verdicts[1]

    union = certificates[0].union(certificates[1], Closure.CONVEX)
    mixed = (binary_mix(ratio, *lefts), binary_mix(ratio, *rights))
    if not union.contains(*mixed):
        counterexample = Counterexample(*mixed, Clause.MEMBERSHIP, 'convex union', 'the mixture is not related')
        return Verdict.rejected(counterexample, union)
    return check_certificate(universe, union, budget)


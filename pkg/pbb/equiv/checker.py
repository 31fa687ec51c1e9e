"""Checking certificates against the branching bisimulation clauses

Every oriented generator (μ, ν) must satisfy weak decomposability and transfer. Decomposability is checked for the
decomposition of μ into its Dirac points; transfer for every vertex transition of μ. Convex certificates are
checked exactly with one linear system per obligation. Other certificates are matched by enumerating their
pairs, which only handles Dirac left sides.
"""

import logging
from collections.abc import Iterator
from itertools import product
from math import prod

from pbb.core.schema import Budget
from pbb.distr.distribution import Distribution, dirac, mix
from pbb.equiv.certificate import Certificate, ClosureEncoding
from pbb.equiv.schema import Clause, Counterexample, Discharge, Status, Verdict
from pbb.semantics.feasibility import Expr, LinearSystem, accumulate_symbolic
from pbb.semantics.schema import Refusal, Witness, WitnessKind
from pbb.semantics.step import StepEncoding, distribution_step, partial_tau_step, replay
from pbb.semantics.universe import Universe
from pbb.semantics.weak import ReachEncoding, weak_reach
from pbb.terms.ast import Action, NTerm, format_term
from pbb.utility.exception import CertificateError, SemanticsError

logger = logging.getLogger('pbb.equiv')

type Outcome = Discharge | Counterexample


class CertificateChecker:
    """Discharges the obligations of one certificate"""

    def __init__(self, universe: Universe, certificate: Certificate, budget: Budget, strict: bool = False) -> None:
        """Initializes the checker

        Args:
            universe: The universe holding every pair
            certificate: The certificate to check
            budget: Weak depth and vertex limits
            strict: Require ν̄ = ν in weak decomposability

        Raises:
            CertificateError: When a pair mentions a state outside the universe
        """
        self.universe = universe
        self.certificate = certificate
        self.budget = budget
        self.strict = strict
        for left, right in certificate.pairs:
            try:
                universe.require_support(left, right)
            except SemanticsError as error:
                raise CertificateError(f'pair ({left}, {right}): {error.error}') from error
        # refusals under a depth cap shorter than the universe height only hold for the capped schedules
        self.capped = budget.depth is not None and budget.depth < universe.height

    def check(self) -> Verdict:
        """Checks every obligation, stopping at the first failure"""
        evidence: list[Discharge] = []
        for outcome in self.outcomes():
            if isinstance(outcome, Counterexample):
                logger.info('Certificate refused: %s', outcome)
                return Verdict.rejected(outcome, self.certificate)
            evidence.append(outcome)

        if not all(replay(self.universe, witness) for discharge in evidence for witness in discharge.witnesses):
            logger.error('Evidence of an accepted certificate failed to replay')
            return Verdict(Status.INCONCLUSIVE, self.certificate, evidence=tuple(evidence), note='evidence replay')
        logger.info('Certificate accepted with %d discharged obligations', len(evidence))
        return Verdict(Status.ACCEPTED, self.certificate, evidence=tuple(evidence))

    def outcomes(self) -> Iterator[Outcome]:
        """Symmetry, then decomposability and transfer per oriented generator"""
        if not self.certificate.symmetric:
            for left, right in self.certificate.pairs:
                if not self.certificate.contains(right, left):
                    yield Counterexample(left, right, Clause.SYMMETRY, 'mirror', 'the mirrored pair is not related')
                    return

        for left, right in self.certificate.generators():
            for outcome in self.obligations(left, right):
                yield outcome
                if isinstance(outcome, Counterexample):
                    return

    def obligations(self, left: Distribution, right: Distribution) -> Iterator[Outcome]:
        """Decomposability and transfer for one oriented generator, stopping at the first failure"""
        logger.debug('Checking generator (%s, %s)', left, right)
        outcome = self.decomposition(left, right)
        yield outcome
        if isinstance(outcome, Counterexample):
            return
        for action in self.universe.alphabet:
            for outcome in self.transfer(left, right, action):
                yield outcome
                if isinstance(outcome, Counterexample):
                    return

    def _failure(
        self, left: Distribution, right: Distribution, clause: Clause, obligation: str, reason: str
    ) -> Outcome:
        return Counterexample(left, right, clause, obligation, reason, discipline=self.capped)

    def _explicit_decomposition(self, left: Distribution, right: Distribution, obligation: str) -> Outcome:
        """Decomposability when each part must be an explicit partner of its Dirac point"""
        partners = [self.certificate.rights_of(dirac(state)) for state in left]
        if (choices := prod(len(found) for found in partners)) > self.budget.vertices:
            return Counterexample(
                left, right, Clause.DECOMPOSITION, obligation, f'{choices} partner choices exceed the budget', True
            )
        depth = 0 if self.strict else self.budget.depth
        for choice in product(*partners):
            split = mix([(left[state], part) for state, part in zip(left, choice, strict=True)])
            if isinstance(reached := weak_reach(self.universe, right, split, depth), Witness):
                return Discharge(left, right, Clause.DECOMPOSITION, obligation, (reached,))
        return self._failure(
            left, right, Clause.DECOMPOSITION, obligation, f'{right} cannot weakly reach a split over explicit partners'
        )

    def decomposition(self, left: Distribution, right: Distribution) -> Outcome:
        """Weak decomposability of μ into its Dirac points

        Finds ν ⇒ ν̄ and a split ν̄ = Σ_E μ(E)·ν_E with every (δE, ν_E) related.
        """
        obligation = 'Dirac decomposition'
        if left.is_dirac and not self.strict:
            return Discharge(left, right, Clause.DECOMPOSITION, obligation, ())
        if not self.certificate.convex:
            if left.is_dirac:
                return Discharge(left, right, Clause.DECOMPOSITION, obligation, ())
            return self._explicit_decomposition(left, right, obligation)

        system = LinearSystem('decompose')
        reach = ReachEncoding(system, self.universe, right, 0 if self.strict else self.budget.depth)
        parts: dict[NTerm, dict[NTerm, Expr]] = {
            state: {term: system.variable('part') for term in reach.final} for state in left
        }
        system.equal_measures(reach.final, accumulate_symbolic(parts.values()))
        for state, part in parts.items():
            ClosureEncoding(system, self.certificate, {state: left[state]}, part, mass=left[state])
        if (solution := system.solve()) is None:
            return self._failure(
                left, right, Clause.DECOMPOSITION, obligation, f'{right} cannot weakly reach a matching split'
            )
        return Discharge(left, right, Clause.DECOMPOSITION, obligation, (reach.extract(solution),))

    def transfer(self, left: Distribution, right: Distribution, action: Action) -> Iterator[Outcome]:
        """Matches every vertex α-transition of μ

        Args:
            left: μ
            right: ν
            action: α

        Yields:
            One outcome per distinct vertex successor, or per action for joint matches
        """
        steps = distribution_step(self.universe, left, action)
        if steps.empty:
            return
        if steps.vertex_count > self.budget.vertices:
            yield Counterexample(
                left,
                right,
                Clause.TRANSFER,
                f'{action}-transitions',
                f'{steps.vertex_count} vertex transitions exceed the limit of {self.budget.vertices}',
                True,
            )
            return

        successors = list(steps.vertices())
        if self.certificate.convex:
            for successor in successors:
                yield self._convex_match(left, right, action, successor)
        elif len(successors) == 1:
            yield self._enumerated_match(left, right, action, successors[0])
        else:
            yield self._joint_match(left, right, action, successors)

    def _convex_match(
        self, left: Distribution, right: Distribution, action: Action, successor: Distribution
    ) -> Outcome:
        obligation = f'{left} --{action}--> {successor}'
        system = LinearSystem('transfer')
        reach = ReachEncoding(system, self.universe, right, self.budget.depth)
        step = StepEncoding(system, self.universe, reach.final, action, partial=action.silent)
        ClosureEncoding(system, self.certificate, left.measure(), reach.final)
        ClosureEncoding(system, self.certificate, successor.measure(), step.target)
        if (solution := system.solve()) is None:
            return self._failure(left, right, Clause.TRANSFER, obligation, f'{right} has no matching transition')

        reached = reach.extract(solution)
        final = step.extract(solution)
        kind = WitnessKind.PARTIAL if action.silent else WitnessKind.STEP
        matched = Witness(kind, reached.target, final.target, (final,))
        return Discharge(left, right, Clause.TRANSFER, obligation, (reached, matched))

    def _final_step(self, middle: Distribution, action: Action, target: Distribution) -> Witness | Refusal:
        if action.silent:
            return partial_tau_step(self.universe, middle, target)
        return distribution_step(self.universe, middle, action).witness(target)

    def _enumerated_match(
        self, left: Distribution, right: Distribution, action: Action, successor: Distribution
    ) -> Outcome:
        obligation = f'{left} --{action}--> {successor}'
        for middle in self.certificate.rights_of(left):
            reached = weak_reach(self.universe, right, middle, self.budget.depth)
            if isinstance(reached, Refusal):
                continue
            for target in self.certificate.rights_of(successor):
                final = self._final_step(middle, action, target)
                if isinstance(final, Witness):
                    return Discharge(left, right, Clause.TRANSFER, obligation, (reached, final))
        return self._failure(left, right, Clause.TRANSFER, obligation, f'no related transition of {right}')

    def _joint_match(
        self, left: Distribution, right: Distribution, action: Action, successors: list[Distribution]
    ) -> Outcome:
        """One ν̄ reaching every vertex exactly, so that combined transitions are matched on the diagonal"""
        state = format_term(left.support[0])
        obligation = f'combined {action}-transitions of {state}'
        if not self.certificate.reflexive:
            return Counterexample(
                left, right, Clause.TRANSFER, obligation, 'combined transitions need the diagonal or convex flag', True
            )
        for middle in self.certificate.rights_of(left):
            reached = weak_reach(self.universe, right, middle, self.budget.depth)
            if isinstance(reached, Refusal):
                continue
            finals = [self._final_step(middle, action, successor) for successor in successors]
            matched = [final for final in finals if isinstance(final, Witness)]
            if len(matched) == len(finals):
                return Discharge(left, right, Clause.TRANSFER, obligation, (reached, *matched))
        return Counterexample(
            left, right, Clause.TRANSFER, obligation, f'no single related middle of {right} matches every vertex', True
        )


def check_certificate(
    universe: Universe, certificate: Certificate, budget: Budget | None = None, strict: bool = False
) -> Verdict:
    """Checks that the closure of a certificate is a branching probabilistic bisimulation

    Args:
        universe: The universe holding every pair
        certificate: The certificate
        budget: Weak depth and vertex limits
        strict: Plain decomposability, ν̄ = ν

    Raises:
        CertificateError: When a pair mentions a state outside the universe

    Returns:
        Accepted with replayable evidence, rejected with the first failing obligation, or inconclusive when the
        failure only holds under the checking discipline
    """
    return CertificateChecker(universe, certificate, budget or Budget(), strict).check()


def weak_transfer(
    universe: Universe,
    certificate: Certificate,
    left: Distribution,
    right: Distribution,
    witness: Witness,
    depth: int | None = None,
) -> Witness | None:
    """Matches a weak transition of μ from a related ν

    Args:
        universe: The universe
        certificate: An accepted certificate relating μ and ν
        left: μ
        right: ν
        witness: A replayable witness of μ ⇒ μ'
        depth: Maximal length of the matching chain

    Raises:
        CertificateError: When μ and ν are not related
        SemanticsError: When the witness does not start at μ or does not replay

    Returns:
        A witness of ν ⇒ ν' with (μ', ν') related, or None when none was found
    """
    if not certificate.contains(left, right):
        raise CertificateError(f'({left}, {right}) is not related by the certificate')
    if witness.kind is not WitnessKind.WEAK or witness.source != left or not replay(universe, witness):
        raise SemanticsError(f'not a weak transition witness from {left}')

    target = witness.target
    if certificate.convex:
        system = LinearSystem('weak-transfer')
        reach = ReachEncoding(system, universe, right, depth)
        ClosureEncoding(system, certificate, target.measure(), reach.final)
        if (solution := system.solve()) is None:
            return None
        return reach.extract(solution)

    for candidate in certificate.rights_of(target):
        found = weak_reach(universe, right, candidate, depth)
        if isinstance(found, Witness):
            return found
    return None


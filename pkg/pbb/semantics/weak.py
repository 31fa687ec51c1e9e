"""Weak transitions μ ⇒ ν as layered feasibility systems

Each layer is a partial τ-step in which every reachable state may keep part of its mass and fire the rest over
its τ-targets. τ-paths are acyclic (complexity strictly drops), so every chain can be rescheduled to fire each
particle's k-th transition in layer k, and as many layers as the longest τ-path from the support suffice.
"""

import logging
from collections.abc import Mapping
from fractions import Fraction

from pbb.distr.distribution import Distribution
from pbb.semantics.feasibility import Expr, LinearSystem, Solution
from pbb.semantics.schema import Match, Refusal, Step, Witness, WitnessKind
from pbb.semantics.step import StepEncoding
from pbb.semantics.universe import Universe
from pbb.terms.ast import TAU, Action, NTerm
from pbb.utility.exception import SemanticsError

logger = logging.getLogger('pbb.semantics')


def layer_count(universe: Universe, source: Distribution, depth: int | None) -> int:
    """The number of layers needed to cover ⇒_depth from a source

    Args:
        universe: The universe holding the support
        source: The starting distribution
        depth: Maximal chain length, None for unbounded

    Raises:
        SemanticsError: When depth exceeds the universe bound N

    Returns:
        min(depth, longest τ-path from the support)
    """
    if depth is not None and depth > universe.bound:
        raise SemanticsError(f'weak depth {depth} exceeds the universe bound {universe.bound}')
    if depth is not None and depth < 0:
        raise SemanticsError(f'weak depth {depth} is negative')
    height = max((universe.tau_height[state] for state in source), default=0)
    return height if depth is None else min(depth, height)


class ReachEncoding:
    """Linear encoding of source ⇒ final with a symbolic final measure"""

    def __init__(
        self, system: LinearSystem, universe: Universe, source: Distribution, depth: int | None = None
    ) -> None:
        """Adds the layers to a system

        Args:
            system: The system to extend
            universe: The universe holding the support
            source: The starting distribution
            depth: Maximal chain length, None for unbounded
        """
        universe.require_support(source)
        self.source = source
        self.layers: list[StepEncoding] = []
        current: Mapping[NTerm, Expr | Fraction] = source.measure()
        for _ in range(layer_count(universe, source, depth)):
            layer = StepEncoding(system, universe, current, TAU, partial=True)
            self.layers.append(layer)
            current = layer.target
        self.final: dict[NTerm, Expr | Fraction] = dict(current)

    def extract(self, solution: Solution) -> Witness:
        """Reads the chain back from a solution, dropping layers in which nothing fires"""
        steps: list[Step] = [step for layer in self.layers if not (step := layer.extract(solution)).idle]
        target = Distribution.from_measure(_evaluate(solution, self.final))
        return Witness(WitnessKind.WEAK, self.source, target, tuple(steps))


def _evaluate(solution: Solution, measure: Mapping[NTerm, Expr | Fraction]) -> dict[NTerm, Fraction]:
    return {term: amount for term, value in measure.items() if (amount := _value(solution, value)) != 0}


def _value(solution: Solution, value: Expr | Fraction) -> Fraction:
    return value if isinstance(value, Fraction) else solution.value(value)


def weak_reach(
    universe: Universe, source: Distribution, target: Distribution, depth: int | None = None
) -> Witness | Refusal:
    """Decides μ ⇒_depth ν

    Args:
        universe: The universe holding the supports
        source: μ
        target: ν
        depth: Maximal chain length, at most N(u); None for unbounded

    Raises:
        SemanticsError: When depth exceeds N(u)

    Returns:
        A chain witness without idle steps, or a refusal meaning no schedule was found
    """
    universe.require_support(source, target)
    query = f'{source} ==> {target}'
    if source == target:
        layer_count(universe, source, depth)
        return Witness(WitnessKind.WEAK, source, target, ())

    system = LinearSystem('reach')
    reach = ReachEncoding(system, universe, source, depth)
    system.equal_measures(reach.final, target.measure())
    if (solution := system.solve()) is None:
        return Refusal(query, 'not found within the schedule family', system.describe())
    witness = reach.extract(solution)
    logger.debug('Found %s in %d steps', query, witness.length)
    return witness


def weak_step(
    universe: Universe, source: Distribution, action: Action, target: Distribution, depth: int | None = None
) -> Match | Refusal:
    """Decides μ ⇒ μ̄ --(α)--> ν in one system

    For a visible action the final step is a full α-step, for τ a partial one.

    Args:
        universe: The universe holding the supports
        source: μ
        action: α
        target: ν
        depth: Maximal length of the weak part

    Returns:
        The weak part and the final step, or a refusal
    """
    universe.require_support(source, target)
    query = f'{source} ==> --({action})--> {target}'
    system = LinearSystem('weak-step')
    reach = ReachEncoding(system, universe, source, depth)
    final = StepEncoding(system, universe, reach.final, action, partial=action.silent)
    system.equal_measures(final.target, target.measure())
    if (solution := system.solve()) is None:
        return Refusal(query, 'not found within the schedule family', system.describe())

    reached = reach.extract(solution)
    kind = WitnessKind.PARTIAL if action.silent else WitnessKind.STEP
    return Match(reached, Witness(kind, reached.target, target, (final.extract(solution),)))

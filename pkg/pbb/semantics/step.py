"""Combined α-steps and partial τ-steps of distributions"""

import logging
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice, product

from pbb.distr.distribution import Distribution, accumulate
from pbb.semantics.feasibility import Expr, LinearSystem, Solution, accumulate_symbolic, constant, total
from pbb.semantics.schema import Instruction, Refusal, Step, Witness, WitnessKind
from pbb.semantics.universe import AfterSet, Universe, after_set
from pbb.terms.ast import TAU, Action, NTerm, format_term
from pbb.utility.exception import SemanticsError

logger = logging.getLogger('pbb.semantics')


class StepEncoding:
    """Linear encoding of one step from a (possibly symbolic) source measure

    Each source state E splits its mass into a stay variable (partial steps only) and one fire variable per
    distinct α-target of E. The target measure is the resulting linear combination.
    """

    def __init__(
        self,
        system: LinearSystem,
        universe: Universe,
        source: Mapping[NTerm, Expr | Fraction],
        action: Action,
        partial: bool,
    ) -> None:
        """Adds the step's variables and conservation constraints to a system

        Args:
            system: The system to extend
            universe: The universe holding the source states
            source: Mass per state, constant or symbolic
            action: The action of the step
            partial: Whether states may stay
        """
        self.action = action
        self.partial = partial
        self._stay: dict[NTerm, Expr] = {}
        self._fire: dict[NTerm, list[tuple[Distribution, Expr]]] = {}

        parts: list[dict[NTerm, Expr]] = []
        for state, mass in source.items():
            expression = constant(mass) if isinstance(mass, Fraction | int) else mass
            fires = [(target, system.variable('fire')) for target in universe.successors(state, action)]
            self._fire[state] = fires
            used = [variable for _, variable in fires]
            if partial:
                stay = system.variable('stay')
                self._stay[state] = stay
                used.append(stay)
                parts.append({state: stay})
            system.require(total(used) == expression)
            for target, variable in fires:
                parts.append({term: variable * constant(weight) for term, weight in target.entries})

        self.target: dict[NTerm, Expr] = accumulate_symbolic(parts)

    @property
    def states(self) -> tuple[NTerm, ...]:
        """The source states"""
        return tuple(self._fire)

    @property
    def fired(self) -> Expr:
        """The total mass that takes the step"""
        return total(variable for fires in self._fire.values() for _, variable in fires)

    def extract(self, solution: Solution) -> Step:
        """Reads the step back from a solution, dropping states without mass"""
        instructions: list[Instruction] = []
        for state, fires in self._fire.items():
            stay = solution.value(self._stay[state]) if state in self._stay else Fraction(0)
            fired = tuple((target, value) for target, variable in fires if (value := solution.value(variable)))
            if stay or fired:
                instructions.append(Instruction(state, stay, fired))
        return Step(self.action, self.partial, tuple(instructions))


@dataclass(frozen=True)
class StepSet:
    """The successors of μ under α, as a product of per-state after-sets

    μ' is a successor iff μ' = Σ_E μ(E)·η_E with every η_E in the hull of E's after-set.
    """

    universe: Universe
    source: Distribution
    action: Action
    after_sets: tuple[AfterSet, ...]

    @property
    def blocking(self) -> tuple[NTerm, ...]:
        """Support states without an α-transition"""
        return tuple(after.state for after in self.after_sets if after.empty)

    @property
    def empty(self) -> bool:
        """Whether there is no successor at all"""
        return bool(self.blocking)

    @property
    def vertex_count(self) -> int:
        """The number of vertex successors, counted with repetition"""
        result = 1
        for after in self.after_sets:
            result *= len(after.vertices)
        return result

    def vertex_choices(self) -> Iterator[tuple[Distribution, ...]]:
        """Every combination of one vertex per support state, in support order"""
        if self.empty:
            return iter(())
        return product(*(after.vertices for after in self.after_sets))

    def vertices(self, limit: int | None = None) -> Iterator[Distribution]:
        """The distinct vertex successors, each mixing one non-combined transition per support state

        Args:
            limit: Stop after this many combinations

        Yields:
            Distinct successors in enumeration order
        """
        seen: set[Distribution] = set()
        for choice in islice(self.vertex_choices(), limit):
            successor = self.combine(choice)
            if successor not in seen:
                seen.add(successor)
                yield successor

    def combine(self, choice: tuple[Distribution, ...]) -> Distribution:
        """Σ_E μ(E)·η_E for one vertex per support state"""
        pairs = zip(self.after_sets, choice, strict=True)
        return Distribution.from_measure(accumulate((self.source[after.state], vertex) for after, vertex in pairs))

    def vertex_witness(self, choice: tuple[Distribution, ...]) -> Witness:
        """The witness of a vertex successor"""
        instructions = tuple(
            Instruction(after.state, Fraction(0), ((vertex, self.source[after.state]),))
            for after, vertex in zip(self.after_sets, choice, strict=True)
        )
        step = Step(self.action, False, instructions)
        return Witness(WitnessKind.STEP, self.source, self.combine(choice), (step,))

    def witness(self, candidate: Distribution) -> Witness | Refusal:
        """Decides membership exactly

        Args:
            candidate: The claimed successor

        Returns:
            A one-step witness, or a refusal carrying the infeasible system
        """
        query = f'{self.source} --{self.action}--> {candidate}'
        if self.empty:
            blocked = ', '.join(format_term(state) for state in self.blocking)
            return Refusal(query, f'no {self.action}-transition from {blocked}')

        system = LinearSystem('step')
        encoding = StepEncoding(system, self.universe, self.source.measure(), self.action, partial=False)
        system.equal_measures(encoding.target, candidate.measure())
        if (solution := system.solve()) is None:
            return Refusal(query, 'not in the combined successor set', system.describe())
        return Witness(WitnessKind.STEP, self.source, candidate, (encoding.extract(solution),))

    def contains(self, candidate: Distribution) -> bool:
        """Whether the candidate is a successor"""
        return isinstance(self.witness(candidate), Witness)


def distribution_step(universe: Universe, source: Distribution, action: Action, strict: bool = False) -> StepSet:
    """The successor set of μ under α

    Args:
        universe: The universe holding the support
        source: μ
        action: α
        strict: Raise instead of returning an empty set

    Raises:
        SemanticsError: When a support state is unknown, or in strict mode when some support state blocks

    Returns:
        The successor set; empty exactly when some support state has no α-transition
    """
    universe.require_support(source)
    steps = StepSet(universe, source, action, tuple(after_set(universe, state, action) for state in source))
    if steps.empty:
        blocked = ', '.join(format_term(state) for state in steps.blocking)
        if strict:
            raise SemanticsError(f'{source} has no {action}-step: {blocked} cannot do {action}')
        logger.info('%s cannot do %s because of %s', source, action, blocked)
    return steps


def partial_tau_step(universe: Universe, source: Distribution, target: Distribution) -> Witness | Refusal:
    """Decides μ --(τ)--> ν

    One system covers all three cases: everything stays (ν = μ), everything fires (μ --τ--> ν) or a split
    μ = μ1 ⊕r μ2 with μ1 --τ--> μ1' and ν = μ1' ⊕r μ2.

    Args:
        universe: The universe holding the supports
        source: μ
        target: ν

    Returns:
        A one-step witness whose `split()` gives (r, μ1, μ1'), or a refusal carrying the infeasible system
    """
    universe.require_support(source, target)
    query = f'{source} --({TAU})--> {target}'
    if source == target:
        return Witness(WitnessKind.PARTIAL, source, target, (_stay_everywhere(source),))

    system = LinearSystem('partial')
    encoding = StepEncoding(system, universe, source.measure(), TAU, partial=True)
    system.equal_measures(encoding.target, target.measure())
    if (solution := system.solve()) is None:
        return Refusal(query, 'no partial τ-step', system.describe())
    return Witness(WitnessKind.PARTIAL, source, target, (encoding.extract(solution),))


def _stay_everywhere(source: Distribution) -> Step:
    return Step(TAU, True, tuple(Instruction(state, weight, ()) for state, weight in source.entries))


def replay(universe: Universe, witness: Witness) -> bool:
    """Re-validates a witness against the transition table

    Every fire must use a genuine transition of its state with the step's action, masses must be non-negative,
    only partial steps may leave mass in place, and consecutive steps must chain from the witness source to its
    target.

    Args:
        universe: The universe the witness refers to
        witness: The evidence

    Returns:
        Whether the witness is valid
    """
    match witness.kind:
        case WitnessKind.STEP | WitnessKind.PARTIAL if len(witness.steps) != 1:
            return False
        case WitnessKind.STEP if witness.steps[0].partial:
            return False
        case WitnessKind.PARTIAL | WitnessKind.WEAK if any(
            not step.partial or not step.action.silent for step in witness.steps
        ):
            return False

    current = witness.source.measure()
    for step in witness.steps:
        if not _valid_step(universe, step):
            return False
        if _drop_zero(step.source_measure()) != _drop_zero(current):
            return False
        current = step.target_measure()

    return _drop_zero(current) == _drop_zero(witness.target.measure())


def _valid_step(universe: Universe, step: Step) -> bool:
    seen: set[NTerm] = set()
    for instruction in step.instructions:
        if instruction.state not in universe or instruction.state in seen:
            return False
        seen.add(instruction.state)
        if instruction.stay < 0 or (instruction.stay and not step.partial):
            return False
        targets = universe.successors(instruction.state, step.action)
        for target, mass in instruction.fires:
            if mass < 0 or target not in targets:
                return False
    return True


def _drop_zero(measure: Mapping[NTerm, Fraction]) -> dict[NTerm, Fraction]:
    return {term: weight for term, weight in measure.items() if weight}

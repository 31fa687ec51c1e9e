"""Witnesses and refusals for transition queries

A witness records, for every step, how the mass on each support state is used: some of it stays put (partial
τ-steps only) and the rest fires non-combined transitions of that state. Masses are absolute, so a step's
source and target are recovered by plain summation.
"""

from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from pbb.distr.distribution import Distribution, Measure, accumulate, dirac
from pbb.terms.ast import Action, NTerm, format_term
from pbb.utility.utility import format_rational


class WitnessKind(StrEnum):
    """The transition relation a witness establishes"""

    STEP = 'step'
    PARTIAL = 'partial'
    WEAK = 'weak'


@dataclass(frozen=True, slots=True)
class Instruction:
    """What one support state does within a step"""

    state: NTerm
    stay: Fraction
    fires: tuple[tuple[Distribution, Fraction], ...]

    @property
    def fired(self) -> Fraction:
        """The mass that fires"""
        return sum((mass for _, mass in self.fires), Fraction(0))

    @property
    def mass(self) -> Fraction:
        """The mass of the state in the step's source"""
        return self.stay + self.fired

    def __str__(self) -> str:
        """Readable form"""
        parts = [f'stay {format_rational(self.stay)}'] if self.stay else []
        parts.extend(f'fire {format_rational(mass)} -> {target}' for target, mass in self.fires)
        return f'{format_term(self.state)}: ' + ', '.join(parts)


@dataclass(frozen=True, slots=True)
class Step:
    """One (partial) transition of a distribution, as per-state instructions"""

    action: Action
    partial: bool
    instructions: tuple[Instruction, ...]

    def source_measure(self) -> Measure:
        """The mass each state holds before the step"""
        return {instruction.state: instruction.mass for instruction in self.instructions if instruction.mass}

    def target_measure(self) -> Measure:
        """The mass each state holds after the step"""
        parts: list[tuple[Fraction, Distribution]] = []
        for instruction in self.instructions:
            parts.append((instruction.stay, dirac(instruction.state)))
            parts.extend((mass, target) for target, mass in instruction.fires)
        return accumulate(parts)

    @property
    def source(self) -> Distribution:
        """The distribution before the step"""
        return Distribution.from_measure(self.source_measure())

    @property
    def target(self) -> Distribution:
        """The distribution after the step"""
        return Distribution.from_measure(self.target_measure())

    @property
    def fired(self) -> Fraction:
        """The total mass that fires"""
        return sum((instruction.fired for instruction in self.instructions), Fraction(0))

    @property
    def idle(self) -> bool:
        """Whether nothing fires"""
        return self.fired == 0

    def split(self) -> tuple[Fraction, Distribution, Distribution]:
        """The (r, μ1, μ1') presentation of a partial step

        The source is μ1 ⊕r μ2 with μ1 the firing part and μ2 the staying part; the target is μ1' ⊕r μ2.

        Returns:
            r, μ1 and μ1'; (0, μ, μ) when nothing fires
        """
        ratio = self.fired
        if ratio == 0:
            source = self.source
            return Fraction(0), source, source
        firing = {
            instruction.state: instruction.fired / ratio for instruction in self.instructions if instruction.fired
        }
        landed = accumulate(
            (mass / ratio, target) for instruction in self.instructions for target, mass in instruction.fires
        )
        return ratio, Distribution.from_measure(firing), Distribution.from_measure(landed)

    def scaled(self, coefficient: Fraction) -> 'Step':
        """The step with every mass multiplied by a coefficient"""
        return Step(
            self.action,
            self.partial,
            tuple(
                Instruction(
                    instruction.state,
                    instruction.stay * coefficient,
                    tuple((target, mass * coefficient) for target, mass in instruction.fires),
                )
                for instruction in self.instructions
                if coefficient * instruction.mass
            ),
        )


def idle_step(action: Action, measure: Measure) -> Step:
    """A partial step in which every state stays"""
    return Step(action, True, tuple(Instruction(state, mass, ()) for state, mass in measure.items() if mass))


@dataclass(frozen=True, slots=True)
class Witness:
    """Evidence for source --α--> target, source --(τ)--> target or source ==> target"""

    kind: WitnessKind
    source: Distribution
    target: Distribution
    steps: tuple[Step, ...]

    @property
    def length(self) -> int:
        """The number of steps"""
        return len(self.steps)


@dataclass(frozen=True, slots=True)
class Match:
    """Evidence for source ==> middle --(α)--> target"""

    reach: Witness
    step: Witness

    @property
    def source(self) -> Distribution:
        """Where the weak part starts"""
        return self.reach.source

    @property
    def middle(self) -> Distribution:
        """Where the weak part ends and the final step starts"""
        return self.reach.target

    @property
    def target(self) -> Distribution:
        """Where the final step ends"""
        return self.step.target


@dataclass(frozen=True, slots=True)
class Refusal:
    """A failed transition query

    Refusals of weak queries mean nothing was found within the searched schedules, never a semantic negative.
    """

    query: str
    reason: str
    system: str | None = None

    def __str__(self) -> str:
        """The query and the reason"""
        return f'{self.query}: {self.reason}'

"""Seeded random terms, distributions, presentations and schedules

Every draw comes from one `random.Random`, so a configuration and a seed always produce the same case.
"""

import random
from fractions import Fraction

from pbb.distr.distribution import Distribution, Mixture
from pbb.harness.schema import GenConfig
from pbb.semantics.schema import Instruction, Step, Witness, WitnessKind
from pbb.semantics.universe import Universe, den
from pbb.terms.ast import TAU, Choice, Dirac, Nil, NTerm, PChoice, Prefix, PTerm, Sort, choice


class TermGenerator:
    """Draws terms within the bounds of a configuration"""

    def __init__(self, config: GenConfig, seed: int | None = None) -> None:
        """Initializes the generator

        Args:
            config: The bounds
            seed: Overrides the configured seed
        """
        self.config = config
        self.random = random.Random(config.seed if seed is None else seed)

    def ratio(self) -> Fraction:
        """A probability strictly between 0 and 1 with a bounded denominator"""
        denominator = self.random.randint(2, max(2, self.config.denominator))
        return Fraction(self.random.randint(1, denominator - 1), denominator)

    def nterm(self, depth: int | None = None, silent: bool = True) -> NTerm:
        """A non-deterministic process of prefix depth at most `depth`

        Args:
            depth: Nesting bound, the configured one when None
            silent: Whether τ may label a top-level summand

        Returns:
            The process
        """
        depth = self.config.max_depth if depth is None else depth
        actions = [action for action in self.config.actions if silent or not action.silent]
        if depth == 0 or not actions:
            return Nil()
        count = self.random.randint(0, self.config.max_branch)
        return choice(*(Prefix(self.random.choice(actions), self.pterm(depth - 1)) for _ in range(count)))

    def pterm(self, depth: int | None = None, silent: bool = True) -> PTerm:
        """A probabilistic process whose branches are processes of depth at most `depth`"""
        depth = self.config.max_depth if depth is None else depth
        branches = self.random.randint(1, self.config.max_branch) if self.config.denominator > 1 else 1
        result: PTerm = Dirac(self.nterm(depth, silent))
        for _ in range(branches - 1):
            result = PChoice(result, self.ratio(), Dirac(self.nterm(depth, silent)))
        return result

    def distribution(self, depth: int | None = None, silent: bool = True) -> Distribution:
        """The denotation of a random probabilistic process"""
        return den(self.pterm(depth, silent))

    def presentation(self, distribution: Distribution, parts: int | None = None) -> Mixture:
        """A random way of writing a distribution as a mixture

        Each state's weight is split over the parts in random integer proportions.

        Args:
            distribution: The distribution to present
            parts: The number of parts before empty ones are dropped

        Returns:
            Positive coefficients with their distributions, mixing back to the input
        """
        parts = parts or self.random.randint(1, self.config.max_branch + 1)
        measures: list[dict[NTerm, Fraction]] = [{} for _ in range(parts)]
        for state, weight in distribution.entries:
            shares = [self.random.randint(0, self.config.denominator) for _ in range(parts)]
            if not any(shares):
                shares[self.random.randrange(parts)] = 1
            total = sum(shares)
            for measure, share in zip(measures, shares, strict=True):
                if share:
                    measure[state] = weight * share / total

        mixture: list[tuple[Fraction, Distribution]] = []
        for measure in measures:
            mass = sum(measure.values(), Fraction(0))
            if mass:
                normalized = {state: value / mass for state, value in measure.items()}
                mixture.append((mass, Distribution.from_measure(normalized)))
        return mixture

    def schedule(self, universe: Universe, source: Distribution, steps: int | None = None) -> Witness:
        """A random weak transition built from partial τ-steps

        Args:
            universe: The universe holding the support
            source: Where the schedule starts
            steps: The number of steps drawn, idle ones are dropped

        Returns:
            A witness of kind weak
        """
        steps = self.config.max_depth if steps is None else steps
        current = source
        chain: list[Step] = []
        for _ in range(steps):
            instructions: list[Instruction] = []
            for state, mass in current.entries:
                targets = universe.successors(state, TAU)
                if not targets:
                    instructions.append(Instruction(state, mass, ()))
                    continue
                fired = mass * Fraction(self.random.randint(0, self.config.denominator), self.config.denominator)
                fires = ((self.random.choice(targets), fired),) if fired else ()
                instructions.append(Instruction(state, mass - fired, fires))
            step = Step(TAU, True, tuple(instructions))
            if not step.idle:
                chain.append(step)
                current = step.target
        return Witness(WitnessKind.WEAK, source, current, tuple(chain))


def gen_term(config: GenConfig, sort: Sort = Sort.NONDET) -> NTerm | PTerm:
    """A random term of the given sort, determined by the configuration alone

    Args:
        config: Bounds and seed
        sort: `nondet` or `prob`

    Raises:
        ValueError: For the distribution sort

    Returns:
        The term
    """
    generator = TermGenerator(config)
    match sort:
        case Sort.NONDET:
            return generator.nterm()
        case Sort.PROB:
            return generator.pterm()
    raise ValueError(f"cannot generate terms of sort '{sort}'")


def inert(body: NTerm) -> NTerm:
    """`tau.D(E) + E`, branching bisimilar to E"""
    return Choice(Prefix(TAU, Dirac(body)), body)


def graft_sites(term: NTerm | PTerm) -> int:
    """The number of Dirac bodies, each a place an inert τ-step can be inserted"""
    match term:
        case Nil():
            return 0
        case Prefix(_, body):
            return graft_sites(body)
        case Dirac(body):
            return graft_sites(body) + 1
        case Choice(left, right) | PChoice(left, _, right):
            return graft_sites(left) + graft_sites(right)
    raise TypeError(f'not a term: {term!r}')


def _graft_nondet(term: NTerm, index: int) -> tuple[NTerm, int]:
    match term:
        case Prefix(action, body) if index >= 0:
            grafted, index = _graft_prob(body, index)
            return Prefix(action, grafted), index
        case Choice(left, right) if index >= 0:
            new_left, index = _graft_nondet(left, index)
            new_right, index = _graft_nondet(right, index)
            return Choice(new_left, new_right), index
    return term, index


def _graft_prob(term: PTerm, index: int) -> tuple[PTerm, int]:
    match term:
        case Dirac(body) if index == 0:
            return Dirac(inert(body)), -1
        case Dirac(body) if index > 0:
            grafted, index = _graft_nondet(body, index - 1)
            return Dirac(grafted), index
        case PChoice(left, ratio, right) if index >= 0:
            new_left, index = _graft_prob(left, index)
            new_right, index = _graft_prob(right, index)
            return PChoice(new_left, ratio, new_right), index
    return term, index


def graft(term: NTerm, rng: random.Random, root: bool = True) -> NTerm:
    """Inserts one inert τ-step at a random place

    Args:
        term: The process
        rng: Source of the choice
        root: Whether the whole process may be replaced, which makes it unstable

    Returns:
        A process branching bisimilar to the input
    """
    sites = graft_sites(term)
    if root and (not sites or rng.randrange(sites + 1) == 0):
        return inert(term)
    if not sites:
        return term
    return _graft_nondet(term, rng.randrange(sites))[0]


def grafted_pair(generator: TermGenerator, root: bool = True) -> tuple[NTerm, NTerm]:
    """A random process together with a grafted copy"""
    term = generator.nterm(silent=root)
    return term, graft(term, generator.random, root)

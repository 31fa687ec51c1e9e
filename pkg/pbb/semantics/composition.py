"""Probabilistic composition and decomposition of transition witnesses"""

from collections.abc import Sequence
from fractions import Fraction

from pbb.distr.combinatorics import joint_decompose
from pbb.distr.distribution import Distribution, Mixture, mix
from pbb.semantics.schema import Instruction, Step, Witness, WitnessKind, idle_step
from pbb.semantics.step import replay
from pbb.semantics.universe import Universe
from pbb.terms.ast import TAU, NTerm
from pbb.utility.exception import SemanticsError

type Part = tuple[Fraction, Distribution, Witness]


def merge_steps(steps: Sequence[Step]) -> Step:
    """Adds up steps of the same action, state by state and target by target

    Raises:
        SemanticsError: When the steps disagree on the action or on being partial
    """
    if not steps:
        raise SemanticsError('nothing to merge')
    action, partial = steps[0].action, steps[0].partial
    stays: dict[NTerm, Fraction] = {}
    fires: dict[NTerm, dict[Distribution, Fraction]] = {}
    for step in steps:
        if step.action != action or step.partial != partial:
            raise SemanticsError(f'cannot merge a {step.action}-step into a {action}-step')
        for instruction in step.instructions:
            stays[instruction.state] = stays.get(instruction.state, Fraction(0)) + instruction.stay
            targets = fires.setdefault(instruction.state, {})
            for target, mass in instruction.fires:
                targets[target] = targets.get(target, Fraction(0)) + mass

    instructions = tuple(
        Instruction(state, stays[state], tuple((target, mass) for target, mass in fires[state].items() if mass))
        for state in stays
        if stays[state] or any(fires[state].values())
    )
    return Step(action, partial, instructions)


def compose_transitions(parts: Sequence[Part]) -> Witness:
    """Builds a witness for ⊕ p_i·μ_i → ⊕ p_i·μ'_i from witnesses of the parts

    Weak chains are padded with idle steps to the longest length before merging layer by layer.

    Args:
        parts: Coefficients, sources and witnesses of the parts

    Raises:
        SemanticsError: When the witnesses are of mixed kinds or a witness does not start at its part
        DistributionError: When the coefficients do not form a convex combination

    Returns:
        The composed witness
    """
    if not parts:
        raise SemanticsError('nothing to compose')
    kinds = {witness.kind for _, _, witness in parts}
    if len(kinds) > 1:
        raise SemanticsError(f'cannot compose witnesses of mixed kinds: {", ".join(sorted(kinds))}')
    for _, source, witness in parts:
        if witness.source != source:
            raise SemanticsError(f'witness starts at {witness.source}, not {source}')

    source = mix([(coefficient, part) for coefficient, part, _ in parts])
    target = mix([(coefficient, witness.target) for coefficient, _, witness in parts])
    live = [(coefficient, witness) for coefficient, _, witness in parts if coefficient]
    if len(live) == 1 and live[0][0] == 1:
        return live[0][1]

    kind = next(iter(kinds))
    length = max(witness.length for _, witness in live)
    layers: list[Step] = []
    for index in range(length):
        scaled: list[Step] = []
        for coefficient, witness in live:
            if index < witness.length:
                scaled.append(witness.steps[index].scaled(coefficient))
            else:
                scaled.append(idle_step(TAU, witness.target.measure(coefficient)))
        layers.append(merge_steps(scaled))

    if kind is not WitnessKind.WEAK and len(layers) != 1:
        raise SemanticsError(f'a {kind} witness needs exactly one step')
    steps = tuple(layer for layer in layers if kind is not WitnessKind.WEAK or not layer.idle)
    return Witness(kind, source, target, steps)


def split_step(parts: Mixture, step: Step) -> tuple[Step, ...]:
    """Divides one step among the parts of its source

    The share of part i in the instructions of state E is the joint decomposition of the parts against the
    Dirac points of the source, r_iE / μ(E) = p_i·μ_i(E) / μ(E).

    Args:
        parts: A presentation ⊕ p_i·μ_i of the step's source, every p_i positive
        step: The step

    Returns:
        One step per part, normalized to the part
    """
    source = step.source
    points = [(weight, Distribution.dirac(state)) for state, weight in source.entries]
    matrix = joint_decompose(parts, points)
    by_state = {instruction.state: instruction for instruction in step.instructions}

    result: list[Step] = []
    for (coefficient, _), row in zip(parts, matrix, strict=True):
        pieces: list[Step] = []
        for (weight, point), (share, _) in zip(points, row, strict=True):
            if not share:
                continue
            instruction = by_state[point.support[0]]
            pieces.append(Step(step.action, step.partial, (instruction,)).scaled(share / (weight * coefficient)))
        result.append(merge_steps(pieces))
    return tuple(result)


def decompose_transition(universe: Universe, parts: Mixture, witness: Witness) -> tuple[Witness, ...]:
    """Splits a witness for ⊕ p_i·μ_i → μ' into witnesses μ_i → μ'_i with μ' = ⊕ p_i·μ'_i

    Weak chains are split step by step, each step against the current per-part distributions.

    Args:
        universe: The universe the witness refers to
        parts: The presentation ⊕ p_i·μ_i, every p_i positive
        witness: Evidence for the transition of the mixture

    Raises:
        SemanticsError: When a coefficient is not positive, the witness does not replay or does not start at
            the mixture

    Returns:
        One witness per part, of the same kind
    """
    if any(coefficient <= 0 for coefficient, _ in parts):
        raise SemanticsError('decomposition needs positive coefficients')
    if mix(parts) != witness.source:
        raise SemanticsError(f'witness starts at {witness.source}, not at {mix(parts)}')
    if not replay(universe, witness):
        raise SemanticsError('witness does not replay')

    current = [part for _, part in parts]
    chains: list[list[Step]] = [[] for _ in parts]
    for step in witness.steps:
        presentation = [(coefficient, part) for (coefficient, _), part in zip(parts, current, strict=True)]
        for index, piece in enumerate(split_step(presentation, step)):
            chains[index].append(piece)
            current[index] = piece.target

    return tuple(
        Witness(witness.kind, part, current[index], tuple(chains[index]))
        for index, (_, part) in enumerate(parts)
    )

"""Brute-force oracles for small universes

The oracles share no code with the solver-backed decision procedures: hull membership is decided by exact Gaussian
elimination over affinely independent vertex subsets, partitions are enumerated outright, and weak transitions are
explored on a grid of fired fractions.
"""

from collections.abc import Iterator, Sequence
from fractions import Fraction
from itertools import combinations, product

from pbb.distr.distribution import Distribution, accumulate, dirac
from pbb.semantics.universe import Universe, build_universe, transitions
from pbb.terms.ast import TAU, Action, Choice, Dirac, Nil, NTerm, PChoice, Prefix, PTerm

type Vector = tuple[Fraction, ...]


def solve_exact(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """The unique solution of an overdetermined linear system

    Args:
        matrix: Rows of coefficients
        rhs: Right-hand side, one entry per row

    Returns:
        The solution when the system is consistent and has full column rank, None otherwise
    """
    columns = len(matrix[0]) if matrix else 0
    rows = [[*row, value] for row, value in zip(matrix, rhs, strict=True)]
    pivot_row = 0
    for column in range(columns):
        pivot = next((index for index in range(pivot_row, len(rows)) if rows[index][column]), None)
        if pivot is None:
            return None
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        lead = rows[pivot_row][column]
        rows[pivot_row] = [value / lead for value in rows[pivot_row]]
        for index, row in enumerate(rows):
            if index != pivot_row and row[column]:
                factor = row[column]
                rows[index] = [value - factor * base for value, base in zip(row, rows[pivot_row], strict=True)]
        pivot_row += 1

    if any(row[-1] for row in rows[pivot_row:]):
        return None
    return [rows[index][-1] for index in range(columns)]


def hull_contains(point: Vector, vertices: Sequence[Vector]) -> bool:
    """Whether a point is a convex combination of vertices

    By Carathéodory it suffices to try affinely independent subsets of at most dimension + 1 vertices.
    """
    distinct = list(dict.fromkeys(vertices))
    for size in range(1, min(len(distinct), len(point) + 1) + 1):
        for subset in combinations(distinct, size):
            matrix = [[vertex[position] for vertex in subset] for position in range(len(point))]
            matrix.append([Fraction(1)] * size)
            solution = solve_exact(matrix, [*point, Fraction(1)])
            if solution is not None and all(weight >= 0 for weight in solution):
                return True
    return False


def set_partitions[T](items: Sequence[T]) -> Iterator[list[list[T]]]:
    """Every partition of a sequence into non-empty blocks"""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        yield [[first], *partition]
        for index in range(len(partition)):
            yield [*partition[:index], [first, *partition[index]], *partition[index + 1 :]]


def _vector(blocks: Sequence[Sequence[NTerm]], distribution: Distribution) -> Vector:
    return tuple(sum((distribution[state] for state in block), Fraction(0)) for block in blocks)


def _simulates(universe: Universe, blocks: list[list[NTerm]], state: NTerm, other: NTerm) -> bool:
    for action in universe.actions(state) | universe.actions(other):
        mine = [_vector(blocks, target) for target in universe.successors(state, action)]
        theirs = [_vector(blocks, target) for target in universe.successors(other, action)]
        if not mine or not theirs:
            return False
        if not all(hull_contains(vector, theirs) for vector in mine):
            return False
    return True


def is_strong_bisimulation(universe: Universe, blocks: list[list[NTerm]]) -> bool:
    """Whether related states match each other's combined transitions up to block masses"""
    return all(
        _simulates(universe, blocks, state, other) and _simulates(universe, blocks, other, state)
        for block in blocks
        for state, other in combinations(block, 2)
    )


def coarsest_strong_partition(universe: Universe) -> list[list[NTerm]]:
    """The strong bisimulation with the fewest blocks, by enumeration

    Only feasible for a handful of states.
    """
    states = list(universe.states)
    best: list[list[NTerm]] = [[state] for state in states]
    for blocks in set_partitions(states):
        if len(blocks) < len(best) and is_strong_bisimulation(universe, blocks):
            best = blocks
    return best


def vertex_successors(source: Distribution, action: Action) -> set[Distribution]:
    """Σ_E μ(E)·η_E over every choice of one SOS transition per support state"""
    options = [
        [transition.target for transition in transitions(state) if transition.action == action] for state in source
    ]
    if not all(options):
        return set()
    return {
        Distribution.from_measure(accumulate(zip((source[state] for state in source), choice, strict=True)))
        for choice in product(*options)
    }


def grid_reach(
    universe: Universe, source: Distribution, denominator: int, steps: int, limit: int | None = None
) -> set[Distribution]:
    """Distributions reachable by partial τ-steps that fire multiples of 1/denominator of each state's mass

    Args:
        universe: The universe holding the support
        source: Where the steps start
        denominator: Grid of the fired fractions
        steps: Number of steps
        limit: Stops taking further steps once this many distributions are known

    Returns:
        Distributions reached in at most `steps` steps, the source included; all of them unless cut by `limit`
    """
    grid = [Fraction(numerator, denominator) for numerator in range(denominator + 1)]
    reached = {source}
    frontier = {source}
    for _ in range(steps):
        following: set[Distribution] = set()
        for current in frontier:
            options: list[list[tuple[tuple[Fraction, Distribution], ...]]] = []
            for state, mass in current.entries:
                local: list[tuple[tuple[Fraction, Distribution], ...]] = [((mass, dirac(state)),)]
                for target in universe.successors(state, TAU):
                    local.extend(((mass * (1 - share), dirac(state)), (mass * share, target)) for share in grid[1:])
                options.append(local)
            for choice in product(*options):
                following.add(Distribution.from_measure(accumulate(part for piece in choice for part in piece)))
        frontier = following - reached
        reached |= following
        if limit is not None and len(reached) >= limit:
            break
    return reached


def small_processes(actions: Sequence[Action], denominator: int, max_states: int, depth: int = 2) -> list[NTerm]:
    """Every process up to a prefix depth whose universe has at most `max_states` states

    Sums have at most two summands and probabilistic choices two branches, with ratios of denominator at most
    `denominator`.
    """
    ratios = sorted({Fraction(numerator, base) for base in range(2, denominator + 1) for numerator in range(1, base)})
    terms: list[NTerm] = [Nil()]
    for _ in range(depth):
        bodies: list[PTerm] = [Dirac(term) for term in terms]
        bodies.extend(
            PChoice(Dirac(first), ratio, Dirac(second)) for first, second in combinations(terms, 2) for ratio in ratios
        )
        prefixes: list[NTerm] = [Prefix(action, body) for action in actions for body in bodies]
        summed = [*prefixes, *(Choice(first, second) for first, second in combinations(prefixes, 2))]
        terms = [Nil(), *(term for term in summed if len(build_universe([term])) <= max_states)]
    return terms

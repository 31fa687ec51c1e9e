"""Structural operational semantics and transition-closed universes of states"""

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, cached_property

import graphviz

from pbb.distr.distribution import Distribution, binary_mix, dirac
from pbb.semantics.feasibility import LinearSystem, constant, total
from pbb.terms.ast import (
    TAU,
    Action,
    Choice,
    Dirac,
    Nil,
    NTerm,
    PChoice,
    Prefix,
    PTerm,
    complexity,
    format_term,
    term_key,
)
from pbb.utility.exception import SemanticsError
from pbb.utility.utility import format_rational

logger = logging.getLogger('pbb.semantics')


@cache
def den(term: PTerm) -> Distribution:
    """The distribution a probabilistic process denotes

    Args:
        term: The probabilistic process

    Returns:
        δ(E) for D(E), and the r-mixture of both denotations for P +[r] Q
    """
    match term:
        case Dirac(body):
            return dirac(body)
        case PChoice(left, ratio, right):
            return binary_mix(ratio, den(left), den(right))
    raise TypeError(f'not a probabilistic process: {term!r}')


@dataclass(frozen=True, slots=True)
class Transition:
    """A non-combined transition E --α--> μ"""

    source: NTerm
    action: Action
    target: Distribution

    def __str__(self) -> str:
        """Readable arrow form"""
        return f'{format_term(self.source)} --{self.action}--> {self.target}'


@cache
def transitions(term: NTerm) -> tuple[Transition, ...]:
    """The SOS-derivable transitions of a non-deterministic process, without duplicates

    Args:
        term: The process

    Returns:
        Prefixes fire their denotation, choices offer the transitions of both operands
    """
    match term:
        case Nil():
            return ()
        case Prefix(action, body):
            return (Transition(term, action, den(body)),)
        case Choice(left, right):
            found: dict[tuple[Action, Distribution], None] = {}
            for transition in (*transitions(left), *transitions(right)):
                found.setdefault((transition.action, transition.target), None)
            return tuple(Transition(term, action, target) for action, target in found)
    raise TypeError(f'not a non-deterministic process: {term!r}')


@dataclass(frozen=True, slots=True)
class AfterSet:
    """The convex hull of a state's α-successors

    For the partial variant of τ the Dirac distribution of the state itself is an extra vertex.
    """

    state: NTerm
    action: Action
    partial: bool
    vertices: tuple[Distribution, ...]

    @property
    def empty(self) -> bool:
        """Whether the state cannot do the action at all"""
        return not self.vertices

    def contains(self, candidate: Distribution) -> bool:
        """Decides hull membership exactly"""
        return self.coefficients(candidate) is not None

    def coefficients(self, candidate: Distribution) -> tuple[Fraction, ...] | None:
        """Convex coefficients expressing a candidate over the vertices

        Args:
            candidate: The distribution to test

        Returns:
            One coefficient per vertex, or None when the candidate lies outside the hull
        """
        if self.empty:
            return None
        system = LinearSystem(f'after {format_term(self.state)} {self.action}')
        weights = [system.variable(f'v{index}') for index in range(len(self.vertices))]
        system.require(total(weights) == 1)
        terms = set(candidate).union(*(set(vertex) for vertex in self.vertices))
        for term in terms:
            mass = total(weight * constant(vertex[term]) for weight, vertex in zip(weights, self.vertices, strict=True))
            system.require(mass == constant(candidate[term]))
        if (solution := system.solve()) is None:
            return None
        return tuple(solution.value(weight) for weight in weights)


@dataclass(frozen=True, eq=False)
class Universe:
    """A finite transition-closed set of states with its transition table"""

    states: tuple[NTerm, ...]
    table: dict[NTerm, tuple[Transition, ...]] = field(repr=False)

    def __contains__(self, state: object) -> bool:
        """Whether the state belongs to the universe"""
        return state in self.table

    def __iter__(self) -> Iterator[NTerm]:
        """The states in canonical order"""
        return iter(self.states)

    def __len__(self) -> int:
        """The number of states"""
        return len(self.states)

    def transitions(self, state: NTerm, action: Action | None = None) -> tuple[Transition, ...]:
        """The transitions of a state, optionally restricted to one action

        Raises:
            SemanticsError: When the state is outside the universe
        """
        self.require(state)
        found = self.table[state]
        return found if action is None else tuple(item for item in found if item.action == action)

    def successors(self, state: NTerm, action: Action) -> tuple[Distribution, ...]:
        """The distinct α-targets of a state"""
        return tuple(transition.target for transition in self.transitions(state, action))

    def actions(self, state: NTerm) -> frozenset[Action]:
        """The actions a state can perform"""
        return frozenset(transition.action for transition in self.transitions(state))

    @cached_property
    def alphabet(self) -> tuple[Action, ...]:
        """Every action occurring in the universe, in name order"""
        names = {transition.action for items in self.table.values() for transition in items}
        return tuple(sorted(names, key=lambda action: action.name))

    @cached_property
    def visible(self) -> tuple[Action, ...]:
        """The alphabet without τ"""
        return tuple(action for action in self.alphabet if not action.silent)

    def require(self, *states: NTerm) -> None:
        """Checks that states belong to the universe

        Raises:
            SemanticsError: Naming the first missing state
        """
        for state in states:
            if state not in self.table:
                raise SemanticsError(f"state '{format_term(state)}' is not in the universe")

    def require_support(self, *distributions: Distribution) -> None:
        """Checks that every support state belongs to the universe"""
        for distribution in distributions:
            self.require(*distribution.support)

    @cached_property
    def bound(self) -> int:
        """N(u), the sum of the complexities of all states

        Every full τ-firing strictly lowers the weight, so no weak transition needs more steps than this.
        """
        return sum(complexity(state) for state in self.states)

    @cached_property
    def tau_height(self) -> dict[NTerm, int]:
        """The length of the longest τ-path from every state"""
        heights: dict[NTerm, int] = {}
        # complexity strictly decreases along transitions, so ascending complexity is a topological order
        for state in sorted(self.states, key=complexity):
            heights[state] = max(
                (1 + heights[target] for transition in self.transitions(state, TAU) for target in transition.target),
                default=0,
            )
        return heights

    @cached_property
    def height(self) -> int:
        """The longest τ-path in the universe"""
        return max(self.tau_height.values(), default=0)

    def tau_closure(self, states: Iterable[NTerm]) -> tuple[NTerm, ...]:
        """The states reachable by τ-transitions, in canonical order"""
        seen: set[NTerm] = set()
        frontier = list(states)
        while frontier:
            state = frontier.pop()
            if state in seen:
                continue
            seen.add(state)
            for target in self.successors(state, TAU):
                frontier.extend(target)
        return tuple(sorted(seen, key=term_key))

    def reachable(self, states: Iterable[NTerm]) -> tuple[NTerm, ...]:
        """The states reachable by any transitions, in canonical order"""
        seen: set[NTerm] = set()
        frontier = list(states)
        while frontier:
            state = frontier.pop()
            if state in seen:
                continue
            seen.add(state)
            for transition in self.transitions(state):
                frontier.extend(transition.target)
        return tuple(sorted(seen, key=term_key))


def build_universe(seeds: Iterable[NTerm | PTerm | Distribution]) -> Universe:
    """Closes seeds under the transition relation

    Args:
        seeds: Non-deterministic processes, probabilistic processes (via their denotation) or distributions

    Returns:
        The least transition-closed universe containing every seed state
    """
    frontier: list[NTerm] = []
    for seed in seeds:
        if isinstance(seed, Distribution):
            frontier.extend(seed)
        elif isinstance(seed, Dirac | PChoice):
            frontier.extend(den(seed))
        else:
            frontier.append(seed)

    table: dict[NTerm, tuple[Transition, ...]] = {}
    while frontier:
        state = frontier.pop()
        if state in table:
            continue
        table[state] = transitions(state)
        for transition in table[state]:
            frontier.extend(target for target in transition.target if target not in table)

    states = tuple(sorted(table, key=term_key))
    logger.info('Built a universe of %d states', len(states))
    return Universe(states, {state: table[state] for state in states})


def after_set(universe: Universe, state: NTerm, action: Action, partial: bool = False) -> AfterSet:
    """E↾α, or E↾(τ) in the partial case

    Args:
        universe: The universe containing the state
        state: The state
        action: The action
        partial: Whether to add the stay vertex δ(E)

    Raises:
        SemanticsError: When partial is requested for a visible action or the state is unknown

    Returns:
        The after-set with its vertices in transition order
    """
    if partial and not action.silent:
        raise SemanticsError(f"the partial after-set is defined for '{TAU}' only, not '{action}'")
    vertices = list(universe.successors(state, action))
    if partial and dirac(state) not in vertices:
        vertices.append(dirac(state))
    return AfterSet(state, action, partial, tuple(vertices))


def to_digraph(universe: Universe, name: str = 'universe') -> graphviz.Digraph:
    """Renders the universe as a DOT graph

    Probabilistic targets with more than one state get an intermediate point node.

    Args:
        universe: The universe
        name: Graph name

    Returns:
        The graph, whose `source` is the DOT text
    """
    graph = graphviz.Digraph(name)
    index = {state: f's{position}' for position, state in enumerate(universe.states)}
    for state in universe.states:
        graph.node(index[state], label=format_term(state), shape='box')

    for state in universe.states:
        for position, transition in enumerate(universe.transitions(state)):
            if transition.target.is_dirac:
                graph.edge(index[state], index[transition.target.support[0]], label=str(transition.action))
                continue
            split = f'{index[state]}_{position}'
            graph.node(split, shape='point')
            graph.edge(index[state], split, label=str(transition.action), arrowhead='none')
            for target, weight in transition.target.entries:
                graph.edge(split, index[target], label=format_rational(weight), style='dashed')
    return graph

"""Tests the transition table and after-sets"""

from fractions import Fraction

import pytest

from pbb.distr.distribution import binary_mix, dirac
from pbb.semantics.universe import after_set, build_universe, den, to_digraph, transitions
from pbb.terms.ast import TAU, Action, Nil
from pbb.terms.parser import parse_distribution, parse_nterm, parse_pterm
from pbb.test.data.variants import A, B, MIDDLE, P, Q, T, X
from pbb.utility.exception import SemanticsError


class TestDenotation:
    """Probabilistic processes as distributions"""

    @staticmethod
    def test_nested_mixture() -> None:
        """Nested ratios multiply out"""
        term = parse_pterm(f'D({A}) +[1/4] (D({A}) +[1/3] D({B}))')
        assert den(term) == parse_distribution(f'{{1/2: {A}, 1/2: {B}}}')

    @staticmethod
    def test_dirac() -> None:
        """D(E) denotes δ(E)"""
        assert den(parse_pterm('D(0)')) == dirac(Nil())


class TestUniverse:
    """Closure under transitions"""

    @staticmethod
    def test_nil() -> None:
        """The inactive process is closed on its own"""
        universe = build_universe([Nil()])
        assert universe.states == (Nil(),)
        assert not universe.transitions(Nil())
        assert universe.bound == 0
        assert universe.height == 0

    @staticmethod
    def test_prefix() -> None:
        """A prefix pulls in its continuation"""
        a = parse_nterm(A)
        universe = build_universe([a])
        assert set(universe.states) == {a, Nil()}
        assert universe.successors(a, Action('a')) == (dirac(Nil()),)
        assert universe.actions(a) == frozenset({Action('a')})

    @staticmethod
    def test_distribution_seed() -> None:
        """Distribution seeds contribute their support"""
        universe = build_universe([parse_distribution(f'{{1/2: {T}, 1/2: {A}}}')])
        assert parse_nterm(B) in universe
        assert universe.alphabet == (Action('a'), Action('b'), TAU)
        assert universe.visible == (Action('a'), Action('b'))

    @staticmethod
    def test_tau_height() -> None:
        """The longest τ-path from a state"""
        t = parse_nterm(T)
        universe = build_universe([t])
        assert universe.tau_height[t] == 1
        assert universe.tau_height[parse_nterm(A)] == 0
        assert universe.height == 1

    @staticmethod
    def test_reachable() -> None:
        """Reachability follows every action"""
        t = parse_nterm(T)
        universe = build_universe([t])
        assert set(universe.reachable([t])) == set(universe.states)
        assert set(universe.tau_closure([t])) == {t, parse_nterm(A), parse_nterm(B)}

    @staticmethod
    def test_unknown_state() -> None:
        """Lookups outside the universe fail"""
        universe = build_universe([Nil()])
        with pytest.raises(SemanticsError):
            universe.transitions(parse_nterm(A))

    @staticmethod
    def test_duplicate_transitions() -> None:
        """Identical summands contribute one transition"""
        assert len(transitions(parse_nterm(f'{A} + {A}'))) == 1


class TestAfterSet:
    """Hulls of successors"""

    @staticmethod
    def test_convex_combination() -> None:
        """The hull of two a-successors contains their mixtures"""
        state = parse_nterm(f'a.({P} +[1/2] {Q}) + a.({P} +[1/3] {Q})')
        universe = build_universe([state])
        after = after_set(universe, state, Action('a'))
        assert len(after.vertices) == 2
        p, q = parse_nterm('p.D(0)'), parse_nterm('q.D(0)')
        assert after.contains(binary_mix(Fraction(5, 12), dirac(p), dirac(q)))
        assert not after.contains(dirac(p))

    @staticmethod
    def test_partial_adds_stay_vertex() -> None:
        """The partial τ after-set has the state itself as an extra vertex"""
        state = parse_nterm(X)
        universe = build_universe([state])
        after = after_set(universe, state, TAU, partial=True)
        assert set(after.vertices) == {den(parse_pterm(Q)), dirac(state)}

    @staticmethod
    def test_partial_needs_tau() -> None:
        """Partial after-sets exist for τ only"""
        state = parse_nterm(X)
        universe = build_universe([state])
        with pytest.raises(SemanticsError):
            after_set(universe, state, Action('b'), partial=True)

    @staticmethod
    def test_empty() -> None:
        """Nil cannot do anything"""
        universe = build_universe([Nil()])
        after = after_set(universe, Nil(), Action('a'))
        assert after.empty
        assert after.coefficients(dirac(Nil())) is None

    @staticmethod
    def test_coefficients() -> None:
        """Coefficients reproduce the candidate"""
        state = parse_nterm(f'a.{P} + a.{Q}')
        universe = build_universe([state])
        after = after_set(universe, state, Action('a'))
        coefficients = after.coefficients(parse_distribution(MIDDLE))
        assert coefficients == (Fraction(1, 2), Fraction(1, 2))


class TestDigraph:
    """DOT rendering"""

    @staticmethod
    def test_renders_states() -> None:
        """Every state becomes a node and split targets get a point"""
        universe = build_universe([parse_nterm(T)])
        source = to_digraph(universe, 'example').source
        assert source.startswith('digraph example')
        assert 'shape=point' in source
        assert '1/2' in source
        assert 'a.D(0)' in source

"""Tests authoritative negatives"""

from pbb.distr.distribution import dirac
from pbb.equiv.refute import profile, refute, state_profiles, tau_free
from pbb.semantics.universe import build_universe
from pbb.terms.ast import Action, Nil
from pbb.terms.parser import parse_distribution, parse_nterm
from pbb.test.data.variants import A, B, MU, NU, T


class TestProfiles:
    """Weakly reachable visible actions"""

    @staticmethod
    def test_through_tau() -> None:
        """Actions behind a τ-prefix count"""
        state = parse_nterm(f'tau.D({A})')
        profiles = state_profiles(build_universe([state]))
        assert profiles[state] == frozenset({Action('a')})
        assert profiles[Nil()] == frozenset()

    @staticmethod
    def test_split_target() -> None:
        """A τ-target counts only the actions all its states share"""
        state = parse_nterm(T)
        universe = build_universe([state])
        assert state_profiles(universe)[state] == frozenset()
        assert profile(universe, parse_distribution(MU)) == frozenset()

    @staticmethod
    def test_tau_free() -> None:
        """Stable supports have no τ"""
        universe = build_universe([parse_distribution(NU)])
        assert tau_free(universe, parse_distribution(MU))
        assert not tau_free(universe, parse_distribution(NU))


class TestRefute:
    """Proofs of inequivalence"""

    @staticmethod
    def test_profiles_differ() -> None:
        """Deadlock differs from an a-step"""
        left, right = dirac(parse_nterm(A)), dirac(Nil())
        refutation = refute(build_universe([left, right]), left, right)
        assert refutation is not None
        assert 'profiles differ' in refutation.reason

    @staticmethod
    def test_mass_mismatch() -> None:
        """Stable distributions must be matched mass for mass, with the failing system kept"""
        left = parse_distribution(MU)
        right = parse_distribution(f'{{1/3: {A}, 2/3: {B}}}')
        refutation = refute(build_universe([left, right]), left, right)
        assert refutation is not None
        assert refutation.system is not None
        assert str(refutation).endswith(refutation.reason)

    @staticmethod
    def test_equivalent() -> None:
        """Equivalent distributions are not refuted"""
        left, right = parse_distribution(MU), parse_distribution(NU)
        assert refute(build_universe([left, right]), left, right) is None

    @staticmethod
    def test_decomposition_refuted() -> None:
        """Deadlock cannot host the a- and b-parts of a mixture"""
        left, right = parse_distribution(MU), dirac(Nil())
        refutation = refute(build_universe([left, right]), left, right)
        assert refutation is not None
        assert refutation.decomposition
        assert refutation.left == left

    @staticmethod
    def test_profiles_not_decomposition() -> None:
        """A profile difference is reported as such"""
        left, right = dirac(parse_nterm(A)), dirac(Nil())
        refutation = refute(build_universe([left, right]), left, right)
        assert refutation is not None
        assert not refutation.decomposition

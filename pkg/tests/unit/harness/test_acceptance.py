"""Acceptance runs of the lemma suites and an exhaustive sweep over tiny processes

Deselected by default; run them with `pdm run acceptance`.
"""

from itertools import combinations

import pytest

from pbb.core.schema import Budget
from pbb.distr.distribution import dirac
from pbb.equiv.partition import StatePartition, strong_partition
from pbb.equiv.schema import Status
from pbb.equiv.search import search_branching
from pbb.harness.oracle import coarsest_strong_partition, small_processes
from pbb.harness.runner import run_suite
from pbb.harness.schema import GenConfig
from pbb.semantics.universe import build_universe
from pbb.terms.ast import TAU, Action, NTerm

DISCARD_LIMIT = 0.8

pytestmark = pytest.mark.slow


class TestLemmaSuites:
    """Zero failures over a thousand cases per lemma"""

    @staticmethod
    @pytest.mark.parametrize(
        ('name', 'count'),
        [
            ('joint-decomposition', 1000),
            ('limit-residual', 1000),
            ('composition', 1000),
            ('congruence', 1000),
            ('weight-descent', 1000),
            ('cancellation', 200),
        ],
    )
    def test_no_failures(name: str, count: int) -> None:
        """Runs the suite with the default bounds

        Args:
            name: The suite
            count: Number of cases
        """
        report = run_suite(name, GenConfig(), count, Budget())
        assert report.success, report.first_failure
        assert report.discarded <= DISCARD_LIMIT * count, f'{report.discarded} of {count} discarded'


class TestSweep:
    """Every process over {a, τ} with at most four states"""

    @staticmethod
    @pytest.fixture(name='processes', scope='class')
    def fixture_processes() -> list[NTerm]:
        """The enumerated processes

        Returns:
            Processes with ratios of denominator at most four
        """
        return small_processes((Action('a'), TAU), 4, 4)

    @staticmethod
    def test_strong_partition(processes: list[NTerm]) -> None:
        """Refinement matches enumeration on every universe

        Args:
            processes: The enumerated processes
        """
        for process in processes:
            universe = build_universe([process])
            assert StatePartition.of(coarsest_strong_partition(universe)) == strong_partition(universe), process

    @staticmethod
    def test_strongly_related_not_rejected(processes: list[NTerm]) -> None:
        """The certificate search never rejects strongly bisimilar states

        Args:
            processes: The enumerated processes
        """
        budget = Budget()
        for process in processes:
            universe = build_universe([process])
            for block in strong_partition(universe).blocks:
                for first, second in combinations(block, 2):
                    verdict = search_branching(universe, dirac(first), dirac(second), budget)
                    assert verdict.status is not Status.REJECTED, (first, second)

"""Composable test types"""

from abc import ABCMeta, abstractmethod
from importlib.metadata import entry_points

import pytest

from pbb.core.schema import Budget
from pbb.harness.runner import find_suites, run_suite
from pbb.harness.schema import GenConfig
from pbb.harness.suites import Suite
from pbb.utility.utility import canonicalize_type


class SuiteTests[T: Suite](metaclass=ABCMeta):
    """Shared testing information for property suite test classes"""

    @abstractmethod
    @pytest.fixture(name='suite_type', scope='session')
    def fixture_suite_type(self) -> type[T]:
        """A required testing hook that allows type generation"""
        raise NotImplementedError('Override this fixture')

    @staticmethod
    @pytest.fixture(name='case_count', scope='session')
    def fixture_case_count() -> int:
        """Cases run per configuration

        Returns:
            The count
        """
        return 5

    @staticmethod
    @pytest.fixture(name='discard_limit', scope='session')
    def fixture_discard_limit() -> float:
        """Largest share of cases a suite may discard

        Returns:
            The share
        """
        return 0.8

    @staticmethod
    def test_name(suite_type: type[T]) -> None:
        """Verifies the class name allows name extraction

        Args:
            suite_type: The suite under test
        """
        assert suite_type.group() == 'suite'
        assert suite_type.name() == canonicalize_type(suite_type).name
        assert len(suite_type.name()) > 0

    @staticmethod
    def test_discovered(suite_type: type[T]) -> None:
        """Verifies the suite can be looked up by name

        Args:
            suite_type: The suite under test
        """
        assert find_suites()[suite_type.name()] is suite_type

    @staticmethod
    def test_no_failures(
        suite_type: type[T], gen_config: GenConfig, case_count: int, discard_limit: float
    ) -> None:
        """Runs a few seeded cases in-process and expects none to fail and enough to count

        Args:
            suite_type: The suite under test
            gen_config: Generator bounds
            case_count: Number of cases
            discard_limit: Largest share of discarded cases
        """
        report = run_suite(suite_type.name(), gen_config, case_count, Budget())
        assert report.count == case_count
        assert report.passed + report.failed + report.discarded == case_count
        assert report.success, report.first_failure
        assert report.discarded <= discard_limit * case_count, f'{report.discarded} of {case_count} discarded'


class SuiteIntegrationTests[T: Suite](SuiteTests[T], metaclass=ABCMeta):
    """Checks that need the installed distribution metadata"""

    @staticmethod
    def test_entry_point(suite_type: type[T]) -> None:
        """Verifies the suite is registered under the 'pbb.suite' group

        Args:
            suite_type: The suite under test
        """
        types = [entry.load() for entry in entry_points(group=suite_type.entry_point_group())]
        assert suite_type in types

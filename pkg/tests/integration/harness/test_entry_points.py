"""Integration tests for the registered property suites"""

import pytest

from pbb.harness.suites import CancellationSuite, StrongBranchingSuite, WeakTransferSuite
from pbb.test.pytest.shared import SuiteIntegrationTests


class TestStrongBranchingEntry(SuiteIntegrationTests[StrongBranchingSuite]):
    """Strong bisimilarity implies branching bisimilarity"""

    @staticmethod
    @pytest.fixture(name='suite_type', scope='session')
    def fixture_suite_type() -> type[StrongBranchingSuite]:
        """A required testing hook that allows type generation

        Returns:
            The suite type
        """
        return StrongBranchingSuite


class TestWeakTransferEntry(SuiteIntegrationTests[WeakTransferSuite]):
    """Weak transitions transfer along certificates"""

    @staticmethod
    @pytest.fixture(name='suite_type', scope='session')
    def fixture_suite_type() -> type[WeakTransferSuite]:
        """A required testing hook that allows type generation

        Returns:
            The suite type
        """
        return WeakTransferSuite


class TestCancellationEntry(SuiteIntegrationTests[CancellationSuite]):
    """Cancellation of a common remainder"""

    @staticmethod
    @pytest.fixture(name='suite_type', scope='session')
    def fixture_suite_type() -> type[CancellationSuite]:
        """A required testing hook that allows type generation

        Returns:
            The suite type
        """
        return CancellationSuite

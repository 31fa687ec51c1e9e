"""Test custom schema validation that cannot be verified by the Pydantic validation"""

import pytest
from pydantic import ValidationError

from pbb.core.schema import Budget, CertificateFile, SuiteReport


class TestSchema:
    """Test validation"""

    @staticmethod
    def test_budget_defaults() -> None:
        """Weak depth is unbounded by default"""
        budget = Budget()

        assert budget.depth is None
        assert budget.jobs == 1

    @staticmethod
    def test_budget_depth() -> None:
        """Depths are non-negative"""
        assert Budget(depth=0).depth == 0
        with pytest.raises(ValidationError):
            Budget(depth=-1)

    @staticmethod
    def test_budget_extra() -> None:
        """Unknown limits are refused"""
        with pytest.raises(ValidationError):
            Budget.model_validate({'rounds': 3})

    @staticmethod
    def test_closures() -> None:
        """Closure flags are known and kept once"""
        assert CertificateFile(closures=['convex', 'convex', 'diagonal']).closures == ['convex', 'diagonal']
        with pytest.raises(ValidationError):
            CertificateFile(closures=['reflexive'])

    @staticmethod
    def test_report_success() -> None:
        """Discarded cases do not fail a run"""
        assert SuiteReport(suite='grafting', seed=0, count=3, passed=1, discarded=2).success
        assert not SuiteReport(suite='grafting', seed=0, count=3, failed=1).success

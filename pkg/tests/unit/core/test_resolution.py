"""Test data resolution"""

from pathlib import Path

import pytest

from pbb.core.exception import ConfigException
from pbb.core.resolution import (
    BUDGET_VARIABLE,
    read_certificate,
    read_seeds,
    resolve_budget,
    resolve_certificate,
    resolve_model,
)
from pbb.core.schema import Budget, CertificateFile
from pbb.core.utility import write_model_json
from pbb.equiv.certificate import Closure
from pbb.terms.parser import parse_distribution, parse_literal
from pbb.test.data.variants import ALL_CLOSURES, MU, NU, T


class TestResolveBudget:
    """The environment override"""

    @staticmethod
    def test_unset() -> None:
        """Without the variable the base is kept"""
        base = Budget(pairs=3)
        assert resolve_budget({}, base) is base
        assert resolve_budget({BUDGET_VARIABLE: '  '}) == Budget()

    @staticmethod
    def test_all_fields() -> None:
        """Pairs, depth and denominator in order"""
        budget = resolve_budget({BUDGET_VARIABLE: '10, 4, 12'})
        assert (budget.pairs, budget.depth, budget.denominator) == (10, 4, 12)
        assert budget.nodes == Budget().nodes

    @staticmethod
    def test_blank_fields() -> None:
        """Blank fields keep their values"""
        budget = resolve_budget({BUDGET_VARIABLE: ',3'}, Budget(pairs=7))
        assert budget.pairs == 7
        assert budget.depth == 3

    @staticmethod
    def test_too_many_fields() -> None:
        """At most three fields"""
        with pytest.raises(ConfigException, match='at most 3'):
            resolve_budget({BUDGET_VARIABLE: '1,2,3,4'})

    @staticmethod
    def test_not_integers() -> None:
        """Every malformed field is reported"""
        with pytest.raises(ConfigException) as info:
            resolve_budget({BUDGET_VARIABLE: 'many,deep'})

        assert info.value.error_count == 2
        assert [error.location for error in info.value.errors] == ['pairs', 'depth']

    @staticmethod
    def test_out_of_range() -> None:
        """Values go through model validation"""
        with pytest.raises(ConfigException) as info:
            resolve_budget({BUDGET_VARIABLE: '0,-1'})

        assert {error.location for error in info.value.errors} == {'pairs', 'depth'}


class TestResolveModel:
    """Validation errors become configuration errors"""

    @staticmethod
    def test_unknown_field() -> None:
        """Extra fields are refused"""
        with pytest.raises(ConfigException) as info:
            resolve_model(Budget, {'pears': 3})

        assert info.value.errors[0].location == 'pears'


class TestCertificateFile:
    """On-disk certificates"""

    @staticmethod
    def test_resolve() -> None:
        """Literals parse and flags map to closures"""
        certificate = resolve_certificate(CertificateFile(pairs=[(MU, NU), (T, MU)], closures=ALL_CLOSURES))
        assert certificate.pairs[0] == (parse_distribution(MU), parse_distribution(NU))
        assert certificate.pairs[1][0] == parse_literal(T)
        assert certificate.closures == frozenset(Closure)

    @staticmethod
    def test_bad_literal() -> None:
        """Parse errors carry the pair location"""
        with pytest.raises(ConfigException) as info:
            resolve_certificate(CertificateFile(pairs=[(MU, 'a.')]))

        assert info.value.errors[0].location == 'pairs.0.1'

    @staticmethod
    def test_unknown_closure() -> None:
        """Flags are validated"""
        with pytest.raises(ConfigException):
            resolve_model(CertificateFile, {'pairs': [], 'closures': ['transitive']})

    @staticmethod
    def test_read(tmp_path: Path) -> None:
        """Certificates round-trip through JSON

        Args:
            tmp_path: Temporary directory
        """
        path = tmp_path / 'certificate.json'
        write_model_json(path, CertificateFile(pairs=[(MU, NU)], closures=['symmetric', 'symmetric']))

        certificate = read_certificate(path)
        assert certificate.closures == frozenset({Closure.SYMMETRIC})
        assert len(certificate.pairs) == 1


class TestSeeds:
    """Seeds files"""

    @staticmethod
    def test_read() -> None:
        """Named literals in file order, comments skipped"""
        text = f'# intro\nmu = {MU}\n\nnu = {NU}\nt = {T}\n'
        seeds = read_seeds(text)

        assert list(seeds) == ['mu', 'nu', 't']
        assert seeds['t'] == parse_literal(T)

    @staticmethod
    def test_errors() -> None:
        """Every bad line is reported with its number"""
        with pytest.raises(ConfigException) as info:
            read_seeds(f'mu = {MU}\nmu = {NU}\nno separator\nbad = a.\n')

        assert [error.location for error in info.value.errors] == ['line 2', 'line 3', 'line 4']

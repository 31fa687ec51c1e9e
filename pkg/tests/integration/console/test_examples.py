"""Runs the worked examples through the console entry"""

import json
from pathlib import Path

import pytest

from pbb.console.entry import run_main
from pbb.test.data.variants import MU, NU
from pbb.test.schema import EquivalenceExample, StabilizationExample, Variant

EXIT_CODES = {'accepted': 0, 'rejected': 1, 'inconclusive': 2}


class TestExamples:
    """Worked examples end to end"""

    @staticmethod
    def test_certificate(equivalence_example: Variant[EquivalenceExample], tmp_path: Path) -> None:
        """Given certificates decide the example pair

        Args:
            equivalence_example: The worked example
            tmp_path: Temporary directory
        """
        example = equivalence_example.configuration
        if not example.pairs:
            pytest.skip('no certificate to check')
        path = tmp_path / 'certificate.json'
        path.write_text(json.dumps({'pairs': example.pairs, 'closures': example.closures}), encoding='utf-8')
        arguments = ['check-branching', '--left', example.left, '--right', example.right, '--certificate', str(path)]
        assert run_main(arguments) == EXIT_CODES[example.status]

    @staticmethod
    def test_stabilize(stabilization_example: Variant[StabilizationExample]) -> None:
        """Examples stabilize without error

        Args:
            stabilization_example: The worked example
        """
        assert run_main(['stabilize', stabilization_example.configuration.source]) == 0

    @staticmethod
    def test_search_round_trip(tmp_path: Path) -> None:
        """A searched certificate is accepted by the checker

        Args:
            tmp_path: Temporary directory
        """
        path = tmp_path / 'found.json'
        search = ['check-branching', '--left', MU, '--right', NU, '--search', '--write-certificate', str(path)]
        assert run_main(search) == 0
        assert run_main(['check-branching', '--left', NU, '--right', MU, '--certificate', str(path)]) == 0
        assert json.loads(path.read_text(encoding='utf-8'))['pairs']

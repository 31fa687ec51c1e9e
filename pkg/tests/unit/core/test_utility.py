"""Tests reading and writing JSON documents"""

import json
from pathlib import Path

from pbb.core.schema import Budget, CertificateFile
from pbb.core.utility import dump_records, read_json, write_json, write_model_json, write_records


class TestJson:
    """JSON input and output"""

    @staticmethod
    def test_write_read(tmp_path: Path) -> None:
        """Written data reads back

        Args:
            tmp_path: Temporary directory
        """
        path = tmp_path / 'data.json'
        write_json(path, {'pairs': [['a', 'b']], 'ratio': '1/2'})

        assert read_json(path) == {'pairs': [['a', 'b']], 'ratio': '1/2'}

    @staticmethod
    def test_model_skips_none(tmp_path: Path) -> None:
        """Unset optional fields are left out

        Args:
            tmp_path: Temporary directory
        """
        path = tmp_path / 'budget.json'
        write_model_json(path, Budget())

        data = read_json(path)
        assert 'depth' not in data
        assert data['pairs'] == Budget().pairs

    @staticmethod
    def test_records(tmp_path: Path) -> None:
        """One document per line

        Args:
            tmp_path: Temporary directory
        """
        records = [CertificateFile(pairs=[('{1: 0}', '{1: 0}')]), CertificateFile(closures=['convex'])]
        text = dump_records(records)
        lines = text.splitlines()

        assert len(lines) == len(records)
        assert json.loads(lines[1]) == {'pairs': [], 'closures': ['convex']}

        path = tmp_path / 'records.jsonl'
        write_records(path, records)
        assert path.read_text(encoding='utf-8') == text

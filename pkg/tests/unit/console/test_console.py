"""Tests the typer interface type"""

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from pbb.console.entry import USAGE_ERROR, app, run_main
from pbb.core.resolution import BUDGET_VARIABLE
from pbb.test.data.variants import A, B, MU, NU, P, T

runner = CliRunner()

CHAIN = f'{{1/2: tau.D(tau.{P}), 1/3: tau.{P}, 1/6: p.D(0)}}'


class TestParse:
    """The parse command"""

    @staticmethod
    def test_nondet() -> None:
        """Processes echo with their Dirac distribution"""
        result = runner.invoke(app, ['parse', f'{A}+{B}'])
        assert result.exit_code == 0
        assert result.stdout.splitlines() == [f'{A} + {B}', f'= {{1: {A} + {B}}}']

    @staticmethod
    def test_prob_json() -> None:
        """Probabilistic processes report their denotation"""
        result = runner.invoke(app, ['parse', '--sort', 'prob', f'D({A}) +[1/2] D({B})', '--json'])
        assert result.exit_code == 0
        assert json.loads(result.stdout)['distribution'] == MU

    @staticmethod
    def test_error() -> None:
        """Malformed literals are usage errors"""
        assert run_main(['parse', 'a.']) == USAGE_ERROR


class TestStep:
    """The step command"""

    @staticmethod
    def test_blocked() -> None:
        """A blocking support state means no successor"""
        result = runner.invoke(app, ['step', MU, '--action', 'a'])
        assert result.exit_code == 1
        assert 'blocked by b.D(0)' in result.stdout

    @staticmethod
    def test_vertices() -> None:
        """Vertex successors are listed"""
        result = runner.invoke(app, ['step', A, '-a', 'a'])
        assert result.exit_code == 0
        assert '{1: 0}' in result.stdout

    @staticmethod
    def test_membership() -> None:
        """A given target is decided"""
        result = runner.invoke(app, ['step', A, '-a', 'a', '--target', '{1: 0}', '--json'])
        assert result.exit_code == 0
        assert json.loads(result.stdout)['found']

    @staticmethod
    def test_partial() -> None:
        """Partial τ-steps resolve part of the mass"""
        result = runner.invoke(app, ['step', NU, '-a', 'tau', '--target', MU, '--partial'])
        assert result.exit_code == 0

    @staticmethod
    def test_partial_visible() -> None:
        """Partial steps exist for τ only"""
        assert run_main(['step', NU, '-a', 'a', '--target', MU, '--partial']) == USAGE_ERROR


class TestTrace:
    """The trace command"""

    @staticmethod
    def test_reach(tmp_path: Path) -> None:
        """Schedules are printed and written as JSON lines

        Args:
            tmp_path: Temporary directory
        """
        records = tmp_path / 'schedule.jsonl'
        result = runner.invoke(app, ['trace', CHAIN, '{1: p.D(0)}', '--records', str(records)])
        assert result.exit_code == 0
        assert 'in 2 step(s)' in result.stdout
        lines = records.read_text(encoding='utf-8').splitlines()
        assert [json.loads(line)['index'] for line in lines] == [0, 1]

    @staticmethod
    def test_depth_refusal() -> None:
        """Exhausting a bounded search is inconclusive"""
        result = runner.invoke(app, ['trace', CHAIN, '{1: p.D(0)}', '--depth', '1'])
        assert result.exit_code == 2

    @staticmethod
    def test_weak_step() -> None:
        """A weak move followed by one visible step"""
        source = '{1/2: tau.D(a.D(0) + b.D(0)), 1/2: a.D(c.D(0))}'
        result = runner.invoke(app, ['trace', source, '{1/2: 0, 1/2: c.D(0)}', '--action', 'a', '--json'])
        assert result.exit_code == 0
        assert len(json.loads(result.stdout)['witnesses']) == 2


class TestEquivalence:
    """The check-strong and check-branching commands"""

    @staticmethod
    def test_strong() -> None:
        """Strong bisimilarity by refinement"""
        assert runner.invoke(app, ['check-strong', '--left', A, '--right', f'{A} + {A}']).exit_code == 0
        assert runner.invoke(app, ['check-strong', '--left', MU, '--right', NU]).exit_code == 1

    @staticmethod
    def test_search_and_check(tmp_path: Path) -> None:
        """A found certificate is written and accepted when read back

        Args:
            tmp_path: Temporary directory
        """
        path = tmp_path / 'certificate.json'
        found = runner.invoke(
            app, ['check-branching', '--left', MU, '--right', NU, '--search', '--write-certificate', str(path)]
        )
        assert found.exit_code == 0
        assert found.stdout.startswith('accepted')

        checked = runner.invoke(app, ['check-branching', '--left', MU, '--right', NU, '--certificate', str(path)])
        assert checked.exit_code == 0

    @staticmethod
    def test_rejected() -> None:
        """Deadlock fails weak decomposability"""
        result = runner.invoke(app, ['check-branching', '--left', MU, '--right', '{1: 0}', '--search', '--json'])
        assert result.exit_code == 1
        counterexample = json.loads(result.stdout)['counterexample']
        assert counterexample['clause'] == 'decomposition'
        assert not counterexample['discipline']

    @staticmethod
    def test_mode_required() -> None:
        """Exactly one of the two modes"""
        assert run_main(['check-branching', '--left', MU, '--right', NU]) == USAGE_ERROR

    @staticmethod
    def test_unrelated_certificate(tmp_path: Path) -> None:
        """Certificates must relate the pair

        Args:
            tmp_path: Temporary directory
        """
        path = tmp_path / 'certificate.json'
        path.write_text(json.dumps({'pairs': [[T, MU]], 'closures': ['symmetric']}), encoding='utf-8')
        assert run_main(['check-branching', '--left', MU, '--right', NU, '--certificate', str(path)]) == USAGE_ERROR


class TestStability:
    """The stabilize, classes and cancel commands"""

    @staticmethod
    def test_stabilize() -> None:
        """The intro distribution stabilizes"""
        result = runner.invoke(app, ['stabilize', NU])
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == f'stable: {MU}'
        assert 'weight 11/3 -> 2' in result.stdout

    @staticmethod
    def test_classes(tmp_path: Path) -> None:
        """Touched classes with the class vectors of the seeds

        Args:
            tmp_path: Temporary directory
        """
        seeds = tmp_path / 'seeds.txt'
        seeds.write_text(f'# intro\nmu = {MU}\nnu = {NU}\n', encoding='utf-8')
        result = runner.invoke(app, ['classes', '--seeds', str(seeds), '--json'])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert len(data['blocks']) == 3
        assert [vector['distribution'] for vector in data['vectors']] == ['mu', 'nu']

    @staticmethod
    def test_empty_seeds(tmp_path: Path) -> None:
        """Seeds files need at least one entry

        Args:
            tmp_path: Temporary directory
        """
        seeds = tmp_path / 'seeds.txt'
        seeds.write_text('# nothing\n', encoding='utf-8')
        assert run_main(['classes', '--seeds', str(seeds)]) == USAGE_ERROR

    @staticmethod
    def test_cancel() -> None:
        """A common remainder cancels"""
        arguments = ['--left', f'tau.D({A})', '--left-prime', A, '--remainder', B, '--remainder-prime', B]
        result = runner.invoke(app, ['cancel', *arguments, '--ratio', '1/2'])
        assert result.exit_code == 0
        assert result.stdout.startswith('accepted')


class TestFuzz:
    """The fuzz command"""

    @staticmethod
    def test_run() -> None:
        """A short seeded run passes"""
        result = runner.invoke(app, ['fuzz', '--suite', 'limit-residual', '--count', '3', '--json'])
        assert result.exit_code == 0
        assert json.loads(result.stdout)['count'] == 3

    @staticmethod
    def test_unknown_suite() -> None:
        """Unknown suites are usage errors"""
        assert run_main(['fuzz', '--suite', 'missing', '--count', '1']) == USAGE_ERROR


class TestOptions:
    """Global options and the environment"""

    @staticmethod
    def test_too_verbose() -> None:
        """At most two -v flags"""
        assert run_main(['-vvv', 'parse', '0']) == USAGE_ERROR

    @staticmethod
    def test_budget_override(monkeypatch: pytest.MonkeyPatch) -> None:
        """A malformed budget override is a configuration error

        Args:
            monkeypatch: Environment patching
        """
        monkeypatch.setenv(BUDGET_VARIABLE, 'many')
        assert run_main(['parse', '0']) == USAGE_ERROR

    @staticmethod
    def test_verbose() -> None:
        """Verbose runs still succeed"""
        assert run_main(['-vv', 'parse', '0']) == 0

    @staticmethod
    def test_unknown_option() -> None:
        """An unknown flag is a usage error, not a crash"""
        assert run_main(['parse', '0', '--bogus']) == USAGE_ERROR

    @staticmethod
    def test_missing_argument() -> None:
        """A missing argument is a usage error"""
        assert run_main(['parse']) == USAGE_ERROR

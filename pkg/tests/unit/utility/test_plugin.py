"""This module tests the plugin functionality"""

from importlib.metadata import EntryPoint

from pytest_mock import MockerFixture

from pbb.utility.plugin import Plugin, discover_plugins


class MockExampleSuite(Plugin):
    """A mock plugin

    With a longer description.
    """


class OtherExampleSuite(MockExampleSuite):
    """Another mock plugin"""


class ExampleSuite(Plugin):  # noqa: D101
    pass


class TestPlugin:
    """Tests the plugin functionality"""

    @staticmethod
    def test_plugin() -> None:
        """Test that the name and group come from the class name"""
        assert MockExampleSuite.name() == 'mock-example'
        assert MockExampleSuite.group() == 'suite'
        assert MockExampleSuite.id() == ('mock-example', 'suite')
        assert MockExampleSuite.entry_point_group() == 'pbb.suite'

    @staticmethod
    def test_summary() -> None:
        """Only the first docstring line"""
        assert MockExampleSuite.summary() == 'A mock plugin'
        assert ExampleSuite.summary() == ''


class TestDiscovery:
    """Entry point discovery"""

    @staticmethod
    def test_registered(mocker: MockerFixture) -> None:
        """Registered subclasses join the built-in types

        Args:
            mocker: Patching of the entry point lookup
        """
        entry = mocker.Mock(spec=EntryPoint, value='tests:OtherExampleSuite')
        entry.name = 'other-example'
        entry.load.return_value = OtherExampleSuite
        lookup = mocker.patch('pbb.utility.plugin.entry_points', return_value=[entry])

        found = discover_plugins(MockExampleSuite, [MockExampleSuite])
        lookup.assert_called_once_with(group='pbb.suite')
        assert found == {'mock-example': MockExampleSuite, 'other-example': OtherExampleSuite}

    @staticmethod
    def test_incompatible_skipped(mocker: MockerFixture) -> None:
        """Objects that do not derive from the base are ignored

        Args:
            mocker: Patching of the entry point lookup
        """
        entry = mocker.Mock(spec=EntryPoint, value='tests:ExampleSuite')
        entry.name = 'example'
        entry.load.return_value = ExampleSuite
        mocker.patch('pbb.utility.plugin.entry_points', return_value=[entry])
        assert discover_plugins(MockExampleSuite) == {}

"""Named plugin types and their discovery through entry points"""

import logging
from collections.abc import Iterable
from importlib.metadata import entry_points
from typing import Protocol

from pbb.utility.utility import TypeGroup, TypeID, TypeName, canonicalize_name

logger = logging.getLogger('pbb.utility')

ENTRY_POINT_PREFIX = 'pbb'


class Plugin(Protocol):
    """A type named after its class: `JointDecompositionSuite` is `joint-decomposition` in group `suite`"""

    @classmethod
    def id(cls) -> TypeID:
        """The name and group of the type"""
        return canonicalize_name(cls.__name__)

    @classmethod
    def name(cls) -> TypeName:
        """The name users select the type by"""
        return cls.id().name

    @classmethod
    def group(cls) -> TypeGroup:
        """The trailing word of the class name"""
        return cls.id().group

    @classmethod
    def entry_point_group(cls) -> str:
        """Where third parties register types of this group, e.g. `pbb.suite`"""
        return f'{ENTRY_POINT_PREFIX}.{cls.group()}'

    @classmethod
    def summary(cls) -> str:
        """The first line of the class docstring, empty when there is none"""
        return next(iter((cls.__doc__ or '').strip().splitlines()), '')


def discover_plugins[T: Plugin](base: type[T], builtin: Iterable[type[T]] = ()) -> dict[TypeName, type[T]]:
    """Collects the built-in types and those registered under the base's entry point group

    Built-in types win over registered types of the same name. Registered objects that are not
    subclasses of the base are skipped with a warning.

    Args:
        base: The plugin base type
        builtin: Types shipped with pbb

    Returns:
        Types by name
    """
    found: dict[TypeName, type[T]] = {plugin.name(): plugin for plugin in builtin}
    group = base.entry_point_group()
    for entry_point in entry_points(group=group):
        loaded = entry_point.load()
        if not (isinstance(loaded, type) and issubclass(loaded, base)):
            logger.warning(
                "Skipping '%s' in '%s': it does not derive from '%s'", entry_point.name, group, base.__name__
            )
            continue
        if (name := loaded.name()) in found and found[name] is not loaded:
            logger.info("Plugin '%s' from '%s' is shadowed by a built-in type", name, entry_point.value)
            continue
        found[name] = loaded
    return found

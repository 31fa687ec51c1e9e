"""Utility definitions"""

import re
from fractions import Fraction
from typing import Any, NamedTuple, NewType

TypeName = NewType('TypeName', str)
TypeGroup = NewType('TypeGroup', str)


class TypeID(NamedTuple):
    """Represents a type ID with a name and group."""

    name: TypeName
    group: TypeGroup


_canonicalize_regex = re.compile(r'((?<=[a-z])[A-Z]|(?<!\A)[A-Z](?=[a-z]))')


def canonicalize_name(name: str) -> TypeID:
    """Extracts the type identifier from an input string

    The trailing word is the group, the leading words are joined with hyphens into the name, so
    `JointDecompositionSuite` becomes `joint-decomposition` in group `suite`.

    Args:
        name: The string to parse

    Returns:
        The type identifier
    """
    sub = re.sub(_canonicalize_regex, r' \1', name)
    values = sub.split(' ')
    result = '-'.join(values[:-1])
    return TypeID(TypeName(result.lower()), TypeGroup(values[-1].lower()))


def canonicalize_type(input_type: type[Any]) -> TypeID:
    """Extracts the plugin identifier from a type

    Args:
        input_type: The input type to resolve

    Returns:
        The type identifier
    """
    return canonicalize_name(input_type.__name__)


def format_rational(value: Fraction) -> str:
    """Formats a rational the way the term grammar reads it back

    Args:
        value: The rational to format

    Returns:
        `p/q` in lowest terms, or the bare integer when the denominator is one
    """
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def require_probability(value: Fraction | int, what: str, *, positive: bool = False) -> Fraction:
    """Checks that a rational is a probability

    Args:
        value: The rational
        what: What the value is, for the error message
        positive: Whether zero is excluded

    Raises:
        ValueError: When the value lies outside [0, 1], or is zero when positive

    Returns:
        The value as a fraction
    """
    ratio = Fraction(value)
    if positive and not 0 < ratio <= 1:
        raise ValueError(f'{what} needs 0 < r <= 1, got {format_rational(ratio)}')
    if not 0 <= ratio <= 1:
        raise ValueError(f'{what} {format_rational(ratio)} is outside [0, 1]')
    return ratio

"""Data conversion routines"""

from collections.abc import Mapping
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError

from pbb.core.exception import ConfigError, ConfigException
from pbb.core.schema import Budget, CertificateFile
from pbb.core.utility import read_json
from pbb.distr.distribution import Distribution
from pbb.equiv.certificate import Certificate, Closure
from pbb.terms.parser import parse_literal
from pbb.utility.exception import ParseError

BUDGET_VARIABLE = 'PBB_BUDGET'
BUDGET_FIELDS = ('pairs', 'depth', 'denominator')


def resolve_model[T: BaseModel](model: type[T], data: Mapping[str, Any]) -> T:
    """Wraps the model construction in a configuration error

    Args:
        model: The model to create
        data: The input data to create the model from

    Raises:
        ConfigException: Raised when the data does not validate

    Returns:
        The instance of the model
    """
    try:
        return model.model_validate(data)
    except ValidationError as error:
        raise ConfigException.from_validation(f'invalid {model.__name__}', error) from error


def resolve_budget(environ: Mapping[str, str], base: Budget | None = None) -> Budget:
    """Applies the `PBB_BUDGET` override of pair count, weak depth and denominator bound

    Args:
        environ: The process environment
        base: The budget to override, the defaults when None

    Raises:
        ConfigException: One error per malformed field

    Returns:
        The budget with every non-blank field replaced
    """
    base = base or Budget()
    if not (value := environ.get(BUDGET_VARIABLE, '').strip()):
        return base

    fields = value.split(',')
    if len(fields) > len(BUDGET_FIELDS):
        raise ConfigException(
            f'invalid {BUDGET_VARIABLE}',
            [ConfigError(message=f'expected at most {len(BUDGET_FIELDS)} fields, got {len(fields)}')],
        )

    errors: list[ConfigError] = []
    update: dict[str, int] = {}
    for name, field in zip(BUDGET_FIELDS, fields, strict=False):
        if not (field := field.strip()):
            continue
        try:
            update[name] = int(field)
        except ValueError:
            errors.append(ConfigError(message=f"'{field}' is not an integer", location=name))
    if errors:
        raise ConfigException(f'invalid {BUDGET_VARIABLE}', errors)
    return resolve_model(Budget, base.model_dump() | update)


def _literal(text: str, location: str) -> Distribution:
    try:
        return parse_literal(text)
    except ParseError as error:
        raise ConfigException(
            'invalid certificate', [ConfigError(message=f'{error.error} at column {error.column}', location=location)]
        ) from error


def resolve_certificate(data: CertificateFile) -> Certificate:
    """Parses every literal of a certificate file

    Raises:
        ConfigException: When a literal does not parse
    """
    pairs = [
        (_literal(left, f'pairs.{index}.0'), _literal(right, f'pairs.{index}.1'))
        for index, (left, right) in enumerate(data.pairs)
    ]
    return Certificate.of(pairs, *(Closure(flag) for flag in data.closures))


def read_certificate(path: Path) -> Certificate:
    """Reads a certificate from a JSON file"""
    return resolve_certificate(resolve_model(CertificateFile, read_json(path)))


def read_seeds(text: str) -> dict[str, Distribution]:
    """Parses a seeds file of `name = literal` lines

    Blank lines and lines starting with '#' are skipped.

    Args:
        text: The file content

    Raises:
        ConfigException: One error per malformed line

    Returns:
        The named distributions in file order
    """
    seeds: dict[str, Distribution] = {}
    errors: list[ConfigError] = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not (line := line.strip()) or line.startswith('#'):
            continue
        name, separator, literal = line.partition('=')
        if not separator or not (name := name.strip()):
            errors.append(ConfigError(message="expected 'name = literal'", location=f'line {number}'))
            continue
        if name in seeds:
            errors.append(ConfigError(message=f"duplicate name '{name}'", location=f'line {number}'))
            continue
        try:
            seeds[name] = parse_literal(literal.strip())
        except ParseError as error:
            errors.append(ConfigError(message=error.error, location=f'line {number}'))
    if errors:
        raise ConfigException('invalid seeds file', errors)
    return seeds

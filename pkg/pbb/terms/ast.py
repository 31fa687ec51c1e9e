"""AST, printer and complexity measure for the two-sorted process syntax

Non-deterministic processes are `0`, `α.P` and `E + E`; probabilistic processes are `D(E)` and
`P +[r] P`. All nodes are frozen values, so terms can be shared, hashed and used as dictionary keys.
"""

import re
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import cache

from pbb.utility.utility import format_rational, require_probability

type NTerm = Nil | Prefix | Choice
type PTerm = Dirac | PChoice
type Term = NTerm | PTerm

TAU_NAME = 'tau'

_action_regex = re.compile(r'[a-z][a-zA-Z0-9_]*')


class Sort(StrEnum):
    """The syntactic sorts a literal can be read as"""

    NONDET = 'nondet'
    PROB = 'prob'
    DISTRIBUTION = 'distribution'


@dataclass(frozen=True, slots=True)
class Action:
    """An action label; `tau` is the internal action"""

    name: str

    def __post_init__(self) -> None:
        """Rejects names outside the action alphabet"""
        if not _action_regex.fullmatch(self.name):
            raise ValueError(f"'{self.name}' is not a valid action name")

    @property
    def silent(self) -> bool:
        """Whether this is the internal action"""
        return self.name == TAU_NAME

    def __str__(self) -> str:
        """The action name"""
        return self.name


TAU = Action(TAU_NAME)


@dataclass(frozen=True, slots=True)
class Nil:
    """The inactive process `0`"""


@dataclass(frozen=True, slots=True)
class Prefix:
    """Action prefix `α.P`"""

    action: Action
    body: PTerm


@dataclass(frozen=True, slots=True)
class Choice:
    """Non-deterministic choice `E + F`"""

    left: NTerm
    right: NTerm


@dataclass(frozen=True, slots=True)
class Dirac:
    """The Dirac embedding `D(E)`"""

    body: NTerm


@dataclass(frozen=True, slots=True)
class PChoice:
    """Probabilistic choice `P +[r] Q`, taking the left branch with probability r"""

    left: PTerm
    ratio: Fraction
    right: PTerm

    def __post_init__(self) -> None:
        """Normalizes the ratio and checks it is a probability"""
        ratio = require_probability(self.ratio, 'probabilistic choice ratio')
        object.__setattr__(self, 'ratio', ratio)


NTERM_TYPES = (Nil, Prefix, Choice)
PTERM_TYPES = (Dirac, PChoice)


def sort_of(term: Term) -> Sort:
    """The sort a term belongs to

    Args:
        term: The term

    Returns:
        `nondet` or `prob`
    """
    return Sort.NONDET if isinstance(term, NTERM_TYPES) else Sort.PROB


@cache
def complexity(term: Term) -> int:
    """The complexity measure c

    Args:
        term: The term to measure

    Returns:
        c(0)=0, c(α.P)=c(P)+1, c(E+F)=c(E)+c(F), c(D(E))=c(E)+1, c(P +[r] Q)=c(P)+c(Q)
    """
    match term:
        case Nil():
            return 0
        case Prefix(_, body):
            return complexity(body) + 1
        case Choice(left, right):
            return complexity(left) + complexity(right)
        case Dirac(body):
            return complexity(body) + 1
        case PChoice(left, _, right):
            return complexity(left) + complexity(right)
    raise TypeError(f'not a term: {term!r}')


@cache
def format_term(term: Term) -> str:
    """Prints a term in canonical form

    `+` and `+[r]` associate to the left, so only a right operand of the same operator is parenthesized.
    A prefix body that is a probabilistic choice is always parenthesized.

    Args:
        term: The term to print

    Returns:
        Text that parses back to the same term
    """
    match term:
        case Nil():
            return '0'
        case Prefix(action, body):
            inner = format_term(body)
            return f'{action}.({inner})' if isinstance(body, PChoice) else f'{action}.{inner}'
        case Choice(left, right):
            right_text = f'({format_term(right)})' if isinstance(right, Choice) else format_term(right)
            return f'{format_term(left)} + {right_text}'
        case Dirac(body):
            return f'D({format_term(body)})'
        case PChoice(left, ratio, right):
            right_text = f'({format_term(right)})' if isinstance(right, PChoice) else format_term(right)
            return f'{format_term(left)} +[{format_rational(ratio)}] {right_text}'
    raise TypeError(f'not a term: {term!r}')


def term_key(term: Term) -> str:
    """Sort key giving the canonical order of terms"""
    return format_term(term)


def prefix(action: str | Action, body: PTerm) -> Prefix:
    """Shorthand constructor for `α.P`"""
    return Prefix(action if isinstance(action, Action) else Action(action), body)


def choice(*summands: NTerm) -> NTerm:
    """Left-associated sum of summands, `0` when empty"""
    if not summands:
        return Nil()
    result = summands[0]
    for summand in summands[1:]:
        result = Choice(result, summand)
    return result


def summands(term: NTerm) -> tuple[NTerm, ...]:
    """The non-choice operands of a (nested) choice"""
    if isinstance(term, Choice):
        return summands(term.left) + summands(term.right)
    return (term,)

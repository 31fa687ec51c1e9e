"""Recursive descent parser for terms and distribution literals

Grammar::

    E    ::= '0' | ACT '.' P | E '+' E | '(' E ')'
    P    ::= 'D' '(' E ')' | P '+[' RAT ']' P | '(' P ')'
    DIST ::= '{' RAT ':' E (',' RAT ':' E)* '}'
    ACT  ::= 'tau' | [a-z][a-zA-Z0-9_]*
    RAT  ::= INT ('/' INT)?

The prefix dot binds tighter than either choice, both choices associate to the left.
"""

import re
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction

from pbb.distr.distribution import Distribution
from pbb.semantics.universe import den
from pbb.terms.ast import Action, Choice, Dirac, Nil, NTerm, PChoice, Prefix, PTerm, Sort
from pbb.utility.exception import ParseError

_token_regex = re.compile(
    r'(?P<space>\s+)|(?P<int>\d+)|(?P<ident>[a-z][a-zA-Z0-9_]*)|(?P<dirac>D)'
    r'|(?P<pchoice>\+\s*\[)|(?P<symbol>[+.()\]{}:,/])'
)


@dataclass(frozen=True, slots=True)
class Token:
    """A lexical token with its 1-based source position"""

    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> Iterator[Token]:
    """Splits a literal into tokens, skipping whitespace

    Args:
        text: The literal

    Raises:
        ParseError: On a character no token starts with

    Yields:
        The tokens in order
    """
    position = 0
    line = 1
    line_start = 0
    while position < len(text):
        match = _token_regex.match(text, position)
        if match is None:
            raise ParseError(f"unexpected character '{text[position]}'", line, position - line_start + 1)

        kind = match.lastgroup or 'symbol'
        if kind != 'space':
            token_text = '+[' if kind == 'pchoice' else match.group()
            yield Token(kind, token_text, line, position - line_start + 1)

        for offset, character in enumerate(match.group()):
            if character == '\n':
                line += 1
                line_start = position + offset + 1
        position = match.end()


class TokenStream:
    """Cursor over the token sequence with one token of lookahead beyond the current one"""

    def __init__(self, text: str) -> None:
        """Initializes the stream

        Args:
            text: The literal to tokenize
        """
        self._tokens = list(tokenize(text))
        self._index = 0
        self._end_line = text.count('\n') + 1
        self._end_column = len(text) - text.rfind('\n')

    def peek(self, offset: int = 0) -> Token | None:
        """The token `offset` places ahead of the cursor, if any"""
        index = self._index + offset
        return self._tokens[index] if index < len(self._tokens) else None

    @property
    def finished(self) -> bool:
        """Whether every token has been consumed"""
        return self._index >= len(self._tokens)

    def consume(self) -> Token:
        """Takes the current token

        Raises:
            ParseError: At the end of the input
        """
        token = self.peek()
        if token is None:
            raise self.error('unexpected end of input')
        self._index += 1
        return token

    def accept(self, text: str) -> Token | None:
        """Consumes the current token if its text matches"""
        token = self.peek()
        if token is None or token.text != text:
            return None
        self._index += 1
        return token

    def expect(self, text: str) -> Token:
        """Consumes a token with the given text

        Raises:
            ParseError: When the current token differs
        """
        token = self.accept(text)
        if token is None:
            raise self.error(f"expected '{text}'")
        return token

    def error(self, message: str) -> ParseError:
        """Builds a parse error positioned at the current token"""
        token = self.peek()
        if token is None:
            return ParseError(f'{message} at end of input', self._end_line, self._end_column)
        return ParseError(f"{message}, found '{token.text}'", token.line, token.column)


def parse_rational(stream: TokenStream) -> Fraction:
    """RAT ::= INT ('/' INT)?, reduced to lowest terms"""
    token = stream.peek()
    if token is None or token.kind != 'int':
        raise stream.error('expected a rational')
    stream.consume()
    numerator = int(token.text)
    if stream.accept('/') is None:
        return Fraction(numerator)

    denominator_token = stream.peek()
    if denominator_token is None or denominator_token.kind != 'int':
        raise stream.error('expected a denominator')
    stream.consume()
    denominator = int(denominator_token.text)
    if denominator == 0:
        raise ParseError('zero denominator', denominator_token.line, denominator_token.column)
    return Fraction(numerator, denominator)


def parse_probability(stream: TokenStream) -> Fraction:
    """A rational that must lie in [0, 1]"""
    token = stream.peek()
    value = parse_rational(stream)
    if value > 1 and token is not None:
        raise ParseError(f'rational {value} is outside [0, 1]', token.line, token.column)
    return value


def parse_nondet(stream: TokenStream) -> NTerm:
    """E ::= E '+' E with left associativity"""
    term = parse_nondet_primary(stream)
    while (token := stream.peek()) is not None and token.text == '+':
        stream.consume()
        term = Choice(term, parse_nondet_primary(stream))
    return term


def parse_nondet_primary(stream: TokenStream) -> NTerm:
    """'0' | ACT '.' P | '(' E ')'"""
    token = stream.peek()
    if token is None:
        raise stream.error('expected a non-deterministic process')

    if token.kind == 'int':
        if token.text != '0':
            raise stream.error("expected '0'")
        stream.consume()
        return Nil()

    if token.kind == 'ident':
        stream.consume()
        stream.expect('.')
        return Prefix(Action(token.text), parse_prob_primary(stream))

    if stream.accept('('):
        term = parse_nondet(stream)
        stream.expect(')')
        return term

    raise stream.error('expected a non-deterministic process')


def parse_prob(stream: TokenStream) -> PTerm:
    """P ::= P '+[' RAT ']' P with left associativity"""
    term = parse_prob_primary(stream)
    while stream.accept('+[') is not None:
        ratio = parse_probability(stream)
        stream.expect(']')
        term = PChoice(term, ratio, parse_prob_primary(stream))
    return term


def parse_prob_primary(stream: TokenStream) -> PTerm:
    """'D' '(' E ')' | '(' P ')'"""
    if stream.accept('D') is not None:
        stream.expect('(')
        body = parse_nondet(stream)
        stream.expect(')')
        return Dirac(body)

    if stream.accept('(') is not None:
        term = parse_prob(stream)
        stream.expect(')')
        return term

    raise stream.error('expected a probabilistic process')


def parse_distribution_literal(stream: TokenStream) -> Distribution:
    """DIST ::= '{' RAT ':' E (',' RAT ':' E)* '}'"""
    start = stream.expect('{')
    entries: list[tuple[NTerm, Fraction]] = []
    while True:
        weight = parse_probability(stream)
        stream.expect(':')
        entries.append((parse_nondet(stream), weight))
        if stream.accept(',') is None:
            break
    stream.expect('}')

    total = sum((weight for _, weight in entries), Fraction(0))
    if total != 1:
        raise ParseError(f'distribution weights sum to {total}, not 1', start.line, start.column)
    return Distribution.from_pairs(entries)


def parse(text: str, sort: Sort = Sort.NONDET) -> NTerm | PTerm | Distribution:
    """Parses a complete literal of the given sort

    Args:
        text: The literal
        sort: What the literal denotes

    Raises:
        ParseError: With the line and column of the first offending token

    Returns:
        The unique AST, or the distribution for distribution literals
    """
    stream = TokenStream(text)
    result: NTerm | PTerm | Distribution
    try:
        match sort:
            case Sort.NONDET:
                result = parse_nondet(stream)
            case Sort.PROB:
                result = parse_prob(stream)
            case Sort.DISTRIBUTION:
                result = parse_distribution_literal(stream)
    except ValueError as error:
        if isinstance(error, ParseError):
            raise
        raise stream.error(str(error)) from error

    if not stream.finished:
        raise stream.error('unexpected trailing input')
    return result


def parse_nterm(text: str) -> NTerm:
    """Parses a non-deterministic process"""
    result = parse(text, Sort.NONDET)
    assert not isinstance(result, Distribution | Dirac | PChoice)
    return result


def parse_pterm(text: str) -> PTerm:
    """Parses a probabilistic process"""
    result = parse(text, Sort.PROB)
    assert isinstance(result, Dirac | PChoice)
    return result


def parse_distribution(text: str) -> Distribution:
    """Parses a distribution literal"""
    result = parse(text, Sort.DISTRIBUTION)
    assert isinstance(result, Distribution)
    return result


def parse_literal(text: str) -> Distribution:
    """Reads any literal as a distribution

    A distribution literal is taken as is, a probabilistic process by its denotation and a
    non-deterministic process by its Dirac distribution.

    Args:
        text: The literal

    Raises:
        ParseError: When the text is none of the three

    Returns:
        The distribution
    """
    stripped = text.lstrip()
    if stripped.startswith('{'):
        return parse_distribution(text)
    if stripped.startswith('D'):
        return den(parse_pterm(text))
    try:
        return Distribution.dirac(parse_nterm(text))
    except ParseError as nondet_error:
        try:
            return den(parse_pterm(text))
        except ParseError:
            raise nondet_error from None

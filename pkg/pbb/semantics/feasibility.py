"""Exact linear feasibility over the rationals

A thin layer over a z3 linear real arithmetic solver. Every query in the package (hull membership,
combined steps, weak reach, certificate closure membership) is phrased as a `LinearSystem`, and models are read
back as exact `Fraction` values.
"""

import logging
from collections.abc import Iterable, Mapping
from fractions import Fraction
from itertools import count

import z3

from pbb.terms.ast import NTerm

type Expr = z3.ArithRef
type SymbolicMeasure = Mapping[NTerm, Expr]

logger = logging.getLogger('pbb.semantics')


def constant(value: Fraction | int) -> Expr:
    """The exact rational as a solver term"""
    value = Fraction(value)
    return z3.RatVal(value.numerator, value.denominator)


def total(terms: Iterable[Expr]) -> Expr:
    """The sum of solver terms, exactly zero when empty"""
    terms = list(terms)
    if not terms:
        return constant(0)
    if len(terms) == 1:
        return terms[0]
    return z3.Sum(terms)


class Solution:
    """A satisfying assignment of a linear system"""

    def __init__(self, model: z3.ModelRef) -> None:
        """Initializes the solution

        Args:
            model: The solver model
        """
        self._model = model

    def value(self, expression: Expr) -> Fraction:
        """Evaluates a term under the assignment, unconstrained variables reading as zero"""
        result = self._model.eval(expression, model_completion=True)
        return Fraction(result.as_fraction())

    def measure(self, measure: SymbolicMeasure) -> dict[NTerm, Fraction]:
        """Evaluates every entry of a symbolic measure, dropping zeros"""
        values = {term: self.value(expression) for term, expression in measure.items()}
        return {term: value for term, value in values.items() if value != 0}


class LinearSystem:
    """A conjunction of linear constraints over non-negative rational variables"""

    _ids = count()

    def __init__(self, name: str) -> None:
        """Initializes an empty system

        Args:
            name: Label used in variable names and log output
        """
        self._name = name
        self._solver = z3.SolverFor('QF_LRA')
        self._prefix = f'{name}{next(self._ids)}'
        self._variables = 0

    @property
    def name(self) -> str:
        """The system label"""
        return self._name

    @property
    def variable_count(self) -> int:
        """The number of variables created so far"""
        return self._variables

    def variable(self, label: str, non_negative: bool = True) -> Expr:
        """Creates a fresh rational variable

        Args:
            label: Readable part of the variable name
            non_negative: Whether to add the constraint `x >= 0`

        Returns:
            The variable
        """
        self._variables += 1
        variable = z3.Real(f'{self._prefix}.{label}.{self._variables}')
        if non_negative:
            self._solver.add(variable >= 0)
        return variable

    def require(self, *constraints: z3.BoolRef) -> None:
        """Adds constraints"""
        self._solver.add(*constraints)

    def equal_measures(self, left: Mapping[NTerm, Expr | Fraction], right: Mapping[NTerm, Expr | Fraction]) -> None:
        """Requires two (possibly symbolic) measures to agree on every term, missing entries reading as zero"""
        for term in set(left) | set(right):
            lhs = as_expr(left.get(term, Fraction(0)))
            rhs = as_expr(right.get(term, Fraction(0)))
            self._solver.add(lhs == rhs)

    def describe(self) -> str:
        """The system as an SMT-LIB s-expression"""
        return self._solver.sexpr()

    def solve(self) -> Solution | None:
        """Decides the system

        Returns:
            A solution, or None when the system is infeasible
        """
        result = self._solver.check()
        if result == z3.sat:
            return Solution(self._solver.model())
        if result == z3.unknown:
            logger.warning('Solver gave up on %s: %s', self._name, self._solver.reason_unknown())
        else:
            logger.debug('Refused %s:\n%s', self._name, self._solver.sexpr())
        return None


def as_expr(value: Expr | Fraction | int) -> Expr:
    """A constant or solver term as a solver term"""
    if isinstance(value, Fraction | int):
        return constant(value)
    return value


def scaled(coefficient: Fraction | Expr, measure: Mapping[NTerm, Fraction]) -> dict[NTerm, Expr]:
    """The measure with every weight multiplied by a coefficient, as solver terms"""
    return {term: as_expr(coefficient) * constant(weight) for term, weight in measure.items()}


def accumulate_symbolic(parts: Iterable[Mapping[NTerm, Expr]]) -> dict[NTerm, Expr]:
    """Pointwise sum of symbolic measures"""
    collected: dict[NTerm, list[Expr]] = {}
    for part in parts:
        for term, expression in part.items():
            collected.setdefault(term, []).append(expression)
    return {term: total(expressions) for term, expressions in collected.items()}

"""Constructive combinatorics on distributions

`joint_decompose` refines two presentations of the same distribution into a common matrix of parts, and
`limit_residual` splits a distribution into a scaled copy of another plus a residual.
"""

from fractions import Fraction

from pbb.distr.distribution import Distribution, Mixture, accumulate, dirac, mix
from pbb.terms.ast import Nil
from pbb.utility.exception import DistributionError

type Cell = tuple[Fraction, Distribution]
type Matrix = tuple[tuple[Cell, ...], ...]

PLACEHOLDER = dirac(Nil())


def joint_decompose(left: Mixture, right: Mixture) -> Matrix:
    """Refines two mixtures of the same distribution ξ into a common matrix

    With ξ = ⊕ p_i · μ_i = ⊕ q_j · ν_j, the cell (i, j) holds
    r_ij = Σ_x p_i μ_i(x) q_j ν_j(x) / ξ(x) and ρ_ij(x) = p_i μ_i(x) q_j ν_j(x) / (ξ(x) r_ij).
    Rows sum to p_i, columns to q_j, and p_i · μ_i = Σ_j r_ij · ρ_ij, q_j · ν_j = Σ_i r_ij · ρ_ij.
    Cells with r_ij = 0 carry δ(0).

    Args:
        left: The mixture indexed by i
        right: The mixture indexed by j

    Raises:
        DistributionError: When the two mixtures denote different distributions

    Returns:
        The matrix of (r_ij, ρ_ij), rows indexed by i
    """
    xi = mix(left)
    if mix(right) != xi:
        raise DistributionError(f'mixtures differ: {xi} and {mix(right)}')

    rows: list[tuple[Cell, ...]] = []
    for p, mu in left:
        row: list[Cell] = []
        for q, nu in right:
            joint = {x: p * mu[x] * q * nu[x] / xi[x] for x in xi if mu[x] and nu[x]}
            weight = sum(joint.values(), Fraction(0))
            if weight == 0:
                row.append((Fraction(0), PLACEHOLDER))
            else:
                row.append((weight, Distribution.from_measure({x: value / weight for x, value in joint.items()})))
        rows.append(tuple(row))
    return tuple(rows)


def row_sums(matrix: Matrix) -> tuple[Fraction, ...]:
    """Σ_j r_ij for every row"""
    return tuple(sum((weight for weight, _ in row), Fraction(0)) for row in matrix)


def column_sums(matrix: Matrix) -> tuple[Fraction, ...]:
    """Σ_i r_ij for every column"""
    if not matrix:
        return ()
    return tuple(sum((row[j][0] for row in matrix), Fraction(0)) for j in range(len(matrix[0])))


def row_part(matrix: Matrix, index: int) -> Distribution:
    """⊕_j (r_ij / p_i) · ρ_ij, the reassembled left part i"""
    row = matrix[index]
    total = sum((weight for weight, _ in row), Fraction(0))
    return Distribution.from_measure(accumulate((weight / total, part) for weight, part in row))


def column_part(matrix: Matrix, index: int) -> Distribution:
    """⊕_i (r_ij / q_j) · ρ_ij, the reassembled right part j"""
    column = [row[index] for row in matrix]
    total = sum((weight for weight, _ in column), Fraction(0))
    return Distribution.from_measure(accumulate((weight / total, part) for weight, part in column))


def limit_residual(component: Distribution, limit: Distribution) -> tuple[Fraction, Distribution]:
    """Splits μ_i = (1 − r) · μ ⊕ r · μ'

    r = 1 − min over x in spt(μ) of μ_i(x) / μ(x); the residual is μ itself when r = 0 and
    μ'(x) = (μ_i(x) − (1 − r) μ(x)) / r otherwise.

    Args:
        component: μ_i
        limit: μ

    Returns:
        r in [0, 1] and the residual μ'
    """
    ratio = 1 - min(component[x] / limit[x] for x in limit)
    if ratio == 0:
        return Fraction(0), limit

    support = set(component) | set(limit)
    residual = {x: (component[x] - (1 - ratio) * limit[x]) / ratio for x in support}
    return ratio, Distribution.from_measure(residual)

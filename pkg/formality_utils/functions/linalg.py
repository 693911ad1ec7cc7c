"""
Exact linear algebra over the rationals.

Matrices are plain lists of rows of :class:`~fractions.Fraction`. Row
reduction is delegated to sympy's ``DomainMatrix`` over ``QQ`` so every
result is exact and pivots are chosen deterministically (first nonzero
entry in column order).
"""
import logging
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ..exceptions import ContractViolation

logger = logging.getLogger(__name__)


def _to_domain(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _from_domain(value):
    return Fraction(int(value.numerator), int(value.denominator))


def check_shape(rows, ncols):
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise ContractViolation(
                f'Row {i} has {len(row)} entries, expected {ncols}.'
            )


def domain_matrix(rows, ncols):
    check_shape(rows, ncols)
    return DomainMatrix(
        [[_to_domain(entry) for entry in row] for row in rows],
        (len(rows), ncols),
        QQ
    )


def from_domain_matrix(matrix):
    return [[_from_domain(entry) for entry in row] for row in matrix.to_list()]


def zeros(nrows, ncols):
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def identity(size):
    matrix = zeros(size, size)
    for i in range(size):
        matrix[i][i] = Fraction(1)
    return matrix


def transpose(rows, ncols):
    check_shape(rows, ncols)
    return [[row[j] for row in rows] for j in range(ncols)]


def matmul(left, right, inner):
    """
    Product of an ``m x inner`` matrix with an ``inner x n`` matrix.
    """
    check_shape(left, inner)
    if len(right) != inner:
        raise ContractViolation(
            f'Cannot multiply: inner dimensions {inner} and {len(right)} differ.'
        )
    ncols = len(right[0]) if right else 0
    result = zeros(len(left), ncols)
    for i, row in enumerate(left):
        for k, entry in enumerate(row):
            if entry:
                right_row = right[k]
                for j in range(ncols):
                    if right_row[j]:
                        result[i][j] += entry * right_row[j]
    return result


def matvec(rows, vector, ncols):
    check_shape(rows, ncols)
    if len(vector) != ncols:
        raise ContractViolation(
            f'Vector has {len(vector)} entries, expected {ncols}.'
        )
    return [
        sum((entry * vector[j] for j, entry in enumerate(row) if entry),
            Fraction(0))
        for row in rows
    ]


def rref(rows, ncols):
    """
    Reduced row echelon form of a matrix.

    :param rows: the matrix as a list of rows
    :param ncols: number of columns (needed when ``rows`` is empty)
    :returns: ``(reduced_rows, pivots)``; ``pivots`` is a tuple of column
        indices, one per nonzero row of ``reduced_rows``
    """
    check_shape(rows, ncols)
    if not rows or not ncols:
        return [list(row) for row in rows], ()
    reduced, pivots = domain_matrix(rows, ncols).rref()
    return from_domain_matrix(reduced), tuple(pivots)


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def kernel_basis(rows, ncols):
    """
    Exact basis of the null space ``{x : A x = 0}``.

    ::

        kernel_basis([[1, 1]], 2)  # [[-1, 1]]

    One vector is produced per free column, in column order.
    """
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * ncols
        vector[free] = Fraction(1)
        for row_index, pivot in enumerate(pivots):
            vector[pivot] = -reduced[row_index][free]
        basis.append(vector)
    assert len(basis) + len(pivots) == ncols
    return basis


def image_basis(rows, ncols):
    """
    Basis of the column space: the pivot columns of ``A``.
    """
    _, pivots = rref(rows, ncols)
    return [[row[j] for row in rows] for j in pivots]


def solve_linear(rows, rhs, ncols):
    """
    Find one exact solution of ``A x = b``.

    Free variables are set to zero, so the returned representative is a
    deterministic function of the input.

    :param rows: the matrix ``A`` as a list of rows
    :param rhs: the vector ``b``; must have one entry per row of ``A``
    :param ncols: number of columns of ``A``
    :returns: the solution as a list of fractions, or ``None`` when ``b`` is
        outside the column space of ``A``
    """
    check_shape(rows, ncols)
    if len(rhs) != len(rows):
        raise ContractViolation(
            f'Right hand side has {len(rhs)} entries, matrix has {len(rows)} rows.'
        )
    if not rows:
        return [Fraction(0)] * ncols
    augmented = [list(row) + [Fraction(value)] for row, value in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    solution = [Fraction(0)] * ncols
    for row_index, pivot in enumerate(pivots):
        solution[pivot] = reduced[row_index][ncols]
    return solution


def left_annihilator(rows, rhs, ncols):
    """
    A functional ``y`` with ``y A = 0`` and ``y . b != 0``.

    Such a ``y`` exists exactly when ``A x = b`` has no solution; it is an
    exact certificate of infeasibility. Returns ``None`` when the system is
    solvable.
    """
    check_shape(rows, ncols)
    nrows = len(rows)
    for candidate in kernel_basis(transpose(rows, ncols), nrows):
        if sum((c * b for c, b in zip(candidate, rhs) if c), Fraction(0)):
            return candidate
    return None


def inverse(rows):
    """
    Exact inverse of a square matrix.
    """
    size = len(rows)
    if not size:
        return []
    matrix = domain_matrix(rows, size)
    if matrix.det() == QQ(0):
        raise ContractViolation('Matrix is singular.')
    return from_domain_matrix(matrix.inv())


def determinant(rows):
    size = len(rows)
    if not size:
        return Fraction(1)
    return _from_domain(domain_matrix(rows, size).det())


def is_positive_definite(rows):
    """
    Sylvester's criterion: every leading principal minor is positive.
    """
    size = len(rows)
    check_shape(rows, size)
    return all(
        determinant([row[:k] for row in rows[:k]]) > 0
        for k in range(1, size + 1)
    )

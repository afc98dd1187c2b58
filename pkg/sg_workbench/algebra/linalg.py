"""Exact linear algebra over a Field.

Row operations are vectorized with outer products. Matrices act on
column vectors; "basis rows" are matrices whose rows are basis vectors.
"""
from typing import Optional, Sequence, Tuple

import numpy as np

from sg_workbench.algebra.fields import Field


def as_matrix(field: Field, matrix, cols: Optional[int] = None) -> np.ndarray:
    result = np.array(matrix, dtype=field.dtype, copy=True)
    if result.ndim == 1:
        result = result.reshape(1, -1) if result.size else field.zeros(0, cols or 0)
    return field.reduce(result)


def rref(field: Field, matrix) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Reduced row echelon form.

    Arguments:
        field {Field} -- scalar field
        matrix {np.ndarray} -- 2d array

    Returns:
        Tuple[np.ndarray, Tuple[int, ...]] -- reduced matrix and pivot columns
    """
    reduced = as_matrix(field, matrix)
    rows, cols = reduced.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        candidates = np.nonzero(reduced[row:, col] != 0)[0]
        if candidates.size == 0:
            continue
        pivot_row = row + int(candidates[0])
        if pivot_row != row:
            reduced[[row, pivot_row]] = reduced[[pivot_row, row]]
        reduced[row] = field.reduce(reduced[row] * field.inverse(reduced[row, col]))
        column = reduced[:, col].copy()
        column[row] = 0
        targets = np.nonzero(column != 0)[0]
        if targets.size:
            reduced[targets] = field.reduce(
                reduced[targets] - np.outer(column[targets], reduced[row]))
        pivots.append(col)
        row += 1
    return reduced, tuple(pivots)


def rank(field: Field, matrix) -> int:
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0
    return len(rref(field, matrix)[1])


def nullspace(field: Field, matrix, cols: Optional[int] = None) -> np.ndarray:
    """Basis rows of {x : matrix @ x = 0}."""
    matrix = np.asarray(matrix)
    n = matrix.shape[1] if matrix.ndim == 2 else cols
    if matrix.size == 0:
        return field.identity(n)
    reduced, pivots = rref(field, matrix)
    free = [c for c in range(n) if c not in pivots]
    basis = field.zeros(len(free), n)
    for k, col in enumerate(free):
        basis[k, col] = field.scalar(1)
        for i, pivot in enumerate(pivots):
            basis[k, pivot] = field.neg(reduced[i, col])
    return basis


def row_basis(field: Field, rows, cols: int) -> np.ndarray:
    """Basis rows for the span of the given rows."""
    rows = np.asarray(rows)
    if rows.size == 0:
        return field.zeros(0, cols)
    reduced, pivots = rref(field, rows)
    return reduced[:len(pivots)].copy()


def independent_rows(field: Field, rows) -> Tuple[int, ...]:
    """Indices of a maximal independent subset of rows, earliest first."""
    rows = np.asarray(rows)
    if rows.size == 0:
        return ()
    return rref(field, rows.T)[1]


def column_basis(field: Field, matrix) -> np.ndarray:
    """Independent columns of matrix spanning its column space."""
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return field.zeros(matrix.shape[0], 0)
    pivots = rref(field, matrix)[1]
    return matrix[:, list(pivots)].copy()


def as_block(field: Field, block, rows: Optional[int] = None, cols: Optional[int] = None) -> np.ndarray:
    """2d array with `rows` rows or `cols` columns; a 1d block is one column (or one row).

    Zero-length axes keep their shape, so empty Hom or cover bases pass through.
    """
    block = np.asarray(block, dtype=field.dtype)
    if block.ndim == 2 and rows in (None, block.shape[0]) and cols in (None, block.shape[1]):
        return block
    fixed = rows if rows is not None else cols
    if block.ndim == 1 and block.size == fixed:
        return block.reshape(fixed, 1) if rows is not None else block.reshape(1, fixed)
    if fixed == 0:
        if block.size:
            raise ValueError(f"Cannot fit {block.shape} into a block with an empty axis")
        return field.zeros(0, 0)
    return block.reshape(rows, -1) if rows is not None else block.reshape(-1, cols)


def hstack(field: Field, blocks: Sequence[np.ndarray], rows: int) -> np.ndarray:
    blocks = [as_block(field, block, rows=rows) for block in blocks]
    if not blocks:
        return field.zeros(rows, 0)
    return np.concatenate(blocks, axis=1)


def vstack(field: Field, blocks: Sequence[np.ndarray], cols: int) -> np.ndarray:
    blocks = [as_block(field, block, cols=cols) for block in blocks]
    if not blocks:
        return field.zeros(0, cols)
    return np.concatenate(blocks, axis=0)


def block_diagonal(field: Field, blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(block.shape[0] for block in blocks)
    cols = sum(block.shape[1] for block in blocks)
    result = field.zeros(rows, cols)
    r = c = 0
    for block in blocks:
        result[r:r + block.shape[0], c:c + block.shape[1]] = block
        r += block.shape[0]
        c += block.shape[1]
    return result


def solve(field: Field, matrix, rhs) -> Optional[np.ndarray]:
    """One solution X of matrix @ X = rhs, or None if inconsistent.

    Arguments:
        matrix {np.ndarray} -- m x n coefficients
        rhs {np.ndarray} -- m vector or m x k matrix

    Returns:
        Optional[np.ndarray] -- n vector or n x k matrix
    """
    matrix = np.asarray(matrix, dtype=field.dtype)
    rhs = np.asarray(rhs, dtype=field.dtype)
    vector = rhs.ndim == 1
    rhs = as_block(field, rhs, rows=matrix.shape[0])
    m, n = matrix.shape
    k = rhs.shape[1]
    if m == 0:
        solution = field.zeros(n, k)
    else:
        reduced, pivots = rref(field, np.concatenate([matrix, rhs], axis=1))
        if any(pivot >= n for pivot in pivots):
            return None
        solution = field.zeros(n, k)
        for i, pivot in enumerate(pivots):
            solution[pivot] = reduced[i, n:]
    return solution.reshape(n) if vector else solution


def inverse(field: Field, matrix) -> Optional[np.ndarray]:
    matrix = np.asarray(matrix)
    n = matrix.shape[0]
    if matrix.shape != (n, n) or rank(field, matrix) < n:
        return None
    if n == 0:
        return field.zeros(0, 0)
    return solve(field, matrix, field.identity(n))


def is_invertible(field: Field, matrix) -> bool:
    matrix = np.asarray(matrix)
    return matrix.shape[0] == matrix.shape[1] and rank(field, matrix) == matrix.shape[0]


def left_inverse(field: Field, basis_columns) -> np.ndarray:
    """L with L @ B = I for a full column rank B."""
    basis_columns = np.asarray(basis_columns, dtype=field.dtype)
    d, k = basis_columns.shape
    result = field.zeros(k, d)
    if k == 0:
        return result
    rows = list(rref(field, basis_columns.T)[1])
    if len(rows) < k:
        raise ValueError("Columns are not independent")
    result[:, rows] = inverse(field, basis_columns[rows, :])
    return result


def complement_columns(field: Field, basis_columns, ambient: Sequence[int], dim: int) -> np.ndarray:
    """Standard unit vectors from `ambient` coordinates completing a basis.

    Arguments:
        basis_columns {np.ndarray} -- dim x k independent columns inside span(ambient)
        ambient {Sequence[int]} -- coordinates of the ambient subspace
        dim {int} -- length of the column vectors

    Returns:
        np.ndarray -- dim x c matrix of unit vectors
    """
    basis_columns = as_block(field, basis_columns, rows=dim)
    units = field.zeros(dim, len(ambient))
    for j, coordinate in enumerate(ambient):
        units[coordinate, j] = field.scalar(1)
    if not len(ambient):
        return units
    k = basis_columns.shape[1]
    pivots = rref(field, np.concatenate([basis_columns, units], axis=1))[1]
    chosen = [pivot - k for pivot in pivots if pivot >= k]
    return units[:, chosen].copy()


def kron(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=field.dtype)
    b = np.asarray(b, dtype=field.dtype)
    product = a[:, None, :, None] * b[None, :, None, :]
    return field.reduce(product.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]))


def matrix_power(field: Field, matrix: np.ndarray, exponent: int) -> np.ndarray:
    result = field.identity(matrix.shape[0])
    base = matrix
    while exponent:
        if exponent & 1:
            result = field.matmul(result, base)
        base = field.matmul(base, base)
        exponent >>= 1
    return result


def is_nilpotent(field: Field, matrix: np.ndarray) -> bool:
    return field.is_zero(matrix_power(field, matrix, matrix.shape[0]))


def coordinates(field: Field, basis_columns, vectors) -> Optional[np.ndarray]:
    """Coordinates of the columns of `vectors` in the given column basis."""
    return solve(field, basis_columns, vectors)


def in_span(field: Field, basis_columns, vector) -> bool:
    return coordinates(field, basis_columns, vector) is not None

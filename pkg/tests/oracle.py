"""Stable Hom over GF(2) by direct linear algebra, independent of the library solvers.

Hom_A(M, N) is the solution space of X ρ_M(b) = ρ_N(b) X; maps factoring
through a projective are the composites with a free presentation F -> N.
"""
from typing import List

import numpy as np


def _rref_rank(rows: np.ndarray) -> int:
    matrix = rows.copy() % 2
    rank = 0
    for col in range(matrix.shape[1]):
        pivot = next((r for r in range(rank, matrix.shape[0]) if matrix[r, col]), None)
        if pivot is None:
            continue
        matrix[[rank, pivot]] = matrix[[pivot, rank]]
        for r in range(matrix.shape[0]):
            if r != rank and matrix[r, col]:
                matrix[r] ^= matrix[rank]
        rank += 1
    return rank


def _nullspace(system: np.ndarray, unknowns: int) -> List[np.ndarray]:
    matrix = system.copy() % 2
    pivots = []
    rank = 0
    for col in range(unknowns):
        pivot = next((r for r in range(rank, matrix.shape[0]) if matrix[r, col]), None)
        if pivot is None:
            continue
        matrix[[rank, pivot]] = matrix[[pivot, rank]]
        for r in range(matrix.shape[0]):
            if r != rank and matrix[r, col]:
                matrix[r] ^= matrix[rank]
        pivots.append(col)
        rank += 1
    basis = []
    for free in (col for col in range(unknowns) if col not in pivots):
        vector = np.zeros(unknowns, dtype=np.int64)
        vector[free] = 1
        for r, col in enumerate(pivots):
            vector[col] = matrix[r, free]
        basis.append(vector)
    return basis


def _action(module) -> List[np.ndarray]:
    return [np.array(matrix, dtype=np.int64) % 2 for matrix in module.action]


def _hom_basis(source_action, target_action, m: int, n: int) -> List[np.ndarray]:
    if m == 0 or n == 0:
        return []
    blocks = [np.kron(np.eye(n, dtype=np.int64), a.T) - np.kron(b, np.eye(m, dtype=np.int64))
              for a, b in zip(source_action, target_action)]
    system = np.concatenate(blocks, axis=0) % 2
    return [vector.reshape(n, m) for vector in _nullspace(system, n * m)]


def _free_presentation(algebra, target_action, vertex_of):
    """F = ⊕_i Λe_{v_i} -> N sending e_{v_i} to the i-th basis vector."""
    structure = np.array(algebra.structure, dtype=np.int64) % 2
    blocks, columns = [], []
    for i, v in enumerate(vertex_of):
        basis = [b for b in range(algebra.dim) if algebra.right_vertex[b] == v]
        blocks.append([structure[a][np.ix_(basis, basis)].T for a in range(algebra.dim)])
        for b in basis:
            columns.append(target_action[b][:, i])
    sizes = [len(block[0]) for block in blocks]
    total = sum(sizes)
    action = []
    for a in range(algebra.dim):
        matrix = np.zeros((total, total), dtype=np.int64)
        offset = 0
        for block, size in zip(blocks, sizes):
            matrix[offset:offset + size, offset:offset + size] = block[a]
            offset += size
        action.append(matrix)
    presentation = np.stack(columns, axis=1) if columns else np.zeros((len(vertex_of), 0), dtype=np.int64)
    return action, presentation % 2


def stable_hom_dim(source, target) -> int:
    m, n = source.dim, target.dim
    source_action, target_action = _action(source), _action(target)
    homs = _hom_basis(source_action, target_action, m, n)
    if not homs:
        return 0
    free_action, presentation = _free_presentation(source.algebra, target_action, target.vertex_of)
    lifts = _hom_basis(source_action, free_action, m, presentation.shape[1])
    factoring = [(presentation @ g % 2).reshape(-1) for g in lifts]
    if not factoring:
        return len(homs)
    return len(homs) - _rref_rank(np.stack(factoring))

"""Circulant +-1 blocks, the Goethals-Seidel array and exact Hadamard checks.

All matrices are dense int64 numpy arrays; no floating point is involved.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .modring import ResidueSet

# (sign, block index, transpose block, right-multiply by R) for each of the
# 4x4 positions of the array:
#   [  A0     A1R     A2R     A3R  ]
#   [ -A1R    A0    -A3^TR   A2^TR ]
#   [ -A2R   A3^TR    A0    -A1^TR ]
#   [ -A3R  -A2^TR   A1^TR    A0   ]
GS_TEMPLATE: tuple[tuple[tuple[int, int, bool, bool], ...], ...] = (
    ((+1, 0, False, False), (+1, 1, False, True), (+1, 2, False, True), (+1, 3, False, True)),
    ((-1, 1, False, True), (+1, 0, False, False), (-1, 3, True, True), (+1, 2, True, True)),
    ((-1, 2, False, True), (+1, 3, True, True), (+1, 0, False, False), (-1, 1, True, True)),
    ((-1, 3, False, True), (-1, 2, True, True), (+1, 1, True, True), (+1, 0, False, False)),
)


def as_sign_matrix(m) -> np.ndarray:
    """Validate a square matrix with entries in {+1, -1} and return it as int64."""
    a = np.asarray(m, dtype=np.int64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.abs(a) == 1):
        raise ValueError("entries must be +1 or -1")
    return a


def sign_vector(x: ResidueSet) -> np.ndarray:
    """The +-1 row vector that is -1 exactly on x."""
    return np.where(x.mask, -1, 1).astype(np.int64)


def circulant(first_row: Sequence[int]) -> np.ndarray:
    """Row i is the first row cyclically shifted right by i."""
    row = np.asarray(first_row, dtype=np.int64)
    n = row.shape[0]
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return row[idx]


def back_diagonal(n: int) -> np.ndarray:
    return np.fliplr(np.eye(n, dtype=np.int64))


def circulant_blocks(blocks: Sequence[ResidueSet]) -> list[np.ndarray]:
    return [circulant(sign_vector(b)) for b in blocks]


def goethals_seidel(a0, a1, a2, a3) -> np.ndarray:
    blocks = [as_sign_matrix(a) for a in (a0, a1, a2, a3)]
    n = blocks[0].shape[0]
    if any(b.shape != (n, n) for b in blocks):
        raise ValueError(f"blocks must all be {n}x{n}, got {[b.shape for b in blocks]}")
    # right-multiplying by R reverses column order
    out = np.empty((4 * n, 4 * n), dtype=np.int64)
    for i, row in enumerate(GS_TEMPLATE):
        for j, (sign, k, transpose, flip) in enumerate(row):
            b = blocks[k].T if transpose else blocks[k]
            if flip:
                b = b[:, ::-1]
            out[i * n:(i + 1) * n, j * n:(j + 1) * n] = sign * b
    return out


def gram(m: np.ndarray) -> np.ndarray:
    # int64 matmul is exact here: |entries| <= order <= a few thousand
    return m @ m.T


def is_hadamard(m) -> bool:
    try:
        a = as_sign_matrix(m)
    except ValueError:
        return False
    order = a.shape[0]
    return bool(np.array_equal(gram(a), order * np.eye(order, dtype=np.int64)))


def is_skew_hadamard(m) -> bool:
    if not is_hadamard(m):
        return False
    a = np.asarray(m, dtype=np.int64)
    return bool(np.array_equal(a + a.T, 2 * np.eye(a.shape[0], dtype=np.int64)))


def verify_block_identity(a0, a1, a2, a3) -> bool:
    """sum_k A_k A_k^T == 4n I, exactly."""
    blocks = [as_sign_matrix(a) for a in (a0, a1, a2, a3)]
    n = blocks[0].shape[0]
    if any(b.shape != (n, n) for b in blocks):
        raise ValueError("blocks must share one order")
    total = sum(gram(b) for b in blocks)
    return bool(np.array_equal(total, 4 * n * np.eye(n, dtype=np.int64)))


def gs_matrix_from_blocks(blocks: Sequence[ResidueSet]) -> np.ndarray:
    if len(blocks) != 4:
        raise ValueError(f"Goethals-Seidel needs 4 blocks, got {len(blocks)}")
    return goethals_seidel(*circulant_blocks(blocks))

"""Dense GF(2) linear algebra on uint8 numpy matrices.

Matrices hold 0/1 entries; arithmetic is mod 2. Sizes here are modest (circuit
propagation matrices up to a few thousand bits), so dense uint8 with numpy is plenty.
"""

from __future__ import annotations

import numpy as np


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over GF(2)."""
    return (a.astype(np.int64) @ b.astype(np.int64) & 1).astype(np.uint8)


def matvec(a: np.ndarray, v: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ v.astype(np.int64) & 1).astype(np.uint8)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b).astype(np.uint8)


def kron_power(a: np.ndarray, k: int) -> np.ndarray:
    out = np.array([[1]], dtype=np.uint8)
    for _ in range(k):
        out = kron(out, a)
    return out


def row_reduce(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Return (RREF of a copy of ``a``, pivot column list)."""
    m = a.copy().astype(np.uint8)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pivot_rows = np.nonzero(m[r:, c])[0]
        if pivot_rows.size == 0:
            continue
        p = r + pivot_rows[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        # clear the column everywhere else
        hits = np.nonzero(m[:, c])[0]
        for h in hits:
            if h != r:
                m[h] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray) -> int:
    _, pivots = row_reduce(a)
    return len(pivots)


def inverse(a: np.ndarray) -> np.ndarray:
    """Inverse over GF(2); raises ValueError if singular."""
    n = a.shape[0]
    aug = np.concatenate([a, identity(n)], axis=1)
    red, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular over GF(2)")
    return red[:, n:].copy()


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve a @ x = b for square invertible ``a``."""
    return matvec(inverse(a), b)


def bit_reversal_permutation(n: int) -> np.ndarray:
    """Index permutation reversing the bit order of each index (n must be 2**L)."""
    bits = int(n).bit_length() - 1
    if 2**bits != n:
        raise ValueError("n must be a power of two")
    perm = np.zeros(n, dtype=np.int64)
    for i in range(n):
        r = 0
        for k in range(bits):
            r |= ((i >> k) & 1) << (bits - 1 - k)
        perm[i] = r
    return perm


# The classical polar kernel: x_out = x_in . F with F lower unitriangular.
F_KERNEL = np.array([[1, 0], [1, 1]], dtype=np.uint8)

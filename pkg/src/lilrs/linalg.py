"""Dense Gaussian elimination over F_{q^m} and over the base field F_q.

Matrices over F_{q^m} are numpy int64 arrays of element indices (see field.py);
matrices over F_q are numpy int64 arrays of residues mod q.  Everything here
is plain reduced-row-echelon machinery; no fast algorithms.
"""

from __future__ import annotations

import numpy as np

from .field import ExtensionField

__all__ = [
    "rref",
    "rank",
    "right_kernel",
    "solve_affine",
    "rref_q",
    "rank_q",
    "right_kernel_q",
    "inv_q",
    "rref_q_with_ops",
    "fq_times_field",
]


# -- over F_{q^m} ----------------------------------------------------------

def rref(field: ExtensionField, mat, max_cols: int | None = None):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    M = np.array(mat, dtype=np.int64, copy=True)
    if M.ndim != 2:
        raise ValueError("matrix expected")
    rows, cols = M.shape
    limit = cols if max_cols is None else max_cols
    pivots = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            M[[r, p]] = M[[p, r]]
        piv_inv = field.inv(int(M[r, c]))
        M[r] = field.vmul(M[r], piv_inv)
        factors = M[:, c].copy()
        factors[r] = 0
        if np.any(factors):
            M = field.vsub(M, field.vmul(factors[:, None], M[r][None, :]))
        pivots.append(c)
        r += 1
    return M, pivots


def rank(field: ExtensionField, mat) -> int:
    M = np.asarray(mat)
    if M.size == 0:
        return 0
    return len(rref(field, M)[1])


def right_kernel(field: ExtensionField, mat):
    """Basis of the right kernel as rows of the returned matrix."""
    M = np.asarray(mat, dtype=np.int64)
    rows, cols = M.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(field, M)
    free = [c for c in range(cols) if c not in pivots]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        K[i, fc] = 1
        for pr, pc in enumerate(pivots):
            K[i, pc] = field.neg(int(R[pr, fc]))
    return K


def solve_affine(field: ExtensionField, A, b):
    """All solutions of A x = b: returns (particular, kernel_basis) or (None, kernel_basis)."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    rows, cols = A.shape
    aug = np.hstack([A, b[:, None]])
    R, pivots = rref(field, aug)
    if cols in pivots:
        return None, right_kernel(field, A)
    x = np.zeros(cols, dtype=np.int64)
    for pr, pc in enumerate(pivots):
        x[pc] = R[pr, cols]
    free = [c for c in range(cols) if c not in pivots]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        K[i, fc] = 1
        for pr, pc in enumerate(pivots):
            K[i, pc] = field.neg(int(R[pr, fc]))
    return x, K


# -- over F_q ----------------------------------------------------------------

def rref_q(mat, q: int, max_cols: int | None = None):
    """Reduced row echelon form over F_q.  Returns (R, pivot_columns)."""
    M = np.array(mat, dtype=np.int64, copy=True) % q
    rows, cols = M.shape
    limit = cols if max_cols is None else max_cols
    pivots = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            M[[r, p]] = M[[p, r]]
        piv_inv = pow(int(M[r, c]), -1, q)
        M[r] = (M[r] * piv_inv) % q
        factors = M[:, c].copy()
        factors[r] = 0
        if np.any(factors):
            M = (M - factors[:, None] * M[r][None, :]) % q
        pivots.append(c)
        r += 1
    return M, pivots


def rank_q(mat, q: int) -> int:
    M = np.asarray(mat)
    if M.size == 0:
        return 0
    return len(rref_q(M, q)[1])


def right_kernel_q(mat, q: int):
    M = np.asarray(mat, dtype=np.int64)
    rows, cols = M.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref_q(M, q)
    free = [c for c in range(cols) if c not in pivots]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        K[i, fc] = 1
        for pr, pc in enumerate(pivots):
            K[i, pc] = (-int(R[pr, fc])) % q
    return K


def inv_q(mat, q: int):
    M = np.asarray(mat, dtype=np.int64)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("square matrix expected")
    aug = np.hstack([M % q, np.eye(n, dtype=np.int64)])
    R, pivots = rref_q(aug, q, max_cols=n)
    if len(pivots) != n:
        raise ValueError("matrix is singular over F_q")
    return R[:, n:]


def rref_q_with_ops(mat, q: int):
    """Row reduction with the transform recorded: returns (R, P) with P @ mat = R mod q."""
    M = np.asarray(mat, dtype=np.int64)
    rows, cols = M.shape
    aug = np.hstack([M % q, np.eye(rows, dtype=np.int64)])
    R, _ = rref_q(aug, q, max_cols=cols)
    return R[:, :cols], R[:, cols:]


def fq_times_field(field: ExtensionField, A, M):
    """Product of an F_q matrix A with a matrix M over F_{q^m} (F_q acting as constants)."""
    A = np.asarray(A, dtype=np.int64) % field.q
    M = np.asarray(M, dtype=np.int64)
    out = np.zeros((A.shape[0], M.shape[1]), dtype=np.int64)
    for t in range(A.shape[1]):
        col = A[:, t]  # residues mod q are exactly the constant elements' indices
        if not np.any(col):
            continue
        out = field.vadd(out, field.vmul(col[:, None], M[t][None, :]))
    return out

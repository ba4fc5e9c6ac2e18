"""Exact linear algebra mod a prime, on int64 numpy arrays.

All entries are kept reduced in [0, q).  q must stay below 2^31 so a
single product fits in int64; callers never need arbitrary-precision
here because every routine reduces eagerly.
"""

from __future__ import annotations

import numpy as np

MAX_MODULUS = 1 << 31


def _check_q(q: int) -> None:
    if q >= MAX_MODULUS:
        raise ValueError("modulus too large for int64 kernels")


def as_matrix(rows, q: int) -> np.ndarray:
    _check_q(q)
    A = np.asarray(rows, dtype=np.int64)
    return np.mod(A, q)


def modinv_vec(a: np.ndarray, q: int) -> np.ndarray:
    """Elementwise inverse by Fermat; zeros map to zero."""
    result = np.ones_like(a)
    base = np.mod(a, q)
    e = q - 2
    while e:
        if e & 1:
            result = result * base % q
        base = base * base % q
        e >>= 1
    return result


def matmul_mod(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    """A @ B mod q, chunking the inner dimension against overflow."""
    _check_q(q)
    A = np.mod(np.asarray(A, dtype=np.int64), q)
    B = np.mod(np.asarray(B, dtype=np.int64), q)
    inner = A.shape[-1]
    # each partial sum stays under 2^63: chunk * (q-1)^2 < 2^63
    chunk = max(1, (1 << 62) // (q * q))
    if inner <= chunk:
        return A @ B % q
    out = None
    for s in range(0, inner, chunk):
        part = A[..., s : s + chunk] @ B[s : s + chunk, ...] % q
        out = part if out is None else (out + part) % q
    return out


def rank_mod(rows, q: int) -> int:
    """Rank over F_q by straight Gaussian elimination."""
    A = as_matrix(rows, q)
    if A.size == 0:
        return 0
    m, n = A.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        pivots = np.nonzero(A[rank:, col])[0]
        if pivots.size == 0:
            continue
        p = rank + int(pivots[0])
        if p != rank:
            A[[rank, p]] = A[[p, rank]]
        inv = pow(int(A[rank, col]), q - 2, q)
        A[rank] = A[rank] * inv % q
        rest = np.nonzero(A[rank + 1 :, col])[0]
        if rest.size:
            idx = rest + rank + 1
            A[idx] = (A[idx] - A[idx, col][:, None] * A[rank][None, :]) % q
        rank += 1
    return rank


def det_mod(rows, q: int) -> int:
    A = as_matrix(rows, q)
    m, n = A.shape
    if m != n:
        raise ValueError("determinant of a non-square matrix")
    det = 1
    for col in range(n):
        pivots = np.nonzero(A[col:, col])[0]
        if pivots.size == 0:
            return 0
        p = col + int(pivots[0])
        if p != col:
            A[[col, p]] = A[[p, col]]
            det = (-det) % q
        pivot = int(A[col, col])
        det = det * pivot % q
        inv = pow(pivot, q - 2, q)
        below = np.nonzero(A[col + 1 :, col])[0]
        if below.size:
            idx = below + col + 1
            factor = A[idx, col] * inv % q
            A[idx] = (A[idx] - factor[:, None] * A[col][None, :]) % q
    return det


def batched_det(mats: np.ndarray, q: int, chunk: int = 4096) -> np.ndarray:
    """Determinants of a stack of square matrices, mod q.

    Vectorizes Gaussian elimination across the batch; lanes whose pivot
    column dies go to zero and stay there.
    """
    _check_q(q)
    mats = np.mod(np.asarray(mats, dtype=np.int64), q)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError("expected a (batch, n, n) stack")
    B = mats.shape[0]
    if B > chunk:
        return np.concatenate(
            [batched_det(mats[s : s + chunk], q, chunk) for s in range(0, B, chunk)]
        )
    A = mats.copy()
    n = A.shape[1]
    det = np.ones(B, dtype=np.int64)
    lane = np.arange(B)
    for col in range(n):
        colvals = A[:, col:, col]
        nz = colvals != 0
        alive = nz.any(axis=1)
        det[~alive] = 0
        piv = col + np.argmax(nz, axis=1)
        swap = (piv != col) & alive
        if swap.any():
            det[swap] = (q - det[swap]) % q
            rc = A[lane, col, :].copy()
            rp = A[lane, piv, :].copy()
            A[lane, col, :] = np.where(swap[:, None], rp, rc)
            A[lane, piv, :] = np.where(swap[:, None], rc, rp)
        pivot = A[:, col, col]
        det = det * pivot % q
        if col + 1 < n:
            inv = modinv_vec(pivot, q)
            factor = A[:, col + 1 :, col] * inv[:, None] % q
            A[:, col + 1 :, :] = (
                A[:, col + 1 :, :] - factor[:, :, None] * A[:, col, :][:, None, :]
            ) % q
    return det


def inverse_mod(rows, q: int) -> np.ndarray:
    """Matrix inverse by Gauss-Jordan; raises on singular input."""
    A = as_matrix(rows, q)
    n, m = A.shape
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        pivots = np.nonzero(aug[col:, col])[0]
        if pivots.size == 0:
            raise ZeroDivisionError("matrix is singular mod q")
        p = col + int(pivots[0])
        if p != col:
            aug[[col, p]] = aug[[p, col]]
        inv = pow(int(aug[col, col]), q - 2, q)
        aug[col] = aug[col] * inv % q
        others = np.nonzero(aug[:, col])[0]
        others = others[others != col]
        if others.size:
            aug[others] = (aug[others] - aug[others, col][:, None] * aug[col][None, :]) % q
    return aug[:, n:]


def vandermonde_mod(nodes: np.ndarray, ncols: int, q: int) -> np.ndarray:
    """Rows node^0 .. node^{ncols-1} for each node, mod q."""
    nodes = np.mod(np.asarray(nodes, dtype=np.int64), q)
    V = np.empty((nodes.shape[0], ncols), dtype=np.int64)
    V[:, 0] = 1
    for j in range(1, ncols):
        V[:, j] = V[:, j - 1] * nodes % q
    return V

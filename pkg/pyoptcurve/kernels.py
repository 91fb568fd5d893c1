#!/usr/bin/env python3
"""
Vectorized inner loops shared by the counting and search routines.

The central trick: for a batch of value rows vals[i, P] over F_q, the
character sums sum_P chi(vals[i, P] + j) for every shift j are the product
of the per-row value histogram with the circulant character matrix.
"""

import functools

import numpy as np

from .fparith import prime_field

# Fields above this size never build the dense q x q character matrix.
DENSE_CHARACTER_LIMIT = 1 << 11

# Entries of one column block of the character matrix.
BLOCK_ENTRIES = 1 << 22

__all__ = ['character_matrix', 'row_histograms', 'correlate',
           'character_sums', 'shifted_character_sums', 'affine_points', 'batch_polymul',
           'singular_mod', 'has_repeated_root']


@functools.lru_cache(maxsize=8)
def character_matrix(q):
    """
    Returns C with C[c, j] = chi(c + j mod q) as float64.

    Parameters
    ----------
    q : int
        Odd prime.

    Returns
    -------
    np.ndarray
        A (q, q) read-only array.
    """
    chi = prime_field(q).chi
    idx = np.arange(q, dtype=np.int64)
    C = chi[(idx[:, None] + idx[None, :]) % q].astype(np.float64)
    C.flags.writeable = False
    return C


def row_histograms(vals, q, weights=None):
    """
    Returns H with H[i, c] = number (or weight) of entries of vals[i] equal
    to c.
    """
    rows = vals.shape[0]
    offsets = (np.arange(rows, dtype=np.int64) * q)[:, None]
    flat = (vals + offsets).ravel()
    if weights is not None:
        weights = np.broadcast_to(weights, vals.shape).ravel()
    H = np.bincount(flat, weights=weights, minlength=rows * q)
    return H.reshape(rows, q)


def correlate(H, C):
    """
    Returns S = H @ C rounded back to int64.

    All entries are integers well below 2**53, so the float64 product is
    exact after rounding.
    """
    return np.rint(np.asarray(H, dtype=np.float64) @ C).astype(np.int64)


def character_sums(H, q):
    """
    Returns S with S[i, j] = sum_c H[i, c] chi(c + j).

    Small fields use the cached character matrix. Larger ones build it one
    block of columns at a time.
    """
    if q <= DENSE_CHARACTER_LIMIT:
        return correlate(H, character_matrix(q))
    chi = prime_field(q).chi.astype(np.float64)
    H = np.asarray(H, dtype=np.float64)
    idx = np.arange(q, dtype=np.int64)[:, None]
    step = max(1, BLOCK_ENTRIES // q)
    S = np.empty((H.shape[0], q), dtype=np.int64)
    for start in range(0, q, step):
        js = np.arange(start, min(start + step, q), dtype=np.int64)
        S[:, start:start + js.size] = correlate(H, chi[(idx + js) % q])
    return S


def shifted_character_sums(vals, q, weights=None):
    """
    Returns S with S[i, j] = sum_P w[i, P] chi(vals[i, P] + j).
    """
    H = row_histograms(vals, q, weights)
    return character_sums(H, q)


def affine_points(q, a, b):
    """
    Returns the affine points of y^2 = x^3 + ax + b over F_q.

    Returns
    -------
    X, Y : np.ndarray
        int64 coordinate arrays sorted by (x, y).
    """
    ctx = prime_field(q)
    xs = np.arange(q, dtype=np.int64)
    f = (((xs * xs) % q + a) % q * xs + b) % q
    roots = ctx.sqrt_table()[f]
    square = roots >= 0
    split = square & (f != 0)
    X = np.concatenate([xs[square], xs[split]])
    Y = np.concatenate([roots[square], (q - roots[split]) % q])
    order = np.lexsort((Y, X))
    return X[order], Y[order]


def batch_polymul(A, B, q):
    """
    Multiplies rows of coefficient arrays (lowest degree first) mod q.
    """
    out = np.zeros((A.shape[0], A.shape[1] + B.shape[1] - 1), dtype=np.int64)
    for i in range(A.shape[1]):
        for j in range(B.shape[1]):
            out[:, i + j] = (out[:, i + j] + A[:, i] * B[:, j]) % q
    return out


@functools.lru_cache(maxsize=8)
def _inverse_table(q):
    inv = np.zeros(q, dtype=np.int64)
    xs = np.arange(1, q, dtype=np.int64)
    inv[xs] = [pow(int(x), q - 2, q) for x in xs]
    return inv


def singular_mod(M, q):
    """
    Returns a bool array flagging which matrices of the batch M are
    singular over F_q, by Gaussian elimination with per-matrix pivoting.
    """
    M = np.array(M, dtype=np.int64) % q
    batch, n, _ = M.shape
    inv = _inverse_table(q)
    rows = np.arange(batch)
    singular = np.zeros(batch, dtype=bool)
    for k in range(n):
        nonzero = M[:, k:, k] != 0
        singular |= ~nonzero.any(axis=1)
        p = k + np.argmax(nonzero, axis=1)
        pivot_rows = M[rows, p].copy()
        M[rows, p] = M[rows, k]
        M[rows, k] = pivot_rows
        factors = M[:, k + 1:, k] * inv[M[:, k, k]][:, None] % q
        M[:, k + 1:, :] = (M[:, k + 1:, :] -
                           factors[:, :, None] * M[:, None, k, :]) % q
    return singular


def has_repeated_root(coeffs, q):
    """
    Flags rows of coeffs (lowest degree first, all of the same degree d with
    nonzero leading coefficient, 2 <= d < q) that have a repeated root over
    the algebraic closure, i.e. Res(p, p') = 0.
    """
    coeffs = np.asarray(coeffs, dtype=np.int64) % q
    batch, width = coeffs.shape
    d = width - 1
    deriv = coeffs[:, 1:] * np.arange(1, width, dtype=np.int64) % q
    n = 2 * d - 1
    S = np.zeros((batch, n, n), dtype=np.int64)
    high_p = coeffs[:, ::-1]
    high_dp = deriv[:, ::-1]
    for i in range(d - 1):
        S[:, i, i:i + d + 1] = high_p
    for i in range(d):
        S[:, d - 1 + i, i:i + d] = high_dp
    return singular_mod(S, q)

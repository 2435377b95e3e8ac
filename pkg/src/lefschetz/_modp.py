"""Dense Gaussian elimination over GF(p) on numpy arrays.

Row reduction runs in column panels of width ``PANEL``: each panel is
reduced pivot by pivot, then the trailing columns are updated with one
floating-point matrix product.  Every intermediate stays below 2**53 (or
2**24 for float32), so the arithmetic is exact.
"""

from __future__ import annotations

import numpy as np

PANEL = 64
MAX_PRIME = 1 << 22


def _work_dtype(p: int):
    if PANEL * p * p < (1 << 24):
        return np.float32
    if p < MAX_PRIME:
        return np.float64
    raise ValueError(f"prime {p} too large for the float elimination kernel")


def _mod(x: np.ndarray, p: int) -> np.ndarray:
    """Canonical residues of an exact float array (floor division plus one fix-up)."""
    q = x * (1.0 / p)
    np.floor(q, out=q)
    q *= p
    np.subtract(x, q, out=q)
    np.add(q, p, out=q, where=q < 0)
    np.subtract(q, p, out=q, where=q >= p)
    return q


def _inverse_small(S: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a small nonsingular matrix mod p (int64 Gauss-Jordan)."""
    k = S.shape[0]
    aug = np.concatenate([S.astype(np.int64) % p, np.eye(k, dtype=np.int64)], axis=1)
    for j in range(k):
        nz = np.flatnonzero(aug[j:, j]) + j
        i = int(nz[0])
        if i != j:
            aug[[i, j]] = aug[[j, i]]
        aug[j] = aug[j] * pow(int(aug[j, j]), -1, p) % p
        col = aug[:, j].copy()
        col[j] = 0
        sel = np.flatnonzero(col)
        if sel.size:
            aug[sel] = (aug[sel] - np.outer(col[sel], aug[j])) % p
    return aug[:, k:]


def _panel_profile(P: np.ndarray, p: int):
    """Pivot rows/columns of a narrow panel (first nonzero row per column)."""
    P = P.copy()
    m, b = P.shape
    avail = np.ones(m, dtype=bool)
    rows, cols = [], []
    for j in range(b):
        nz = np.flatnonzero(avail & (P[:, j] != 0))
        if nz.size == 0:
            continue
        i = int(nz[0])
        P[i, j:] = _mod(P[i, j:] * pow(int(P[i, j]), -1, p), p)
        avail[i] = False
        rest = nz[1:]
        if rest.size:
            P[rest, j:] = _mod(P[rest, j:] - np.outer(P[rest, j], P[i, j:]), p)
        rows.append(i)
        cols.append(j)
    return rows, cols


def rank_profile(A: np.ndarray, p: int) -> tuple[list[int], list[int]]:
    """Row and column indices of a nonsingular ``rank x rank`` submatrix of ``A`` mod ``p``.

    Column indices come out increasing (the column rank profile).
    """
    A = np.asarray(A)
    m, n = A.shape
    dt = _work_dtype(p)
    W = np.mod(A.astype(np.int64, copy=False), p).astype(dt)
    rows = np.arange(m)
    col0 = 0
    piv_rows: list[int] = []
    piv_cols: list[int] = []
    while W.shape[0] and col0 < n:
        b = min(PANEL, n - col0)
        pr, pc = _panel_profile(W[:, :b], p)
        if not pr:
            W = W[:, b:]
            col0 += b
            continue
        keep = np.ones(W.shape[0], dtype=bool)
        keep[pr] = False
        piv_rows.extend(int(x) for x in rows[pr])
        piv_cols.extend(col0 + c for c in pc)
        if W.shape[1] > b and keep.any():
            inv = _inverse_small(W[np.ix_(pr, pc)], p).astype(dt)
            C = _mod(W[np.ix_(keep, pc)] @ inv, p)
            W = _mod(W[keep, b:] - C @ W[pr, b:], p)
        else:
            W = W[keep, b:]
        rows = rows[keep]
        col0 += b
    order = np.argsort(piv_cols, kind="stable")
    return [piv_rows[i] for i in order], [piv_cols[i] for i in order]


def rank(A: np.ndarray, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    # eliminate along the shorter side
    if A.shape[1] > A.shape[0]:
        A = A.T
    return len(rank_profile(A, p)[1])


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and its pivot columns (zero rows dropped)."""
    R = np.remainder(np.asarray(A, dtype=np.int64), p)
    m, n = R.shape
    pivots: list[int] = []
    row = 0
    for j in range(n):
        if row == m:
            break
        nz = np.flatnonzero(R[row:, j])
        if nz.size == 0:
            continue
        i = row + int(nz[0])
        if i != row:
            R[[i, row]] = R[[row, i]]
        R[row] = R[row] * pow(int(R[row, j]), -1, p) % p
        col = R[:, j].copy()
        col[row] = 0
        sel = np.flatnonzero(col)
        if sel.size:
            R[sel] = (R[sel] - np.outer(col[sel], R[row])) % p
        pivots.append(j)
        row += 1
    return R[:row], pivots


def kernel_from_rref(R: np.ndarray, pivots: list[int], n: int, p: int) -> np.ndarray:
    """Right null space basis, one vector per free column (rows of the result)."""
    piv = set(pivots)
    free = [j for j in range(n) if j not in piv]
    K = np.zeros((len(free), n), dtype=np.int64)
    for a, f in enumerate(free):
        K[a, f] = 1
        if pivots:
            K[a, pivots] = (-R[:, f]) % p
    return K


def solve(S: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """``X`` with ``S @ X == B`` mod p for a nonsingular square ``S`` (blocked elimination)."""
    n = S.shape[0]
    dt = _work_dtype(p)
    k = B.shape[1]
    W = np.concatenate([np.mod(S, p), np.mod(B, p)], axis=1).astype(dt)
    perm_rows = np.arange(n)
    blocks = []  # (column offset, width, pivot rows of this block in W's current row order)
    col0 = 0
    U_rows = []
    while col0 < n:
        b = min(PANEL, n - col0)
        pr, pc = _panel_profile(W[:, :b], p)
        if len(pr) != b:
            raise ZeroDivisionError("matrix is singular modulo p")
        order = [pr[i] for i in np.argsort(pc)]
        inv = _inverse_small(W[np.ix_(order, range(b))], p).astype(dt)
        top = _mod(inv @ W[order], p)  # rows normalised so the leading block is the identity
        keep = np.ones(W.shape[0], dtype=bool)
        keep[order] = False
        rest = W[keep]
        if rest.shape[0]:
            rest = _mod(rest[:, b:] - _mod(rest[:, :b], p) @ top[:, b:], p)
        else:
            rest = rest[:, b:]
        U_rows.append(top[:, b:])
        blocks.append(b)
        W = rest
        col0 += b
    # back substitution; U_rows[i] holds columns col_i+b_i .. n-1 followed by the right-hand side
    X = np.zeros((n, k), dtype=dt)
    offs = np.cumsum([0] + blocks)
    for i in range(len(blocks) - 1, -1, -1):
        lo, hi = offs[i], offs[i + 1]
        T = U_rows[i]
        rhs = T[:, n - hi:]
        # accumulate panel by panel so every float product stays exact
        for j in range(hi, n, PANEL):
            e = min(j + PANEL, n)
            rhs = _mod(rhs - T[:, j - hi: e - hi] @ X[j:e], p)
        X[lo:hi] = rhs
    return X.astype(np.int64)


def kernel(A: np.ndarray, p: int) -> np.ndarray:
    """Null space basis mod p, one vector per non-pivot column (matches the RREF basis)."""
    return kernel_and_pivots(A, p)[0]


def kernel_and_pivots(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = np.mod(np.asarray(A, dtype=np.int64), p)
    m, n = A.shape
    if m == 0:
        return np.eye(n, dtype=np.int64), []
    if min(m, n) <= 2 * PANEL:
        R, piv = rref(A, p)
        return kernel_from_rref(R, piv, n, p), piv
    rows, cols = rank_profile(A, p)
    piv = set(cols)
    free = [j for j in range(n) if j not in piv]
    K = np.zeros((len(free), n), dtype=np.int64)
    if not free:
        return K, list(cols)
    K[np.arange(len(free)), free] = 1
    if cols:
        X = solve(A[np.ix_(rows, cols)], A[np.ix_(rows, free)], p)
        K[:, cols] = (-X.T) % p
    return K, list(cols)

"""Exact linear algebra over GF(p) and Q, and the multiplication-by-l matrices.

Ranks in characteristic ``p`` come from dense modular elimination.  Ranks
over Q are exact as well: a modular rank equal to ``min(rows, cols)`` is
already a proof of full rank over Q; otherwise the null space is lifted
from several primes and every lifted vector is checked against the integer
matrix.  Small matrices (and anything the lift cannot certify) go through
fraction-free Bareiss elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence

import numpy as np

from . import _modp
from .monomials import ContractViolation, MonomialIdeal, standard_basis

# primes just below 2**22; every product of two residues stays exact in float64
_BIG_PRIMES = (4194301, 4194287, 4194277, 4194271, 4194247, 4194217, 4194199, 4194191)
# single-precision primes first: kernels of the maps met in practice have
# small entries, so a few 9-bit moduli usually reconstruct them
_SMALL_PRIMES = (509, 503, 499, 491, 487, 479, 467, 463, 461, 457, 449, 443, 439, 433, 431, 421)
LIFT_PRIMES = _SMALL_PRIMES + _BIG_PRIMES
SCREEN_PRIME = 509  # largest prime with PANEL * p**2 < 2**24
SMALL_EXACT = 3000  # entry count below which Q-ranks skip the modular route


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


@dataclass(frozen=True)
class Characteristic:
    """Characteristic of the coefficient field: 0 (rationals) or a prime."""

    value: int

    def __post_init__(self):
        v = self.value
        if isinstance(v, Characteristic):
            object.__setattr__(self, "value", v.value)
            return
        if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
            raise ContractViolation(f"characteristic must be an integer, got {v!r}")
        v = int(v)
        if v != 0 and not is_prime(v):
            raise ContractViolation(f"characteristic {v} is neither 0 nor a prime")
        object.__setattr__(self, "value", v)

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)


def as_char(c) -> Characteristic:
    return c if isinstance(c, Characteristic) else Characteristic(c)


def _to_int_or_fraction(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, (int, np.integer)):
        return int(x)
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


class ExactMatrix:
    """Dense matrix over GF(p) (int64 residues) or Q (Python ints/Fractions)."""

    __slots__ = ("rows", "cols", "char", "data")

    def __init__(self, data, char=0, shape: tuple[int, int] | None = None):
        self.char = as_char(char)
        p = self.char.value
        if isinstance(data, np.ndarray) and data.ndim == 2:
            arr = data
        else:
            rows = [list(r) for r in data]
            if shape is None:
                shape = (len(rows), len(rows[0]) if rows else 0)
            arr = np.empty(shape, dtype=object)
            for i, row in enumerate(rows):
                if len(row) != shape[1]:
                    raise ContractViolation("ragged matrix rows")
                for j, x in enumerate(row):
                    arr[i, j] = x
        if p:
            if arr.dtype == object:
                arr = np.array([[int(_mod_scalar(x, p)) for x in row] for row in arr], dtype=np.int64).reshape(arr.shape)
            else:
                arr = np.mod(arr.astype(np.int64), p)
        else:
            if arr.dtype != object:
                arr = arr.astype(np.int64).astype(object)
            else:
                arr = np.vectorize(_to_int_or_fraction, otypes=[object])(arr) if arr.size else arr
        self.data = arr
        self.rows, self.cols = arr.shape

    @classmethod
    def zeros(cls, rows: int, cols: int, char=0) -> "ExactMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), char)

    @classmethod
    def identity(cls, n: int, char=0) -> "ExactMatrix":
        return cls(np.eye(n, dtype=np.int64), char)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.data.T.copy(), self.char)

    def tolist(self) -> list[list]:
        return [[_to_int_or_fraction(x) for x in row] for row in self.data]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.char == other.char and self.shape == other.shape and bool(np.all(self.data == other.data))

    def __matmul__(self, other):
        p = self.char.value
        if isinstance(other, ExactMatrix):
            if other.char != self.char or other.rows != self.cols:
                raise ContractViolation("incompatible matrix product")
            if p:
                return ExactMatrix(_matmul_modp(self.data, other.data, p), self.char)
            return ExactMatrix(self.data.dot(other.data), self.char)
        vec = np.array([_to_int_or_fraction(x) for x in other], dtype=object)
        if vec.shape[0] != self.cols:
            raise ContractViolation("vector length does not match column count")
        if p:
            vec = np.array([_mod_scalar(x, p) for x in vec], dtype=np.int64)
            return [int(x) for x in _matmul_modp(self.data, vec[:, None], p)[:, 0]]
        if self.cols == 0:
            return [0] * self.rows
        return [_to_int_or_fraction(x) for x in self.data.dot(vec)]

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, char={self.char.value})"


def _mod_scalar(x, p: int) -> int:
    if isinstance(x, Fraction):
        return x.numerator * pow(x.denominator, -1, p) % p
    return int(x) % p


def _matmul_modp(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if p < (1 << 31) and A.shape[1] * (p - 1) ** 2 < (1 << 62):
        return (A.astype(np.int64) @ B.astype(np.int64)) % p
    return np.mod(A.astype(object).dot(B.astype(object)), p).astype(np.int64)


# --------------------------------------------------------------------------
# rank and null space over GF(p)


def _rank_modp_python(A: np.ndarray, p: int) -> int:
    R = [[int(x) % p for x in row] for row in A]
    rk, ncols = 0, A.shape[1]
    for j in range(ncols):
        piv = next((i for i in range(rk, len(R)) if R[i][j]), None)
        if piv is None:
            continue
        R[rk], R[piv] = R[piv], R[rk]
        inv = pow(R[rk][j], -1, p)
        R[rk] = [x * inv % p for x in R[rk]]
        for i in range(rk + 1, len(R)):
            f = R[i][j]
            if f:
                R[i] = [(a - f * b) % p for a, b in zip(R[i], R[rk])]
        rk += 1
    return rk


def _rank_modp(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    if p >= _modp.MAX_PRIME:
        return _rank_modp_python(A, p)
    return _modp.rank(A, p)


# --------------------------------------------------------------------------
# rank and null space over Q


def _integer_rows(A: np.ndarray) -> np.ndarray:
    """Scale each row by the lcm of its denominators; returns an object array of ints."""
    out = np.empty(A.shape, dtype=object)
    for i, row in enumerate(A):
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out[i, :] = [int(x * den) for x in row] if den != 1 else [int(x) for x in row]
    return out


def _compact(A: np.ndarray) -> np.ndarray:
    """int64 copy when every entry fits comfortably, else the object array."""
    if A.size == 0:
        return A.astype(np.int64)
    bound = max(abs(int(x)) for x in A.flat)
    return A.astype(np.int64) if bound < (1 << 40) else A


def _bareiss_rank(A) -> int:
    M = [[int(x) for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    rk, prev = 0, 1
    for j in range(n):
        piv = next((i for i in range(rk, m) if M[i][j]), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        pv = M[rk][j]
        for i in range(rk + 1, m):
            a = M[i][j]
            row_i, row_k = M[i], M[rk]
            M[i] = [(pv * row_i[c] - a * row_k[c]) // prev if c > j else 0 for c in range(n)]
        prev = pv
        rk += 1
        if rk == m:
            break
    return rk


def _rref_fraction(A) -> tuple[list[list[Fraction]], list[int]]:
    R = [[Fraction(x) for x in row] for row in A]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots: list[int] = []
    row = 0
    for j in range(n):
        if row == m:
            break
        piv = next((i for i in range(row, m) if R[i][j]), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        inv = 1 / R[row][j]
        R[row] = [x * inv for x in R[row]]
        for i in range(m):
            if i != row and R[i][j]:
                f = R[i][j]
                R[i] = [a - f * b for a, b in zip(R[i], R[row])]
        pivots.append(j)
        row += 1
    return R[:row], pivots


def _kernel_fraction(A, n: int) -> list[tuple]:
    R, pivots = _rref_fraction(A)
    piv = set(pivots)
    basis = []
    for f in range(n):
        if f in piv:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(tuple(_to_int_or_fraction(x) for x in v))
    return basis


def _rational_reconstruct(a: int, N: int):
    """``n/d`` with ``n/d == a (mod N)`` and ``|n|, d <= sqrt(N/2)``, or None."""
    a %= N
    bound = isqrt(N // 2)
    r0, r1, s0, s1 = N, a, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _int_matvec_exact(A: np.ndarray, v: list[int]) -> list[int]:
    """Exact ``A @ v`` for an integer matrix, using int64 products on 20-bit limbs."""
    if A.dtype == object:
        return list(A.dot(np.array(v, dtype=object)))
    m, n = A.shape
    amax = int(np.abs(A).max()) if A.size else 0
    if amax * n * (1 << 20) >= (1 << 62):
        return list(A.astype(object).dot(np.array(v, dtype=object)))
    total = [0] * m
    signs = [(-1 if x < 0 else 1, abs(x)) for x in v]
    shift = 0
    while any(mag for _, mag in signs):
        limb = np.array([s * (mag & 0xFFFFF) for s, mag in signs], dtype=np.int64)
        part = A @ limb
        total = [t + (int(x) << shift) for t, x in zip(total, part)]
        signs = [(s, mag >> 20) for s, mag in signs]
        shift += 20
    return total


def _lift_kernel(A: np.ndarray) -> list[tuple] | None:
    """Exact Q-null space of an integer matrix via multi-modular lifting, or None."""
    m, n = A.shape
    best_rank, best_piv, crt, modulus = -1, None, None, 1
    A64 = A if A.dtype != object else None
    for p in LIFT_PRIMES:
        Ap = np.mod(A64, p) if A64 is not None else np.array([[int(x) % p for x in row] for row in A], dtype=np.int64).reshape(m, n)
        Kp, piv = _modp.kernel_and_pivots(Ap, p)
        if len(piv) < best_rank:
            continue  # unlucky prime
        if len(piv) > best_rank or piv != best_piv:
            best_rank, best_piv, modulus = len(piv), piv, 1
            crt = None
        K = Kp.astype(object)
        if crt is None:
            crt, modulus = K, p
        else:
            # Chinese remaindering, entry-wise
            inv = pow(modulus, -1, p)
            crt = crt + modulus * (((K - crt) % p) * inv % p)
            modulus *= p
        lifted = []
        for row in crt:
            vec = []
            for x in row:
                q = _rational_reconstruct(int(x), modulus)
                if q is None:
                    break
                vec.append(q)
            else:
                lifted.append(vec)
                continue
            break
        if len(lifted) != len(crt):
            continue
        ok = True
        for vec in lifted:
            den = 1
            for q in vec:
                den = lcm(den, q.denominator)
            iv = [int(q * den) for q in vec]
            if any(_int_matvec_exact(A, iv)):
                ok = False
                break
        if ok:
            return [tuple(_to_int_or_fraction(q) for q in vec) for vec in lifted]
    return None


def _rank_rational(A: np.ndarray) -> int:
    m, n = A.shape
    if m == 0 or n == 0:
        return 0
    Z = _compact(_integer_rows(A)) if A.dtype == object else A
    if m * n <= SMALL_EXACT:
        return _bareiss_rank(Z.tolist() if m <= n else Z.T.tolist())
    # maximal rank modulo any prime already forces maximal rank over Q;
    # a prime this small keeps the elimination in single precision
    if Z.dtype != object and _modp.rank(np.mod(Z, SCREEN_PRIME), SCREEN_PRIME) == min(m, n):
        return min(m, n)
    # the modular rank bounds the rank over Q from below; an exact null space
    # of the matching size bounds it from above
    side = Z if n <= m else np.ascontiguousarray(Z.T)
    K = _lift_kernel(side)
    if K is not None:
        return side.shape[1] - len(K)
    return _bareiss_rank(Z.tolist() if m <= n else Z.T.tolist())


def rank_of_integer_matrix(A: np.ndarray, char=0) -> int:
    """Rank of an integer array over GF(p) or Q without wrapping it in an ExactMatrix."""
    p = as_char(char).value
    if p:
        return _rank_modp(np.mod(A, p) if A.dtype != object else A, p)
    return _rank_rational(A)


# --------------------------------------------------------------------------
# public entry points


def rank(M: ExactMatrix) -> int:
    """Exact rank of ``M`` over its field."""
    p = M.char.value
    if p:
        return _rank_modp(M.data, p)
    return _rank_rational(M.data)


def kernel_basis(M: ExactMatrix) -> list[tuple]:
    """Basis of the right null space; one vector per non-pivot column of the RREF."""
    p = M.char.value
    m, n = M.shape
    if m == 0 or n == 0:
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    if p:
        if p >= _modp.MAX_PRIME:
            return _kernel_modp_python(M.data, p)
        K = _modp.kernel(M.data, p)
        return [tuple(int(x) for x in row) for row in K]
    Z = _integer_rows(M.data)
    if m * n > SMALL_EXACT:
        K = _lift_kernel(_compact(Z))
        if K is not None:
            return K
    return _kernel_fraction(M.data, n)


def _kernel_modp_python(A: np.ndarray, p: int) -> list[tuple]:
    R = [[int(x) % p for x in row] for row in A]
    m, n = len(R), A.shape[1]
    pivots, row = [], 0
    for j in range(n):
        if row == m:
            break
        piv = next((i for i in range(row, m) if R[i][j]), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        inv = pow(R[row][j], -1, p)
        R[row] = [x * inv % p for x in R[row]]
        for i in range(m):
            if i != row and R[i][j]:
                f = R[i][j]
                R[i] = [(a - f * b) % p for a, b in zip(R[i], R[row])]
        pivots.append(j)
        row += 1
    piv = set(pivots)
    out = []
    for f in range(n):
        if f in piv:
            continue
        v = [0] * n
        v[f] = 1
        for rrow, pc in zip(R, pivots):
            v[pc] = (-rrow[f]) % p
        out.append(tuple(v))
    return out


def _mixed_radix(I: MonomialIdeal):
    radix = [a + 1 for a in I.pure_powers]
    weights, w = [], 1
    for b in reversed(radix):
        weights.append(w)
        w *= b
    return (np.array(weights[::-1], dtype=np.int64), w) if w < (1 << 62) else (None, w)


def mult_matrix_entries(I: MonomialIdeal, t: int, ell: Sequence | None = None):
    """Sparse description of ``x l: A_t -> A_{t+1}``: ``(shape, rows, cols, vals)``.

    Column ``j`` is the basis monomial ``standard_basis(I, t)[j]``; row ``i``
    the monomial ``standard_basis(I, t+1)[i]``.
    """
    r = I.r
    ell = [1] * r if ell is None else list(ell)
    if len(ell) != r:
        raise ContractViolation(f"linear form needs {r} coefficients, got {len(ell)}")
    src = standard_basis(I, t)
    tgt = standard_basis(I, t + 1)
    shape = (len(tgt), len(src))
    weights, _ = _mixed_radix(I)
    if weights is None or not len(src) or not len(tgt):
        return shape, *_entries_by_dict(src, tgt, ell)
    # bases are lex-descending, so their radix codes are strictly decreasing
    tcode = (tgt.array @ weights)[::-1]
    scode = src.array @ weights
    rows, cols, vals = [], [], []
    ntgt = len(tgt)
    for i, c in enumerate(ell):
        if not c:
            continue
        cand = scode + weights[i]
        pos = np.searchsorted(tcode, cand)
        pos_c = np.minimum(pos, ntgt - 1)
        hit = np.flatnonzero(tcode[pos_c] == cand)
        rows.append(ntgt - 1 - pos_c[hit])
        cols.append(hit)
        vals.extend([c] * hit.size)
    rows = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    cols = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    return shape, rows.tolist(), cols.tolist(), vals


def _entries_by_dict(src, tgt, ell):
    idx = tgt.index
    rows, cols, vals = [], [], []
    for j, m in enumerate(src.monomials):
        e = list(m)
        for i, c in enumerate(ell):
            if not c:
                continue
            e[i] += 1
            k = idx.get(tuple(e))
            e[i] -= 1
            if k is not None:
                rows.append(k)
                cols.append(j)
                vals.append(c)
    return rows, cols, vals


def build_mult_matrix(I: MonomialIdeal, t: int, ell: Sequence | None = None, char=0) -> ExactMatrix:
    """Matrix of multiplication by ``l`` (default ``x1 + ... + xr``) from degree ``t`` to ``t+1``."""
    if t < 0:
        raise ContractViolation("degree must be non-negative")
    ch = as_char(char)
    (m, n), rows, cols, vals = mult_matrix_entries(I, t, ell)
    if ch.value or all(isinstance(v, (int, np.integer)) for v in vals):
        dense = np.zeros((m, n), dtype=np.int64)
        if rows:
            dense[rows, cols] = [int(_mod_scalar(v, ch.value)) if ch.value else int(v) for v in vals]
        return ExactMatrix(dense, ch)
    dense = np.zeros((m, n), dtype=object)
    dense[:, :] = 0
    for i, j, v in zip(rows, cols, vals):
        dense[i, j] = v
    return ExactMatrix(dense, ch)

"""Exact integer matrix algebra: HNF, SNF, determinants, mod-p elimination.

Everything is arbitrary-precision integer arithmetic; the only numpy use is
int64 elimination mod primes below 2**30, where products stay inside int64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

Row = tuple[int, ...]


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix of Python ints."""

    rows: int
    cols: int
    entries: tuple[Row, ...]

    def __post_init__(self) -> None:
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry shape does not match declared dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "ExactMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        return cls(rows=len(data), cols=len(data[0]) if data else 0, entries=data)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int) -> "ExactMatrix":
        return cls.from_rows([[0] * n for _ in range(m)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(list(zip(*self.entries)))

    def mul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} times {other.rows}x{other.cols}")
        bt = list(zip(*other.entries))
        out = [
            [sum(a * b for a, b in zip(row, col)) for col in bt]
            for row in self.entries
        ]
        return ExactMatrix.from_rows(out)

    def mul_vector(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return [sum(a * b for a, b in zip(row, v)) for row in self.entries]

    def add(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return ExactMatrix.from_rows(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def scale(self, k: int) -> "ExactMatrix":
        return ExactMatrix.from_rows([[k * x for x in r] for r in self.entries])

    def max_abs(self) -> int:
        return max((abs(x) for row in self.entries for x in row), default=0)


@dataclass(frozen=True)
class HNFResult:
    h: ExactMatrix
    u: ExactMatrix  # unimodular, u * m == h


@dataclass(frozen=True)
class SNFResult:
    s: ExactMatrix
    u: ExactMatrix
    v: ExactMatrix  # u * m * v == s, det u, det v = +-1
    invariant_factors: tuple[int, ...]  # nonzero diagonal, d1 | d2 | ...


def hnf(m: ExactMatrix) -> HNFResult:
    """Row Hermite normal form: U*M = H, upper echelon, positive pivots,
    entries above each pivot reduced into [0, pivot).

    Pivoting always selects the smallest nonzero entry and re-reduces
    off-pivot entries on the spot, which keeps coefficient growth tame
    at the ~200x200 sizes used here.
    """
    a = [list(r) for r in m.entries]
    u = [[1 if i == j else 0 for j in range(m.rows)] for i in range(m.rows)]
    nrows, ncols = m.rows, m.cols
    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= nrows:
            break
        while True:
            live = [i for i in range(pivot_row, nrows) if a[i][col] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(a[i][col]))
            if i0 != pivot_row:
                a[pivot_row], a[i0] = a[i0], a[pivot_row]
                u[pivot_row], u[i0] = u[i0], u[pivot_row]
            if len(live) == 1:
                break
            piv = a[pivot_row][col]
            for i in range(pivot_row + 1, nrows):
                if a[i][col] != 0:
                    q = a[i][col] // piv
                    if q:
                        _row_sub(a, u, i, pivot_row, q)
        if a[pivot_row][col] != 0:
            if a[pivot_row][col] < 0:
                a[pivot_row] = [-x for x in a[pivot_row]]
                u[pivot_row] = [-x for x in u[pivot_row]]
            piv = a[pivot_row][col]
            for i in range(pivot_row):
                q = a[i][col] // piv
                if q:
                    _row_sub(a, u, i, pivot_row, q)
            pivot_row += 1
    return HNFResult(h=ExactMatrix.from_rows(a), u=ExactMatrix.from_rows(u))


def _row_sub(a: list[list[int]], u: list[list[int]], i: int, k: int, q: int) -> None:
    ak = a[k]
    a[i] = [x - q * y for x, y in zip(a[i], ak)]
    uk = u[k]
    u[i] = [x - q * y for x, y in zip(u[i], uk)]


def snf(m: ExactMatrix) -> SNFResult:
    """Smith normal form: U*M*V = S diagonal with d1 | d2 | ... ; U, V unimodular."""
    a = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def row_sub(i: int, k: int, q: int) -> None:
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_sub(j: int, k: int, q: int) -> None:
        for row in a:
            row[j] -= q * row[k]
        for row in v:
            row[j] -= q * row[k]

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def clear_at(t: int) -> None:
        """Diagonalize position (t, t) against its row and column."""
        while True:
            best = None
            for i in range(t, nrows):
                for j in range(t, ncols):
                    x = a[i][j]
                    if x != 0 and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return
            _, bi, bj = best
            if bi != t:
                swap_rows(t, bi)
            if bj != t:
                swap_cols(t, bj)
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t] != 0:
                    q = a[i][t] // piv
                    if q:
                        row_sub(i, t, q)
                    if a[i][t] != 0:
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    q = a[t][j] // piv
                    if q:
                        col_sub(j, t, q)
                    if a[t][j] != 0:
                        dirty = True
            if not dirty:
                return

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        clear_at(t)
        if a[t][t] == 0:
            break
        # Divisibility repair: pull any non-multiple into row t and redo.
        piv = a[t][t]
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if a[i][j] % piv != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
            u[t] = [x + y for x, y in zip(u[t], u[offender])]
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    diag = [a[i][i] for i in range(min(nrows, ncols))]
    factors = tuple(d for d in diag if d != 0)
    return SNFResult(
        s=ExactMatrix.from_rows(a),
        u=ExactMatrix.from_rows(u),
        v=ExactMatrix.from_rows(v),
        invariant_factors=factors,
    )


def invariant_factors_of_quotient(diag: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of Z^k / diag(a_1..a_k) Z^k, nontrivial ones only."""
    if any(d <= 0 for d in diag):
        raise ValueError("diagonal entries must be positive")
    if not diag:
        return ()
    res = snf(ExactMatrix.from_rows([[d if i == j else 0 for j in range(len(diag))]
                                     for i, d in enumerate(diag)]))
    return tuple(d for d in res.invariant_factors if d != 1)


# --- determinants ---------------------------------------------------------

BAREISS_MAX_DIM = 64


def det_exact(m: ExactMatrix) -> int:
    """Exact determinant: fraction-free elimination up to 64x64, CRT above."""
    if not m.is_square:
        raise ValueError("determinant needs a square matrix")
    if m.rows <= BAREISS_MAX_DIM:
        return _det_bareiss(m)
    return _det_crt(m)


def _det_bareiss(m: ExactMatrix) -> int:
    n = m.rows
    a = [list(r) for r in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def _hadamard_bound(m: ExactMatrix) -> int:
    """Integer upper bound on |det| from the product of row norms."""
    prod_sq = 1
    for row in m.entries:
        s = sum(x * x for x in row)
        if s == 0:
            return 0
        prod_sq *= s
    return math.isqrt(prod_sq) + 1


def _det_crt(m: ExactMatrix) -> int:
    bound = _hadamard_bound(m)
    if bound == 0:
        return 0
    need = 2 * bound + 1
    residues: list[int] = []
    primes: list[int] = []
    acc = 1
    for p in _modp_prime_stream():
        residues.append(det_mod_p(m, p))
        primes.append(p)
        acc *= p
        if acc > need:
            break
    x = _crt_combine(residues, primes)
    if x > acc // 2:
        x -= acc
    return x


def _crt_combine(residues: Sequence[int], primes: Sequence[int]) -> int:
    x = 0
    acc = 1
    for r, p in zip(residues, primes):
        # Lift x from mod acc to mod acc*p.
        t = ((r - x) * pow(acc, -1, p)) % p
        x += acc * t
        acc *= p
    return x


def det_exact_both_paths(m: ExactMatrix) -> tuple[int, int]:
    """(fraction-free, CRT) determinants; used to cross-check the two routes."""
    return _det_bareiss(m), _det_crt(m)


# --- mod-p elimination ----------------------------------------------------

_NUMPY_PRIME_LIMIT = 1 << 30  # (p-1)^2 must stay inside int64 with slack


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_PRIME_CACHE: list[int] = []


def _extend_prime_cache() -> None:
    n = (_PRIME_CACHE[-1] if _PRIME_CACHE else _NUMPY_PRIME_LIMIT) - 1
    if n % 2 == 0:
        n -= 1
    while n > 3:
        if is_probable_prime(n):
            _PRIME_CACHE.append(n)
            return
        n -= 2
    raise RuntimeError("prime cache exhausted")


def _modp_prime_stream():
    """Primes descending from just below 2**30, for int64-safe elimination."""
    i = 0
    while True:
        while i >= len(_PRIME_CACHE):
            _extend_prime_cache()
        yield _PRIME_CACHE[i]
        i += 1


def _to_modp_array(m: ExactMatrix, p: int) -> np.ndarray:
    return np.array([[x % p for x in row] for row in m.entries], dtype=np.int64)


def _eliminate_mod_p(a: np.ndarray, p: int, track_det: bool) -> tuple[int, int, np.ndarray]:
    """In-place row echelon reduction mod p; returns (rank, det_mod_p, echelon).

    det is only meaningful for square input when track_det is set.
    """
    nrows, ncols = a.shape
    det = 1
    rank = 0
    for col in range(ncols):
        if rank >= nrows:
            break
        sub = a[rank:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            if track_det:
                det = 0
            continue
        i = rank + int(nz[0])
        if i != rank:
            a[[rank, i]] = a[[i, rank]]
            det = -det
        piv = int(a[rank, col])
        det = det * piv % p
        inv = pow(piv, -1, p)
        below = a[rank + 1 :, col]
        nzb = np.nonzero(below)[0]
        if nzb.size:
            idx = rank + 1 + nzb
            f = (a[idx, col] * inv) % p
            a[idx, col:] = (a[idx, col:] - f[:, None] * a[rank, col:]) % p
        rank += 1
    if rank < min(nrows, ncols) and track_det:
        det = 0
    return rank, det % p, a


def det_mod_p(m: ExactMatrix, p: int) -> int:
    """Determinant mod a prime, via int64 elimination (p < 2**30) or pure Python."""
    if not m.is_square:
        raise ValueError("determinant needs a square matrix")
    _require_prime(p)
    if p < _NUMPY_PRIME_LIMIT:
        a = _to_modp_array(m, p)
        _, det, _ = _eliminate_mod_p(a, p, track_det=True)
        return det
    return _det_mod_p_python(m, p)


def det_mod_p_array(a: np.ndarray, p: int) -> int:
    """det mod p of an int64 array already reduced into [0, p); p < 2**30."""
    _, det, _ = _eliminate_mod_p(a.astype(np.int64, copy=True), p, track_det=True)
    return det


def _det_mod_p_python(m: ExactMatrix, p: int) -> int:
    n = m.rows
    a = [[x % p for x in row] for row in m.entries]
    det = 1
    for k in range(n):
        piv_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv_row is None:
            return 0
        if piv_row != k:
            a[k], a[piv_row] = a[piv_row], a[k]
            det = -det
        piv = a[k][k]
        det = det * piv % p
        inv = pow(piv, -1, p)
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] * inv % p
                ai, ak = a[i], a[k]
                for j in range(k, n):
                    ai[j] = (ai[j] - f * ak[j]) % p
    return det % p


def _require_prime(p: int) -> None:
    if p >= 1 << 62:
        raise ValueError("prime modulus must be below 2**62")
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")


def rank_mod_p(m: ExactMatrix, p: int) -> int:
    """Rank of M over F_p."""
    _require_prime(p)
    if p < _NUMPY_PRIME_LIMIT:
        a = _to_modp_array(m, p)
        rank, _, _ = _eliminate_mod_p(a, p, track_det=False)
        return rank
    a = [[x % p for x in row] for row in m.entries]
    return _rank_python(a, p)


def _rank_python(a: list[list[int]], p: int) -> int:
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    rank = 0
    for col in range(ncols):
        piv_row = next((i for i in range(rank, nrows) if a[i][col] % p != 0), None)
        if piv_row is None:
            continue
        a[rank], a[piv_row] = a[piv_row], a[rank]
        inv = pow(a[rank][col] % p, -1, p)
        for i in range(rank + 1, nrows):
            f = a[i][col] * inv % p
            if f:
                ai, ar = a[i], a[rank]
                for j in range(col, ncols):
                    ai[j] = (ai[j] - f * ar[j]) % p
        rank += 1
        if rank >= nrows:
            break
    return rank


def solve_mod_p(m: ExactMatrix, b: Sequence[int], p: int) -> Optional[list[int]]:
    """One solution of M x = b over F_p, or None if the system is inconsistent."""
    _require_prime(p)
    if len(b) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    nrows, ncols = m.rows, m.cols
    a = [[x % p for x in row] + [b[i] % p] for i, row in enumerate(m.entries)]
    pivots: list[tuple[int, int]] = []
    rank = 0
    for col in range(ncols):
        piv_row = next((i for i in range(rank, nrows) if a[i][col] != 0), None)
        if piv_row is None:
            continue
        a[rank], a[piv_row] = a[piv_row], a[rank]
        inv = pow(a[rank][col], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(nrows):
            if i != rank and a[i][col]:
                f = a[i][col]
                ai, ar = a[i], a[rank]
                for j in range(col, ncols + 1):
                    ai[j] = (ai[j] - f * ar[j]) % p
        pivots.append((rank, col))
        rank += 1
        if rank >= nrows:
            break
    for i in range(rank, nrows):
        if a[i][ncols] % p != 0:
            return None
    x = [0] * ncols
    for row, col in pivots:
        x[col] = a[row][ncols]
    return x


def kernel_integer(m: ExactMatrix) -> list[list[int]]:
    """Saturated basis of the integer kernel {v : M v = 0}.

    Rows of the HNF transform of M^T that map to zero rows form a basis of
    the left kernel of M^T, i.e. the kernel of M; coming from a unimodular
    matrix, that basis spans a primitive sublattice.
    """
    res = hnf(m.transpose())
    basis = []
    for i in range(res.h.rows):
        if all(x == 0 for x in res.h.entries[i]):
            basis.append(list(res.u.entries[i]))
    return basis


def solve_integer(m: ExactMatrix, b: Sequence[int]) -> Optional[list[int]]:
    """One integer solution of M x = b, or None.

    Works through the column HNF of M: with M V = H lower-triangular-ish,
    solve H y = b by forward substitution and set x = V y.
    """
    # Column HNF via row HNF of the transpose: U M^T = H  =>  M (U^T) = H^T.
    res = hnf(m.transpose())
    ht = res.h.transpose()  # m.rows x m.cols, lower echelon columns
    ut = res.u.transpose()
    y = [0] * ht.cols
    b_left = list(b)
    # Columns of ht have staircase leading rows; peel them greedily.
    lead = []
    for j in range(ht.cols):
        col = [ht.entries[i][j] for i in range(ht.rows)]
        nz = next((i for i, x in enumerate(col) if x != 0), None)
        lead.append(nz)
    for j in range(ht.cols):
        if lead[j] is None:
            continue
        i = lead[j]
        piv = ht.entries[i][j]
        if b_left[i] % piv != 0:
            return None
        q = b_left[i] // piv
        y[j] = q
        if q:
            for r in range(ht.rows):
                b_left[r] -= q * ht.entries[r][j]
    if any(x != 0 for x in b_left):
        return None
    return ut.mul_vector(y)

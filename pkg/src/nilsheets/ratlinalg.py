"""Exact linear algebra over the rationals.

Elimination is fraction free (Bareiss style Gauss-Jordan on integer rows); a
rational input row is first scaled by the lcm of its denominators.  Free
variables are always set to zero, so results are deterministic.

``rank_mod_p`` is a fast numpy rank over GF(p).  It never exceeds the rank over
Q, so it certifies the exact rank whenever it reaches a known upper bound.
Callers use it only in that way.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "RatMatrix",
    "DimensionError",
    "solve",
    "nullspace",
    "rank",
    "eigenspace_dim",
    "rank_mod_p",
    "PRIME",
    "check_mode",
]

PRIME = 2147483647  # 2^31 - 1: products of residues fit in int64

_CHECK = os.environ.get("NILSHEETS_CHECK", "") not in ("", "0")


def check_mode(flag: bool | None = None) -> bool:
    """Get or set exact back-substitution checking of every solve/nullspace."""
    global _CHECK
    if flag is not None:
        _CHECK = bool(flag)
    return _CHECK


class DimensionError(ValueError):
    pass


class RatMatrix:
    """Dense matrix of exact rationals (``Fraction`` entries, lowest terms)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        self.rows = [[Fraction(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise DimensionError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "RatMatrix":
        return cls([[0] * n for _ in range(m)], n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.rows == other.rows and self.shape == other.shape

    def __repr__(self):
        return f"RatMatrix({self.nrows}x{self.ncols})"

    def apply(self, x: Sequence) -> list[Fraction]:
        if len(x) != self.ncols:
            raise DimensionError("vector length does not match column count")
        return [sum((a * b for a, b in zip(r, x) if a and b), Fraction(0)) for r in self.rows]

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise DimensionError("inner dimensions differ")
        sparse = [[(j, x) for j, x in enumerate(r) if x] for r in other.rows]
        out = []
        for r in self.rows:
            acc = [Fraction(0)] * other.ncols
            for k, a in enumerate(r):
                if a:
                    for j, b in sparse[k]:
                        acc[j] += a * b
            out.append(acc)
        return RatMatrix(out, other.ncols)

    def shifted(self, k) -> "RatMatrix":
        """``self - k * I``."""
        if self.nrows != self.ncols:
            raise DimensionError("matrix is not square")
        out = RatMatrix.__new__(RatMatrix)
        out.rows = [[x - k if i == j else x for j, x in enumerate(r)] for i, r in enumerate(self.rows)]
        out.nrows, out.ncols = self.nrows, self.ncols
        return out

    def trace(self):
        return sum(self.rows[i][i] for i in range(min(self.shape)))

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)


def _as_rows(A) -> tuple[list[list[Fraction]], int]:
    if isinstance(A, RatMatrix):
        return A.rows, A.ncols
    rows = [list(r) for r in A]
    return rows, (len(rows[0]) if rows else 0)


def _int_row(row) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = den * x.denominator // math.gcd(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def _gauss_jordan(rows: list[list[int]], ncols: int):
    """Fraction-free Gauss-Jordan elimination in place.

    Returns ``(rows, pivots, d)``: the leading ``len(pivots)`` rows are the
    pivot rows, each with entry ``d`` in its pivot column and zeros in every
    other pivot column, i.e. ``rows / d`` is the reduced row echelon form.
    """
    m = len(rows)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = None
        best = None
        for i in range(r, m):
            v = rows[i][c]
            if v:
                # prefer small pivots to limit growth
                a = abs(v)
                if best is None or a < best:
                    piv, best = i, a
                    if a == 1:
                        break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            a = row[c]
            if a:
                if prev == 1:
                    new = [x * p for x in row]
                    for j in nz:
                        new[j] -= a * prow[j]
                else:
                    new = [x * p // prev if x else 0 for x in row]
                    for j in nz:
                        new[j] = (row[j] * p - a * prow[j]) // prev
                rows[i] = new
            elif p != prev:
                rows[i] = [x * p // prev if x else 0 for x in row]
        pivots.append(c)
        prev = p
        r += 1
    return rows, pivots, prev


def _reduce(A, extra: Sequence | None = None):
    rows, ncols = _as_rows(A)
    if extra is not None:
        if len(extra) != len(rows):
            raise DimensionError("right-hand side length does not match row count")
        work = [_int_row(list(r) + [b]) for r, b in zip(rows, extra)]
        return _gauss_jordan(work, ncols + 1), ncols
    work = [_int_row(r) for r in rows]
    return _gauss_jordan(work, ncols), ncols


def solve(A, b: Sequence) -> list[Fraction] | None:
    """Some ``x`` with ``A x = b`` (free variables zero), or ``None``."""
    (rows, pivots, d), n = _reduce(A, b)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = Fraction(rows[r][n], rows[r][c])
    if _CHECK:
        arows, _ = _as_rows(A)
        for row, bi in zip(arows, b):
            assert sum((a * xi for a, xi in zip(row, x) if a and xi), Fraction(0)) == bi, \
                "solve: back-substitution failed"
    return x


def nullspace(A) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    (rows, pivots, d), n = _reduce(A)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            if rows[r][f]:
                v[c] = Fraction(-rows[r][f], rows[r][c])
        basis.append(v)
    if _CHECK:
        arows, _ = _as_rows(A)
        for v in basis:
            for row in arows:
                assert sum((a * x for a, x in zip(row, v) if a and x), Fraction(0)) == 0, \
                    "nullspace: vector not in kernel"
    return basis


def rank(A) -> int:
    (_, pivots, _), _ = _reduce(A)
    return len(pivots)


def eigenspace_dim(A, k) -> int:
    """``dim ker(A - k I)``."""
    rows, n = _as_rows(A)
    if len(rows) != n:
        raise DimensionError("matrix is not square")
    shifted = [[x - k if i == j else x for j, x in enumerate(r)] for i, r in enumerate(rows)]
    return n - rank(shifted)


def to_mod_p(A, p: int = PRIME) -> np.ndarray:
    """Reduce a rational matrix mod p; raises ZeroDivisionError if p divides a
    denominator."""
    rows, n = _as_rows(A)
    out = np.zeros((len(rows), n), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if x:
                if isinstance(x, Fraction) and x.denominator != 1:
                    if x.denominator % p == 0:
                        raise ZeroDivisionError("denominator divisible by p")
                    out[i, j] = x.numerator * pow(x.denominator, -1, p) % p
                else:
                    out[i, j] = int(x) % p
    return out


def rank_mod_p(M, p: int = PRIME) -> int:
    """Rank over GF(p) of an integer (or already reduced) matrix."""
    M = np.array(M, dtype=np.int64) % p if not isinstance(M, np.ndarray) else M % p
    M = M.copy()
    m, n = M.shape if M.ndim == 2 else (0, 0)
    r = 0
    for c in range(n):
        if r == m:
            break
        nzr = np.nonzero(M[r:, c])[0]
        if nzr.size == 0:
            continue
        i = r + int(nzr[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        below = np.nonzero(M[r + 1:, c])[0] + r + 1
        if below.size:
            f = M[below, c][:, None]
            M[below] = (M[below] - f * M[r][None, :]) % p
        r += 1
    return r

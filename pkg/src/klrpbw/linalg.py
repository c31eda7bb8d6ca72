"""Exact linear algebra over Q(t).

Matrices are plain lists of rows whose entries are :class:`RatFun` (ints and
Laurent polynomials are accepted on input).  Each row is first cleared of
denominators and negative powers of ``t``, then fraction-free (Bareiss)
elimination runs over ``Z[t]`` using FLINT polynomials, so every intermediate
division is exact.
"""

from __future__ import annotations

from typing import Sequence

from flint import fmpz_poly

from .exact import ONE, LaurentPoly, RatFun, as_ratfun

__all__ = [
    "NotInSpan",
    "SingularBasis",
    "ExactSolver",
    "determinant",
    "solve",
    "inverse",
    "matmul",
    "transpose",
    "identity",
    "is_unitriangular",
    "BasisSolver",
    "pivot_columns",
]


class NotInSpan(ValueError):
    """A right-hand side is not in the column span of the basis."""


class SingularBasis(ValueError):
    """The proposed basis vectors are linearly dependent."""


Matrix = list[list[RatFun]]


def _lcm(a: fmpz_poly, b: fmpz_poly) -> fmpz_poly:
    if a == 1:
        return b
    if b == 1:
        return a
    return (a * b) // a.gcd(b)


def _clear_row(row: Sequence) -> tuple[list[fmpz_poly], RatFun]:
    """Return ``(poly_row, factor)`` with ``poly_row == factor * row``."""
    row = [as_ratfun(x) for x in row]
    den = fmpz_poly([1])
    lo = None
    for x in row:
        if x.is_zero():
            continue
        den = _lcm(den, x.denominator.split()[1])
        v = x.numerator.valuation
        lo = v if lo is None else min(lo, v)
    if lo is None:
        return [fmpz_poly() for _ in row], RatFun(1)
    out = []
    for x in row:
        if x.is_zero():
            out.append(fmpz_poly())
            continue
        nv, npoly = x.numerator.split()
        q = den // x.denominator.split()[1]
        out.append((npoly * q).left_shift(nv - lo))
    factor = RatFun(LaurentPoly.from_poly(den, -lo))
    return out, factor


def _poly_to_ratfun(p: fmpz_poly) -> RatFun:
    return RatFun.from_laurent(LaurentPoly.from_poly(p))


def _bareiss(rows: list[list[fmpz_poly]], pivot_cols: int) -> tuple[list[list[fmpz_poly]], list[int], int]:
    """Fraction-free row echelon form, in place.

    Only the first ``pivot_cols`` columns are searched for pivots.  Returns the
    matrix, the list of pivot columns and the sign of the row permutation.
    """
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    prev = fmpz_poly([1])
    sign = 1
    pivots: list[int] = []
    k = 0
    for c in range(pivot_cols):
        if k >= m:
            break
        r = next((i for i in range(k, m) if not rows[i][c].is_zero()), None)
        if r is None:
            continue
        if r != k:
            rows[k], rows[r] = rows[r], rows[k]
            sign = -sign
        piv = rows[k][c]
        rk = rows[k]
        for i in range(k + 1, m):
            ri = rows[i]
            a = ri[c]
            if a.is_zero():
                if prev != 1:
                    for j in range(c + 1, ncols):
                        if not ri[j].is_zero():
                            ri[j] = (piv * ri[j]) // prev
                else:
                    for j in range(c + 1, ncols):
                        if not ri[j].is_zero():
                            ri[j] = piv * ri[j]
                continue
            for j in range(c + 1, ncols):
                v = piv * ri[j] - a * rk[j]
                ri[j] = v // prev if prev != 1 else v
            ri[c] = fmpz_poly()
        prev = piv
        pivots.append(c)
        k += 1
    return rows, pivots, sign


def determinant(M: Sequence[Sequence]) -> RatFun:
    n = len(M)
    if n == 0:
        return RatFun(1)
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    rows = []
    factor = RatFun(1)
    for r in M:
        pr, f = _clear_row(r)
        rows.append(pr)
        factor = factor * f
    rows, pivots, sign = _bareiss(rows, n)
    if len(pivots) < n:
        return RatFun(0)
    return RatFun(sign) * _poly_to_ratfun(rows[n - 1][n - 1]) / factor


class ExactSolver:
    """Solve ``A X = B`` for ``A`` with independent columns.

    ``A`` is ``m x n`` with ``m >= n``.  The solution is unique when it exists;
    :class:`NotInSpan` is raised when some column of ``B`` is not in the span
    of the columns of ``A`` and :class:`SingularBasis` when the columns of
    ``A`` are dependent.
    """

    def __init__(self, A: Sequence[Sequence]):
        self.A = [list(r) for r in A]
        self.m = len(self.A)
        self.n = len(self.A[0]) if self.A else 0

    def solve(self, B: Sequence[Sequence]) -> Matrix:
        m, n = self.m, self.n
        if len(B) != m:
            raise ValueError("row count mismatch")
        k = len(B[0]) if m else 0
        rows = [_clear_row(list(a) + list(b))[0] for a, b in zip(self.A, B)]
        rows, pivots, _ = _bareiss(rows, n)
        if len(pivots) < n:
            raise SingularBasis(f"basis of {n} vectors has rank {len(pivots)}")
        for i in range(n, m):
            if any(not rows[i][n + j].is_zero() for j in range(k)):
                raise NotInSpan("right-hand side not in span of basis")
        D = rows[n - 1][n - 1]
        Dr = _poly_to_ratfun(D)
        X: Matrix = [[RatFun() for _ in range(k)] for _ in range(n)]
        for j in range(k):
            num = [fmpz_poly() for _ in range(n)]
            for i in range(n - 1, -1, -1):
                acc = D * rows[i][n + j]
                for l in range(i + 1, n):
                    if not rows[i][l].is_zero() and not num[l].is_zero():
                        acc -= rows[i][l] * num[l]
                q, r = divmod(acc, rows[i][i])
                if not r.is_zero():
                    raise ArithmeticError("inexact fraction-free back substitution")
                num[i] = q
            for i in range(n):
                if not num[i].is_zero():
                    X[i][j] = _poly_to_ratfun(num[i]) / Dr
        return X

    def solve_vector(self, b: Sequence) -> list[RatFun]:
        return [row[0] for row in self.solve([[x] for x in b])]


def solve(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    return ExactSolver(A).solve(B)


def identity(n: int) -> Matrix:
    return [[RatFun(1) if i == j else RatFun() for j in range(n)] for i in range(n)]


def inverse(M: Sequence[Sequence]) -> Matrix:
    return solve(M, identity(len(M)))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(n):
            acc = RatFun()
            for a, brow in zip(row, B):
                if a and brow[j]:
                    acc = acc + as_ratfun(a) * as_ratfun(brow[j])
            new.append(acc)
        out.append(new)
    return out


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def is_unitriangular(M: Sequence[Sequence], upper: bool = True) -> bool:
    n = len(M)
    for i in range(n):
        for j in range(n):
            x = as_ratfun(M[i][j])
            if i == j and x != ONE:
                return False
            if (i > j if upper else i < j) and not x.is_zero():
                return False
    return True


class BasisSolver:
    """Coordinates with respect to a fixed family of sparse vectors.

    ``columns`` are dicts ``key -> scalar``.  A square subsystem on a set of
    pivot keys is inverted once; every :meth:`coordinates` call then costs one
    matrix-vector product plus a full membership check on all keys.
    """

    def __init__(self, columns: Sequence[dict], keys: Sequence | None = None):
        self.columns = [dict(c) for c in columns]
        if keys is None:
            seen: dict = {}
            for col in self.columns:
                for k in col:
                    seen.setdefault(k, None)
            keys = sorted(seen)
        self.keys = list(keys)
        n = len(self.columns)
        self.n = n
        if n == 0:
            self.pivot_keys: list = []
            self._inv: Matrix = []
            return
        rows = [_clear_row([col.get(k, 0) for k in self.keys])[0] for col in self.columns]
        _, pivots, _ = _bareiss(rows, len(self.keys))
        if len(pivots) < n:
            raise SingularBasis(f"family of {n} vectors has rank {len(pivots)}")
        self.pivot_keys = [self.keys[p] for p in pivots]
        square = [[as_ratfun(col.get(k, 0)) for col in self.columns] for k in self.pivot_keys]
        self._inv = inverse(square)

    def coordinates(self, vec: dict, check: bool = True) -> list[RatFun]:
        rhs = [as_ratfun(vec.get(k, 0)) for k in self.pivot_keys]
        out = []
        for row in self._inv:
            acc = RatFun()
            for a, b in zip(row, rhs):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        if check:
            recon: dict = {}
            for x, col in zip(out, self.columns):
                if not x:
                    continue
                for k, v in col.items():
                    recon[k] = recon.get(k, RatFun()) + x * as_ratfun(v)
            for k in set(recon) | set(vec):
                if recon.get(k, RatFun()) != as_ratfun(vec.get(k, 0)):
                    raise NotInSpan(f"vector not in span (mismatch at {k})")
        return out


def pivot_columns(columns: Sequence[dict], keys: Sequence) -> list[int]:
    """Indices of the columns independent of all earlier ones (greedy)."""
    if not columns:
        return []
    rows = [_clear_row([col.get(k, 0) for col in columns])[0] for k in keys]
    _, pivots, _ = _bareiss(rows, len(columns))
    return pivots

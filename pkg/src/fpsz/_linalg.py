"""Dense linear algebra that works on Fractions and floats alike.

Everything here operates on lists of lists.  The exact backend passes
fractions.Fraction entries through unchanged; the float backend reuses the
same routines with float (or complex) entries.  Matrices are small (a few
thousand entries at most), so clarity beats asymptotics.
"""

from __future__ import annotations

import math
from fractions import Fraction

# Pivot threshold for float LDL: pivot <= tol * (largest pivot so far).
FLOAT_PIVOT_TOL = 1e-12


def _conj(x):
    return x.conjugate()


def _real(x):
    return x.real if isinstance(x, complex) else x


def ldl_factor(matrix, exact: bool, tol: float = FLOAT_PIVOT_TOL):
    """LDL* factorization of a Hermitian PSD matrix, without pivoting.

    Returns (lower, pivots, bad_index).  `pivots` holds the diagonal of D up
    to (not including) the first nonpositive / below-tolerance pivot, whose
    index is `bad_index` (None if the factorization completed).  A nonpositive
    pivot in a Gram matrix is meaningful - it marks an algebraic relation -
    so it is reported, not raised.
    """
    dim = len(matrix)
    a = [list(row) for row in matrix]
    pivots = []
    max_pivot = 0
    for j in range(dim):
        d = _real(a[j][j])
        if exact:
            bad = d <= 0
        else:
            bad = d <= tol * max(1.0, max_pivot)
        if bad:
            return a, pivots, j
        pivots.append(d)
        if d > max_pivot:
            max_pivot = d
        for i in range(j + 1, dim):
            lij = a[i][j] / d
            a[i][j] = lij
            lij_d = lij * d
            row_i = a[i]
            for k in range(j + 1, i + 1):
                row_i[k] = row_i[k] - lij_d * _conj(a[k][j])
    return a, pivots, None


def ldl_pivots(matrix, exact: bool, tol: float = FLOAT_PIVOT_TOL):
    """Pivots of the LDL* factorization; see ldl_factor."""
    _, pivots, bad = ldl_factor(matrix, exact, tol)
    return pivots, bad


def ldl_solve(lower, pivots, rhs):
    """Solve L D L* x = rhs given a completed ldl_factor output."""
    dim = len(pivots)
    y = list(rhs)
    for i in range(dim):
        for k in range(i):
            y[i] = y[i] - lower[i][k] * y[k]
    for i in range(dim):
        y[i] = y[i] / pivots[i]
    for i in range(dim - 1, -1, -1):
        for k in range(i + 1, dim):
            y[i] = y[i] - _conj(lower[k][i]) * y[k]
    return y


def determinant(matrix):
    """Determinant by Gaussian elimination with partial pivoting.

    Independent of the LDL route on purpose: it is the cross-check for the
    pivot-product determinants.
    """
    dim = len(matrix)
    if dim == 0:
        return 1
    a = [list(row) for row in matrix]
    exact = isinstance(a[0][0], (Fraction, int))
    det = Fraction(1) if exact else 1.0
    sign = 1
    for j in range(dim):
        # pick a pivot row: any nonzero for exact entries, max |.| for floats
        pivot_row = None
        if exact:
            for i in range(j, dim):
                if a[i][j] != 0:
                    pivot_row = i
                    break
        else:
            best = -1.0
            for i in range(j, dim):
                m = abs(a[i][j])
                if m > best:
                    best, pivot_row = m, i
            if best == 0.0:
                pivot_row = None
        if pivot_row is None or a[pivot_row][j] == 0:
            return det * 0
        if pivot_row != j:
            a[j], a[pivot_row] = a[pivot_row], a[j]
            sign = -sign
        piv = a[j][j]
        det = det * piv
        for i in range(j + 1, dim):
            factor = a[i][j] / piv
            if factor == 0:
                continue
            row_i, row_j = a[i], a[j]
            for k in range(j, dim):
                row_i[k] = row_i[k] - factor * row_j[k]
    return sign * det


def is_psd(matrix, exact: bool, tol: float = FLOAT_PIVOT_TOL) -> bool:
    """Positive semidefiniteness via recursive Schur complements.

    A Hermitian matrix is PSD iff its (0,0) entry is >= 0, a zero (0,0)
    entry forces a zero first row, and the Schur complement is PSD.
    """
    a = [list(row) for row in matrix]
    dim = len(a)
    scale = max((abs(_real(a[i][i])) for i in range(dim)), default=1)
    eps = 0 if exact else tol * max(1.0, scale)
    for j in range(dim):
        d = _real(a[j][j])
        if d < -eps:
            return False
        if d <= eps:
            for k in range(j + 1, dim):
                if abs(a[j][k]) > eps or abs(a[k][j]) > eps:
                    return False
            continue
        for i in range(j + 1, dim):
            factor = a[i][j] / d
            for k in range(j + 1, dim):
                a[i][k] = a[i][k] - factor * a[j][k]
            a[i][j] = 0
        for k in range(j + 1, dim):
            a[j][k] = 0
    return True


def log_fraction(x) -> float:
    """log of a positive Fraction/int/float, safe for huge numerators."""
    if isinstance(x, Fraction):
        if x <= 0:
            raise ValueError(f"log of nonpositive value {x}")
        return math.log(x.numerator) - math.log(x.denominator)
    if isinstance(x, int):
        if x <= 0:
            raise ValueError(f"log of nonpositive value {x}")
        return math.log(x)
    return math.log(x)

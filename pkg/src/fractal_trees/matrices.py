"""Dense exact linear algebra over Q and over the rational-function field.

Matrices are plain lists of lists.  The entries only need field
operations, so the same elimination code serves `Fraction` matrices and
`RationalFunction` matrices (the Schur complement in the decimation
engine is computed over Q(z)).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polys import Polynomial, RationalFunction

Q = Fraction

Matrix = list  # list of rows


def identity(n: int, one=Q(1), zero=Q(0)) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            acc = ai[0] * b[0][j]
            for t in range(1, k):
                acc = acc + ai[t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def trace(a: Matrix):
    acc = a[0][0]
    for i in range(1, len(a)):
        acc = acc + a[i][i]
    return acc


def solve_linear(a: Matrix, rhs: Matrix) -> Matrix:
    """Solve a X = rhs by Gaussian elimination over a field.

    `a` must be square and nonsingular; `rhs` has matching row count.
    Works for any entry type with field operations and truthiness-free
    zero tests via `== 0`-style comparison against the entry's own zero.
    """
    n = len(a)
    m = len(rhs[0])
    aug = [list(a[i]) + list(rhs[i]) for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            e = aug[r][col]
            if not _is_zero_entry(e):
                piv = r
                break
        if piv is None:
            raise ValueError("singular matrix in solve_linear")
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
        inv = _entry_inverse(aug[col][col])
        aug[col] = [e * inv for e in aug[col]]
        for r in range(n):
            if r == col:
                continue
            f = aug[r][col]
            if _is_zero_entry(f):
                continue
            aug[r] = [er - f * ec for er, ec in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _is_zero_entry(e) -> bool:
    if isinstance(e, RationalFunction):
        return e.is_zero()
    return e == 0


def _entry_inverse(e):
    if isinstance(e, RationalFunction):
        return RationalFunction(e.den, e.num)
    return 1 / e


def det_gauss(a: Matrix) -> Fraction:
    """Determinant of a Fraction matrix by exact Gaussian elimination."""
    n = len(a)
    m = [list(row) for row in a]
    det = Q(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Q(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                m[r] = [er - f * ec for er, ec in zip(m[r], m[col])]
    return det


def bareiss_det_int(a: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix.

    All intermediate entries are exact minors of the input, so the
    computation stays in the integers; divisions are exact.
    """
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = None
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    piv = r
                    break
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mi = m[i]
            mk = m[k]
            f = mi[k]
            for j in range(k + 1, n):
                mi[j] = (pivot * mi[j] - f * mk[j]) // prev
            mi[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def charpoly(a: Matrix) -> Polynomial:
    """Characteristic polynomial det(M - x I) of a square Fraction matrix.

    Uses the Faddeev-LeVerrier recurrence, which is exact and division
    free apart from divisions by 1..n.  Note the sign convention: this is
    det(M - xI), i.e. (-1)^n times the monic characteristic polynomial.
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("charpoly needs a square matrix")
    if n == 0:
        return Polynomial.const(1)
    # det(xI - M) = x^n + c[1] x^(n-1) + ... + c[n]
    coeffs = [Q(1)]
    nmat = None
    for k in range(1, n + 1):
        if nmat is None:
            mk = a
        else:
            mk = mat_mul(a, nmat)
        ck = -trace(mk) / k
        coeffs.append(ck)
        if k < n:
            nmat = [list(row) for row in mk]
            for i in range(n):
                nmat[i][i] = nmat[i][i] + ck
    monic = Polynomial(list(reversed(coeffs)))  # in x, lowest degree first
    if n % 2 == 1:
        monic = -monic
    return monic


def charpoly_pencil(lap: Sequence[Sequence[int]], degs: Sequence[int]) -> Polynomial:
    """Characteristic polynomial det(P - x I) for P = D^-1 L, exactly.

    det(P - xI) = det(L - xD) / det(D).  The integer polynomial
    det(L - xD) has degree n; it is recovered from n+1 exact integer
    determinant evaluations (Bareiss) and Lagrange interpolation, which
    is far cheaper than symbolic elimination for the sizes used here.
    """
    n = len(lap)
    pts = []
    vals = []
    for t in range(n + 1):
        m = [[lap[i][j] - (t * degs[i] if i == j else 0) for j in range(n)] for i in range(n)]
        pts.append(Q(t))
        vals.append(Q(bareiss_det_int(m)))
    from .polys import _lagrange

    q = _lagrange(pts, vals)
    det_d = 1
    for d in degs:
        det_d *= d
    return q * Q(1, det_d)

"""Dense matrices over exact rings (rationals, polynomials, Laurent polynomials).

A ``Mat`` is an immutable grid; entries are whatever ring element the caller
supplies.  Ring-specific helpers convert between entry types.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .poly import (
    INF,
    ONE_LAURENT,
    ONE_POLY,
    ZERO_LAURENT,
    ZERO_POLY,
    EvalAtPole,
    Laurent,
    Poly,
    as_fraction,
)


class Mat:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def size(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("not square")
        return self.nrows

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        from .textfmt import format_matrix

        if self.rows and isinstance(self.rows[0][0] if self.ncols else None, (Laurent, Poly)):
            return f"Mat({format_matrix(self.rows)!r})"
        return f"Mat({[[str(e) for e in r] for r in self.rows]})"

    def map(self, f: Callable) -> "Mat":
        return Mat([[f(e) for e in r] for r in self.rows])

    def T(self) -> "Mat":
        return Mat(list(zip(*self.rows))) if self.rows else self

    transpose = T

    def __add__(self, other: "Mat") -> "Mat":
        return Mat([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda e: -e)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = None
                for a, b in zip(r, c):
                    if a and b:
                        t = a * b
                        acc = t if acc is None else acc + t
                row.append(acc if acc is not None else _zero_like(r[0] if r else c[0]))
            out.append(row)
        return Mat(out)

    def scale(self, c) -> "Mat":
        return self.map(lambda e: e * c)

    def cols(self, idx) -> "Mat":
        idx = list(idx)
        return Mat([[r[j] for j in idx] for r in self.rows])

    def rows_sel(self, idx) -> "Mat":
        idx = list(idx)
        return Mat([self.rows[i] for i in idx])

    def col(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def is_zero(self) -> bool:
        return all(not e for r in self.rows for e in r)

    def hstack(self, other: "Mat") -> "Mat":
        return Mat([ra + rb for ra, rb in zip(self.rows, other.rows)])

    def vstack(self, other: "Mat") -> "Mat":
        return Mat(self.rows + other.rows)


def _zero_like(e):
    if hasattr(e, "zero_like"):
        return e.zero_like()
    if isinstance(e, Laurent):
        return ZERO_LAURENT
    if isinstance(e, Poly):
        return ZERO_POLY
    return Fraction(0)


def _one_like(e):
    if isinstance(e, Laurent):
        return ONE_LAURENT
    if isinstance(e, Poly):
        return ONE_POLY
    return Fraction(1)


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> Mat:
    return Mat([[one if i == j else zero for j in range(n)] for i in range(n)])


def laurent_identity(n: int) -> Mat:
    return identity(n, ONE_LAURENT, ZERO_LAURENT)


def poly_identity(n: int) -> Mat:
    return identity(n, ONE_POLY, ZERO_POLY)


def diag(entries, zero) -> Mat:
    n = len(entries)
    return Mat([[entries[i] if i == j else zero for j in range(n)] for i in range(n)])


def block_diag(a: Mat, b: Mat, zero) -> Mat:
    rows = [list(r) + [zero] * b.ncols for r in a.rows]
    rows += [[zero] * a.ncols + list(r) for r in b.rows]
    return Mat(rows)


def rational_matrix(rows) -> Mat:
    return Mat([[as_fraction(e) for e in r] for r in rows])


def to_laurent(m: Mat) -> Mat:
    def conv(e):
        if isinstance(e, Laurent):
            return e
        if isinstance(e, Poly):
            return Laurent.from_poly(e)
        return Laurent.const(e)

    return m.map(conv)


def to_poly(m: Mat) -> Mat:
    def conv(e):
        if isinstance(e, Poly):
            return e
        if isinstance(e, Laurent):
            return e.to_poly()
        return Poly.const(e)

    return m.map(conv)


def laurent_to_w(m: Mat) -> Mat:
    """Laurent matrix without positive powers -> polynomial matrix in w = 1/z."""
    return m.map(lambda e: e.to_w())


def w_to_laurent(m: Mat) -> Mat:
    return m.map(Laurent.from_w)


def shift_exponent(m: Mat, k: int) -> Mat:
    """Multiply every entry by z**k."""
    return m.map(lambda e: e.shift_exp(k))


def subs_inverse(m: Mat) -> Mat:
    """Substitute z -> 1/z entrywise."""
    return m.map(lambda e: e.subs_inverse())


def max_exp(m: Mat) -> int:
    return max((e.max_exp for r in m.rows for e in r if e), default=0)


def min_exp(m: Mat) -> int:
    return min((e.min_exp for r in m.rows for e in r if e), default=0)


def is_poly_matrix(m: Mat) -> bool:
    return all(e.is_poly() for r in m.rows for e in r)


def is_poly_w_matrix(m: Mat) -> bool:
    return all(e.is_poly_w() for r in m.rows for e in r)


def eval_at(m: Mat, x, chart: str = "0") -> Mat:
    """Evaluate a Laurent matrix at a rational point.

    ``chart="0"`` substitutes ``z = x``.  ``chart="inf"`` reads ``x`` as the
    value of ``w = 1/z``; ``x = 0`` there is the point at infinity.  A
    point ``x = INF`` is always the point at infinity.
    """
    if chart not in ("0", "inf"):
        raise ValueError(f"unknown chart {chart!r}")
    if x is INF or (chart == "inf" and as_fraction(x) == 0):
        return m.map(lambda e: e(INF))
    x = as_fraction(x)
    if chart == "inf":
        x = 1 / x
    return m.map(lambda e: e(x))


def eval_poly_matrix(m: Mat, x) -> Mat:
    x = as_fraction(x)
    return m.map(lambda p: p(x))


# ---------------------------------------------------------------------------
# determinants and rational linear algebra


def bareiss_det(m: Mat):
    """Fraction-free determinant; entries must support ``exact_div``."""
    n = m.size
    if n == 0:
        return Fraction(1)
    a = [list(r) for r in m.rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return _zero_like(m.rows[0][0])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                t = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = t if prev is None else _exact_div(t, prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def _exact_div(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a / b
    return a.exact_div(b)


def rref(m: Mat):
    """Reduced row echelon form over the rationals; returns (R, pivot_columns)."""
    a = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    pivots = []
    row = 0
    for col in range(nc):
        piv = None
        for i in range(row, nr):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [e * inv for e in a[row]]
        for i in range(nr):
            if i != row and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
        if row == nr:
            break
    return Mat(a) if a else m, pivots


def rank(m: Mat) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return len(rref(m)[1])


def nullspace(m: Mat) -> list:
    """Basis of the right kernel {v : m v = 0} as a list of column vectors (lists)."""
    r, piv = rref(m)
    free = [j for j in range(m.ncols) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -r.rows[i][f]
        basis.append(v)
    return basis


def left_nullspace(m: Mat) -> list:
    return nullspace(m.T())


def inverse(m: Mat) -> Mat:
    n = m.size
    aug = Mat([list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)])
    r, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return r.cols(range(n, 2 * n))


def det(m: Mat) -> Fraction:
    return bareiss_det(m)


def solve(m: Mat, b: Mat) -> Mat:
    """Solve m x = b for square invertible m."""
    return inverse(m) @ b


def col_space_basis(vectors) -> list:
    """Independent subset spanning the same space, in reduced form (as rows)."""
    if not vectors:
        return []
    r, piv = rref(Mat(vectors))
    return [list(r.rows[i]) for i in range(len(piv))]


def complete_basis(vectors, n: int) -> list:
    """Extend independent vectors (lists) to a basis of Q^n with standard vectors."""
    out = [list(map(as_fraction, v)) for v in vectors]
    for i in range(n):
        e = [Fraction(int(i == j)) for j in range(n)]
        if rank(Mat(out + [e])) > len(out):
            out.append(e)
        if len(out) == n:
            break
    return out


def canonical_projective(v) -> tuple:
    """Scale so that the first nonzero entry is 1."""
    v = [as_fraction(e) for e in v]
    for e in v:
        if e:
            return tuple(x / e for x in v)
    raise ValueError("zero vector has no projective class")


def columns_to_mat(cols) -> Mat:
    """Build a matrix whose columns are the given vectors."""
    return Mat([list(r) for r in zip(*cols)])


def eval_raises_pole(m: Mat, x) -> bool:
    try:
        eval_at(m, x)
        return False
    except EvalAtPole:
        return True

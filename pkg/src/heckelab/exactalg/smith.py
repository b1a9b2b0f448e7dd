"""Smith normal form over Q[z].

Pivot choice is degree-minimizing with lexicographic (row, column)
tie-break, so outputs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .matrix import Mat
from .poly import ONE_POLY, ZERO_POLY, Poly


@dataclass(frozen=True)
class SmithResult:
    U: Mat
    D: Mat
    W: Mat
    U_inv: Mat
    W_inv: Mat
    det_U: Fraction
    det_W: Fraction

    @property
    def rank(self) -> int:
        return sum(1 for i in range(min(self.D.shape)) if self.D[i, i])

    def invariant_factors(self) -> list:
        return [self.D[i, i] for i in range(min(self.D.shape))]


def _eye(n):
    return [[ONE_POLY if i == j else ZERO_POLY for j in range(n)] for i in range(n)]


def smith_decomposition(m: Mat) -> SmithResult:
    """Full Smith decomposition ``U @ m @ W == D`` with tracked inverses."""
    nr, nc = m.shape
    A = [[e if isinstance(e, Poly) else _as_poly(e) for e in r] for r in m.rows]
    U, Ui, W, Wi = _eye(nr), _eye(nr), _eye(nc), _eye(nc)
    det_u = Fraction(1)
    det_w = Fraction(1)

    def row_add(i, j, c):  # row_i += c * row_j
        A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        for r in Ui:
            r[j] = r[j] - c * r[i]

    def col_add(j, i, c):  # col_j += c * col_i
        for r in A:
            r[j] = r[j] + c * r[i]
        for r in W:
            r[j] = r[j] + c * r[i]
        Wi[i] = [a - c * b for a, b in zip(Wi[i], Wi[j])]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in W:
            r[i], r[j] = r[j], r[i]
        Wi[i], Wi[j] = Wi[j], Wi[i]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    e = A[i][j]
                    if e and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != t:
                row_swap(t, bi)
                det_u = -det_u
            if bj != t:
                col_swap(t, bj)
                det_w = -det_w
            piv = A[t][t]
            clean = True
            for i in range(t + 1, nr):
                if A[i][t]:
                    q, r = divmod(A[i][t], piv)
                    if q:
                        row_add(i, t, -q)
                    if r:
                        clean = False
            for j in range(t + 1, nc):
                if A[t][j]:
                    q, r = divmod(A[t][j], piv)
                    if q:
                        col_add(j, t, -q)
                    if r:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if A[i][j] and (A[i][j] % piv):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, ONE_POLY)
        if best is None:
            break
        lead = A[t][t].lead
        if lead != 1:
            inv = 1 / lead
            A[t] = [a * inv for a in A[t]]
            U[t] = [a * inv for a in U[t]]
            for r in Ui:
                r[t] = r[t] * lead
            det_u *= inv
    return SmithResult(Mat(U), Mat(A), Mat(W), Mat(Ui), Mat(Wi), det_u, det_w)


def smith_form(m: Mat):
    """Return ``(U, D, W)`` with ``U @ m @ W == D``."""
    r = smith_decomposition(m)
    return r.U, r.D, r.W


def _as_poly(e) -> Poly:
    from .poly import Laurent

    if isinstance(e, Laurent):
        return e.to_poly()
    return Poly.const(e)


def saturated_column_basis(m: Mat) -> Mat:
    """Basis of the saturation (in Q[z]^n) of the column span of ``m``."""
    r = smith_decomposition(m)
    return r.U_inv.cols(range(r.rank))


def kernel_basis(m: Mat) -> Mat:
    """Basis of the right kernel of ``m`` over Q[z]; automatically saturated."""
    r = smith_decomposition(m)
    return r.W.cols(range(r.rank, m.ncols))


def left_inverse(m: Mat) -> Mat:
    """Polynomial left inverse of a saturated full-column-rank matrix."""
    r = smith_decomposition(m)
    k = m.ncols
    if r.rank != k:
        raise ValueError("matrix is not of full column rank")
    dplus = []
    for i in range(k):
        d = r.D[i, i]
        if d.degree != 0:
            raise ValueError("columns do not span a saturated submodule")
        dplus.append([Poly.const(1 / d.coeffs[0]) if j == i else ZERO_POLY for j in range(m.nrows)])
    return r.W @ Mat(dplus) @ r.U

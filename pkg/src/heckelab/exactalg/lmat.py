"""Laurent-matrix helpers: determinants, inverses, unit checks."""

from __future__ import annotations

from fractions import Fraction

from .matrix import Mat, bareiss_det, to_laurent
from .poly import ZERO_LAURENT, Laurent, Poly


class NotInvertible(ArithmeticError):
    pass


def ldet(m: Mat) -> Laurent:
    return bareiss_det(to_laurent(m))


def monomial_det(m: Mat):
    """Return ``(c, k)`` with ``det m == c * z**k``; raise if not a unit."""
    d = ldet(m)
    if not d or not d.is_monomial():
        raise NotInvertible(f"determinant {d!r} is not of the form c*z^k")
    return d.poly.coeffs[0], d.val


def linverse(m: Mat) -> Mat:
    """Inverse of a Laurent matrix whose determinant is a monomial.

    Fraction-free Gauss-Jordan: the left block ends as ``det * I`` and the
    right block as ``det * m^-1``.
    """
    n = m.size
    if n == 0:
        return m
    m = to_laurent(m)
    one = Laurent.const(1)
    A = [list(m.rows[i]) + [one if i == j else ZERO_LAURENT for j in range(n)] for i in range(n)]
    prev = one
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            raise NotInvertible("matrix is singular")
        A[k], A[piv] = A[piv], A[k]
        akk = A[k][k]
        for i in range(n):
            if i == k:
                continue
            aik = A[i][k]
            A[i] = [(akk * a - aik * b).exact_div(prev) if (a or (aik and b)) else ZERO_LAURENT for a, b in zip(A[i], A[k])]
        prev = akk
    d = A[0][0]
    if not d.is_monomial():
        raise NotInvertible("matrix is not invertible over Q[z, 1/z]")
    dinv = Laurent.monomial(-d.val, 1 / d.poly.coeffs[0])
    return Mat([[e * dinv for e in A[i][n:]] for i in range(n)])


def is_unimodular_poly(m: Mat) -> bool:
    """Polynomial matrix (Poly or Laurent entries without negative powers) with constant nonzero det."""
    d = ldet(m)
    return bool(d) and d.is_const() and all(e.is_poly() for r in to_laurent(m).rows for e in r)


def is_unimodular_w(m: Mat) -> bool:
    """Laurent matrix with entries in Q[1/z] and constant nonzero determinant."""
    lm = to_laurent(m)
    d = ldet(lm)
    return bool(d) and d.is_const() and all(e.is_poly_w() for r in lm.rows for e in r)


def const_value(e) -> Fraction:
    if isinstance(e, Laurent):
        if not e:
            return Fraction(0)
        if not e.is_const():
            raise ValueError("not a constant")
        return e.poly.coeffs[0]
    if isinstance(e, Poly):
        if e.degree > 0:
            raise ValueError("not a constant")
        return e.coeff(0)
    return Fraction(e)

"""Isotropic subspaces of nondegenerate bilinear spaces over Q.

Subspaces are passed as lists of row vectors.  Ruling classification of
isotropic planes in a split 4-dimensional quadratic space uses the Hodge
star on the Pluecker vector: a decomposable isotropic 2-vector is an
eigenvector of the normalized star with eigenvalue +1 or -1, and the sign
is the ruling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Optional, Sequence

from .exactalg import Mat, inverse, nullspace, rank, rational_matrix
from .exactalg.matrix import canonical_projective, det, rref
from .pairing import ORTHOGONAL, SYMPLECTIC, canonical_kind


class NotSplit(ValueError):
    """No isotropic subspace of the required dimension was found over Q."""


@dataclass(frozen=True, eq=False)
class QuadSpace:
    gram: Mat
    kind: str = ORTHOGONAL

    def __post_init__(self):
        g = self.gram if isinstance(self.gram, Mat) else rational_matrix(self.gram)
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "kind", canonical_kind(self.kind))
        sign = -1 if self.kind == SYMPLECTIC else 1
        if g.nrows != g.ncols:
            raise ValueError("Gram matrix must be square")
        if any(g[i, j] != sign * g[j, i] for i in range(g.nrows) for j in range(g.nrows)):
            raise ValueError("Gram matrix has the wrong symmetry for its kind")
        if det(g) == 0:
            raise ValueError("Gram matrix is degenerate")

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def B(self, u, v) -> Fraction:
        g = self.gram
        return sum((u[i] * g[i, j] * v[j] for i in range(len(u)) for j in range(len(v)) if u[i] and v[j]), Fraction(0))


def _rows(w) -> list:
    if isinstance(w, Mat):
        return [list(r) for r in w.rows]
    return [[Fraction(e) for e in r] for r in w]


def _gram_of(q: QuadSpace, rows) -> Mat:
    return Mat([[q.B(u, v) for v in rows] for u in rows])


def isotropic_check(q: QuadSpace, w) -> bool:
    rows = _rows(w)
    return all(q.B(u, v) == 0 for u in rows for v in rows)


def is_square(x: Fraction) -> bool:
    return sqrt_rational(x) is not None


def sqrt_rational(x) -> Optional[Fraction]:
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def diagonalize(q: QuadSpace):
    """Orthogonal basis (rows) ``u_i`` with values ``d_i = B(u_i, u_i)``."""
    n = q.dim
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    out, vals = [], []
    while basis:
        pick = next((v for v in basis if q.B(v, v)), None)
        if pick is None:
            # all remaining vectors isotropic; some pair has B(u, v) != 0
            for u, v in itertools.combinations(basis, 2):
                if q.B(u, v):
                    pick = [a + b for a, b in zip(u, v)]
                    break
            if pick is None:
                raise ValueError("degenerate form")
        d = q.B(pick, pick)
        out.append(pick)
        vals.append(d)
        rest = []
        for v in basis:
            c = q.B(v, pick) / d
            w = [a - c * b for a, b in zip(v, pick)]
            rest.append(w)
        r, piv = rref(Mat(rest))
        basis = [list(r.rows[i]) for i in range(len(piv))]
    return out, vals


def _squarefree_part(n: int) -> tuple:
    """``n = s * m^2`` with ``s`` squarefree; returns ``(s, m)``."""
    sign, n = (-1 if n < 0 else 1), abs(n)
    s, m, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            m *= p
        if n % p == 0:
            n //= p
            s *= p
        p += 1
    return sign * s * n, m


def _sqrt_mod(a: int, m: int) -> Optional[int]:
    a %= m
    return next((t for t in range(m // 2 + 1) if (t * t - a) % m == 0), None)


def _legendre(a: int, b: int) -> Optional[tuple]:
    """Nontrivial integer ``(x, y, z)`` with ``x^2 = a y^2 + b z^2``; ``a``, ``b`` squarefree and nonzero."""
    if abs(a) > abs(b):
        sol = _legendre(b, a)
        return None if sol is None else (sol[0], sol[2], sol[1])
    if a == 1:
        return (1, 1, 0)
    if b == 1:
        return (1, 0, 1)
    if a < 0 and b < 0:
        return None
    t = _sqrt_mod(a, abs(b))
    if t is None:
        return None
    k, m = _squarefree_part((t * t - a) // b)
    sol = _legendre(a, k)
    if sol is None:
        return None
    X, Y, Z = sol
    # (t^2 - a)(X^2 - a Y^2) = b (k m Z)^2
    return (t * X + a * Y, X + t * Y, k * m * Z)


def ternary_isotropic(d: Sequence) -> Optional[list]:
    """Nontrivial rational zero of ``d0 x^2 + d1 y^2 + d2 z^2``, or None if anisotropic."""
    d = [Fraction(c) for c in d]
    den = 1
    for c in d:
        den = den * c.denominator // gcd(den, c.denominator)
    a, b, c = (int(x * den) for x in d)
    # (c z)^2 = -ac x^2 - bc y^2
    A, sa = _squarefree_part(-a * c)
    B, sb = _squarefree_part(-b * c)
    sol = _legendre(A, B)
    if sol is None:
        return None
    X, Y, Z = sol
    return [Fraction(Y, sa), Fraction(Z, sb), Fraction(X, c)]


def find_isotropic_vector(q: QuadSpace, search_bound: int = 5) -> list:
    if q.kind == SYMPLECTIC:
        return [Fraction(int(i == 0)) for i in range(q.dim)]
    for i in range(q.dim):
        e = [Fraction(int(i == j)) for j in range(q.dim)]
        if q.B(e, e) == 0:
            return e
    us, ds = diagonalize(q)
    for i, j in itertools.combinations(range(len(ds)), 2):
        s = sqrt_rational(-ds[i] / ds[j])
        if s is not None:
            return [a + s * b for a, b in zip(us[i], us[j])]
    # exact for dim 3, and for dim 4 with square discriminant (isotropic iff any ternary subform is)
    for idx in itertools.combinations(range(len(ds)), 3):
        sol = ternary_isotropic([ds[i] for i in idx])
        if sol is not None:
            return [sum(c * us[i][k] for c, i in zip(sol, idx)) for k in range(q.dim)]
    if len(ds) == 3 or (len(ds) == 4 and is_square(det(q.gram))):
        raise NotSplit("anisotropic over Q")
    # bounded search in the diagonal coordinates
    rng = range(-search_bound, search_bound + 1)
    for coords in itertools.product(rng, repeat=len(ds)):
        if sum(1 for c in coords if c) < 3:
            continue
        if sum(d * c * c for d, c in zip(ds, coords)) == 0:
            return [sum(c * u[k] for c, u in zip(coords, us)) for k in range(q.dim)]
    raise NotSplit("no rational isotropic vector found")


def _perp_rows(q: QuadSpace, rows) -> list:
    """Basis of the orthogonal complement of span(rows)."""
    m = Mat([[sum(r[i] * q.gram[i, j] for i in range(q.dim)) for j in range(q.dim)] for r in rows])
    return nullspace(m)


def _restrict(q: QuadSpace, basis) -> QuadSpace:
    return QuadSpace(_gram_of(q, basis), q.kind)


def maximal_isotropic(q: QuadSpace) -> list:
    """Greedy Witt decomposition; returns a basis of an isotropic subspace of maximal dimension found."""
    if q.dim == 0:
        return []
    try:
        v = find_isotropic_vector(q)
    except NotSplit:
        return []
    w = next(e for e in ([Fraction(int(i == j)) for j in range(q.dim)] for i in range(q.dim)) if q.B(v, e))
    c = q.B(v, w)
    w = [x / c for x in w]
    if q.kind == ORTHOGONAL:
        h = q.B(w, w) / 2
        w = [a - h * b for a, b in zip(w, v)]
    comp = _perp_rows(q, [v, w])
    if not comp:
        return [v]
    sub = maximal_isotropic(_restrict(q, comp))
    lifted = [[sum(c * u[k] for c, u in zip(s, comp)) for k in range(q.dim)] for s in sub]
    return [v] + lifted


# ---------------------------------------------------------------------------
# IG(1, 2) and IG(2, 4)


def isotropic_lines_dim2(q: QuadSpace) -> list:
    if q.dim != 2 or q.kind != ORTHOGONAL:
        raise ValueError("expected a 2-dimensional orthogonal space")
    a, b, c = q.gram[0, 0], q.gram[0, 1], q.gram[1, 1]
    s = sqrt_rational(b * b - a * c)
    if s is None or s == 0:
        raise NotSplit("hyperbolic plane required: -det is not a nonzero square")
    if a == 0:
        lines = [(Fraction(1), Fraction(0)), (-c, 2 * b)]
    else:
        lines = [((-b + s) / a, Fraction(1)), ((-b - s) / a, Fraction(1))]
    return sorted(canonical_projective(v) for v in lines)


def _wedge_basis(n: int = 4):
    return list(itertools.combinations(range(n), 2))


def plucker(rows) -> list:
    u, v = rows
    return [u[i] * v[j] - u[j] * v[i] for i, j in _wedge_basis(len(u))]


_PERM_SIGN = {}


def _perm_sign(p) -> int:
    p = list(p)
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def _wedge_pairing() -> Mat:
    basis = _wedge_basis()
    rows = []
    for a in basis:
        row = []
        for b in basis:
            idx = a + b
            row.append(Fraction(_perm_sign(idx)) if len(set(idx)) == 4 else Fraction(0))
        rows.append(row)
    return Mat(rows)


def star_matrix(q: QuadSpace) -> Mat:
    """Normalized Hodge star on the Pluecker space; squares to the identity."""
    basis = _wedge_basis()
    g = q.gram
    ga = Mat([[g[i, k] * g[j, l] - g[i, l] * g[j, k] for (k, l) in basis] for (i, j) in basis])
    kappa = sqrt_rational(det(g))
    if kappa is None:
        raise NotSplit("discriminant is not a square")
    return (inverse(_wedge_pairing()) @ ga).scale(1 / kappa)


def ruling_sign(q: QuadSpace, plane, star: Optional[Mat] = None) -> int:
    rows = _rows(plane)
    if len(rows) != 2 or rank(Mat(rows)) != 2 or not isotropic_check(q, rows):
        raise ValueError("not an isotropic plane")
    s = star if star is not None else star_matrix(q)
    w = plucker(rows)
    sw = [sum(s[i, j] * w[j] for j in range(6)) for i in range(6)]
    if sw == w:
        return 1
    if sw == [-x for x in w]:
        return -1
    raise ArithmeticError("Pluecker vector is not a star eigenvector")


@dataclass(frozen=True, eq=False)
class PlaneFamily:
    """Planes ``span(p_i + t q_i)``; ``t = None`` means ``span(q_i)``."""

    p: tuple
    q: tuple
    sign: int

    def member(self, t) -> list:
        if t is None:
            return [list(v) for v in self.q]
        t = Fraction(t)
        return [[a + t * b for a, b in zip(pi, qi)] for pi, qi in zip(self.p, self.q)]


@dataclass(frozen=True, eq=False)
class Rulings:
    space: QuadSpace
    family_a: PlaneFamily
    family_b: PlaneFamily
    star: Mat

    def classify(self, plane) -> str:
        s = ruling_sign(self.space, plane, self.star)
        return "A" if s == self.family_a.sign else "B"

    @property
    def classifier(self) -> Callable:
        return self.classify


def hyperbolic_completion(q: QuadSpace, plane) -> list:
    """Isotropic ``d_1, d_2`` with ``B(p_i, d_j) = delta_ij``."""
    p = _rows(plane)
    m = Mat([[sum(pi[i] * q.gram[i, j] for i in range(q.dim)) for j in range(q.dim)] for pi in p])
    aug_sols = []
    r, piv = rref(m)
    for k in range(len(p)):
        # particular solution of m d = e_k
        rhs = [Fraction(int(i == k)) for i in range(len(p))]
        aug = Mat([list(m.rows[i]) + [rhs[i]] for i in range(len(p))])
        ra, pa = rref(aug)
        d = [Fraction(0)] * q.dim
        for i, c in enumerate(pa):
            d[c] = ra[i, q.dim]
        aug_sols.append(d)
    out = []
    for j, dj in enumerate(aug_sols):
        corr = [Fraction(0)] * q.dim
        for k, dk in enumerate(aug_sols):
            c = q.B(dj, dk) / 2
            corr = [x + c * y for x, y in zip(corr, p[k])]
        out.append([a - b for a, b in zip(dj, corr)])
    return out


def isotropic_plane(q: QuadSpace) -> list:
    basis = maximal_isotropic(q)
    if len(basis) < 2:
        raise NotSplit("no isotropic plane over Q")
    return basis[:2]


def rulings_ig24(q: QuadSpace, base_plane=None) -> Rulings:
    if q.dim != 4 or q.kind != ORTHOGONAL:
        raise ValueError("expected a 4-dimensional orthogonal space")
    if sqrt_rational(det(q.gram)) is None:
        raise NotSplit("discriminant is not a square")
    p = _rows(base_plane) if base_plane is not None else isotropic_plane(q)
    if not isotropic_check(q, p):
        raise ValueError("base plane is not isotropic")
    d1, d2 = hyperbolic_completion(q, p)
    p1, p2 = p
    star = star_matrix(q)
    neg = lambda v: [-x for x in v]  # noqa: E731
    fa = (tuple(map(tuple, (p1, p2))), tuple(map(tuple, (neg(d2), d1))))
    fb = (tuple(map(tuple, (p1, d2))), tuple(map(tuple, (neg(p2), d1))))
    sa = ruling_sign(q, [p1, p2], star)
    sb = ruling_sign(q, [p1, d2], star)
    if sa == sb:
        raise ArithmeticError("ruling construction produced equal signs")
    return Rulings(q, PlaneFamily(*fa, sa), PlaneFamily(*fb, sb), star)


def incidence(q: QuadSpace, w1, w2) -> int:
    r1, r2 = _rows(w1), _rows(w2)
    return len(r1) + len(r2) - rank(Mat(r1 + r2))


def canonical_plane(rows) -> tuple:
    r, piv = rref(Mat(_rows(rows)))
    return tuple(tuple(r.rows[i]) for i in range(len(piv)))


__all__ = [
    "NotSplit",
    "PlaneFamily",
    "QuadSpace",
    "Rulings",
    "canonical_plane",
    "diagonalize",
    "find_isotropic_vector",
    "hyperbolic_completion",
    "incidence",
    "isotropic_check",
    "isotropic_lines_dim2",
    "isotropic_plane",
    "maximal_isotropic",
    "plucker",
    "ruling_sign",
    "rulings_ig24",
    "sqrt_rational",
    "star_matrix",
    "ternary_isotropic",
]

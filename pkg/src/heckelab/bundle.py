"""Vector bundles on P^1 as transition data between the two standard charts.

Convention: chart-0 coordinates ``f0`` (polynomial in z) and chart-inf
coordinates ``f_inf`` (polynomial in w = 1/z) are related by
``f_inf = T(z) f0``.  The line bundle O(a) has ``T = z^-a`` and
``deg V = -(exponent of det T)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exactalg import Laurent, Mat, ldet, linverse, nullspace, rank
from .exactalg.matrix import (
    block_diag,
    laurent_identity,
    laurent_to_w,
    max_exp,
    shift_exponent,
    subs_inverse,
    to_laurent,
    w_to_laurent,
)
from .exactalg.poly import ONE_LAURENT, ZERO_LAURENT, zpow
from .exactalg.smith import kernel_basis, left_inverse, saturated_column_basis, smith_decomposition
from .exactalg.textfmt import parse_matrix


class InvalidTransition(ValueError):
    """Transition matrix is not invertible over Q[z, 1/z]."""


class NotInjective(ValueError):
    """A map is rank deficient on the generic fiber."""


@dataclass(frozen=True)
class SplittingType:
    """Pairs ``(a_i, r_i)`` with ``a_1 > a_2 > ...``."""

    pairs: tuple

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "SplittingType":
        counts: dict = {}
        for a in values:
            counts[int(a)] = counts.get(int(a), 0) + 1
        return cls(tuple(sorted(counts.items(), reverse=True)))

    def values(self) -> list:
        return [a for a, r in self.pairs for _ in range(r)]

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.pairs)

    @property
    def degree(self) -> int:
        return sum(a * r for a, r in self.pairs)

    @property
    def m(self) -> int:
        return len(self.pairs)

    def is_semistable(self) -> bool:
        """All summands of one degree."""
        return len(self.pairs) <= 1

    def is_balanced(self) -> bool:
        """Summand degrees differ by at most one."""
        vals = self.values()
        return not vals or max(vals) - min(vals) <= 1

    def shifted(self, k: int) -> "SplittingType":
        return SplittingType(tuple((a + k, r) for a, r in self.pairs))

    def dual(self) -> "SplittingType":
        return SplittingType(tuple((-a, r) for a, r in reversed(self.pairs)))

    def to_json(self) -> list:
        return [[a, r] for a, r in self.pairs]

    def __str__(self):
        return "{" + ", ".join(str(a) if r == 1 else f"{a}^{r}" for a, r in self.pairs) + "}"


@dataclass(frozen=True, eq=False)
class BundleP1:
    transition: Mat

    def __post_init__(self):
        t = to_laurent(self.transition)
        object.__setattr__(self, "transition", t)
        if t.nrows != t.ncols:
            raise InvalidTransition("transition must be square")
        d = ldet(t) if t.nrows else ONE_LAURENT
        if not d or not d.is_monomial():
            raise InvalidTransition(f"det T = {d} is not of the form c*z^k")
        object.__setattr__(self, "_det", d)

    @property
    def rank(self) -> int:
        return self.transition.nrows

    @property
    def degree(self) -> int:
        return -self._det.val

    @property
    def det_transition(self) -> Laurent:
        return self._det

    @property
    def slope(self) -> Fraction:
        return Fraction(self.degree, self.rank)

    @classmethod
    def from_text(cls, text: str) -> "BundleP1":
        return cls(parse_matrix(text))

    def splitting(self) -> SplittingType:
        return birkhoff_split(self).splitting

    def __repr__(self):
        return f"BundleP1({self.transition!r})"


def line_bundle(a: int) -> BundleP1:
    return BundleP1(Mat([[zpow(-a)]]))


def from_splitting(values: Iterable[int]) -> BundleP1:
    vals = list(values)
    n = len(vals)
    return BundleP1(Mat([[zpow(-vals[i]) if i == j else ZERO_LAURENT for j in range(n)] for i in range(n)]))


def direct_sum(a: BundleP1, b: BundleP1) -> BundleP1:
    return BundleP1(block_diag(a.transition, b.transition, ZERO_LAURENT))


def dual(v: BundleP1) -> BundleP1:
    return BundleP1(linverse(v.transition).T())


def twist(v: BundleP1, k: int) -> BundleP1:
    return BundleP1(shift_exponent(v.transition, -k))


def chart_swap(v: BundleP1) -> BundleP1:
    """The same bundle in the coordinate z' = 1/z (charts exchanged)."""
    return BundleP1(subs_inverse(linverse(v.transition)))


def cohomology_dims(v: BundleP1):
    h0 = h1 = 0
    for a, r in v.splitting().pairs:
        h0 += r * max(a + 1, 0)
        h1 += r * max(-a - 1, 0)
    return h0, h1


def degree(v: BundleP1) -> int:
    return v.degree


# ---------------------------------------------------------------------------
# Birkhoff factorization


@dataclass(frozen=True, eq=False)
class BirkhoffSplit:
    """``T = pi_minus @ D @ pi_plus`` with ``D = diag(z^-a_i)``, a decreasing.

    ``frame`` is ``pi_plus``'s inverse: its j-th column is a chart-0 frame
    vector of the summand O(a_j); ``pi_minus``'s j-th column is the matching
    chart-inf frame vector.
    """

    pi_minus: Mat
    D: Mat
    pi_plus: Mat
    splitting: SplittingType
    frame: Mat
    values: tuple

    def __iter__(self):
        return iter((self.pi_minus, self.D, self.pi_plus, self.splitting))


def _column_data(cols):
    degs = []
    lead = []
    for col in cols:
        d = max(e.max_exp for e in col if e)
        degs.append(d)
        lead.append([e.coeff(d) if e else Fraction(0) for e in col])
    return degs, lead


def birkhoff_split(v) -> BirkhoffSplit:
    if not isinstance(v, BundleP1):
        v = BundleP1(v)
    T = v.transition
    n = v.rank
    cols = [list(c) for c in zip(*T.rows)]
    B = [list(r) for r in laurent_identity(n).rows]
    Binv = [list(r) for r in laurent_identity(n).rows]
    while True:
        degs, lead = _column_data(cols)
        rel = nullspace(Mat([list(r) for r in zip(*lead)]))
        if not rel:
            break
        alpha = rel[0]
        j0 = max((j for j in range(n) if alpha[j]), key=lambda j: (degs[j], -j))
        a0 = alpha[j0]
        coef = {j: Laurent.monomial(degs[j0] - degs[j], alpha[j] / a0) for j in range(n) if alpha[j] and j != j0}
        new = list(cols[j0])
        for j, c in coef.items():
            new = [x + c * y for x, y in zip(new, cols[j])]
        cols[j0] = new
        for r in B:
            acc = r[j0]
            for j, c in coef.items():
                if r[j]:
                    acc = acc + c * r[j]
            r[j0] = acc
        for j, c in coef.items():
            Binv[j] = [x - c * y for x, y in zip(Binv[j], Binv[j0])]
    degs, _ = _column_data(cols)
    order = sorted(range(n), key=lambda j: (degs[j], j))
    vals = tuple(-degs[j] for j in order)
    A = Mat([[cols[j][i].shift_exp(-degs[j]) for j in order] for i in range(n)])
    D = Mat([[zpow(-vals[i]) if i == j else ZERO_LAURENT for j in range(n)] for i in range(n)])
    frame = Mat([[B[i][j] for j in order] for i in range(n)])
    pi_plus = Mat([Binv[j] for j in order])
    return BirkhoffSplit(A, D, pi_plus, SplittingType.from_values(vals), frame, vals)


# ---------------------------------------------------------------------------
# maps and subbundles


@dataclass(frozen=True, eq=False)
class BundleMap:
    """``chart_inf @ T_source == T_target @ chart0``; both stored as Laurent matrices."""

    source: BundleP1
    target: BundleP1
    chart0: Mat
    chart_inf: Mat

    def __post_init__(self):
        c0 = to_laurent(self.chart0)
        ci = to_laurent(self.chart_inf)
        object.__setattr__(self, "chart0", c0)
        object.__setattr__(self, "chart_inf", ci)
        if not all(e.is_poly() for r in c0.rows for e in r):
            raise ValueError("chart-0 matrix must be polynomial in z")
        if not all(e.is_poly_w() for r in ci.rows for e in r):
            raise ValueError("chart-inf matrix must be polynomial in 1/z")
        if ci @ self.source.transition != self.target.transition @ c0:
            raise ValueError("chart matrices do not intertwine the transitions")

    @classmethod
    def from_chart0(cls, source: BundleP1, target: BundleP1, chart0: Mat) -> "BundleMap":
        ci = target.transition @ to_laurent(chart0) @ linverse(source.transition)
        return cls(source, target, chart0, ci)

    def compose(self, other: "BundleMap") -> "BundleMap":
        """``self o other``."""
        return BundleMap(other.source, self.target, self.chart0 @ other.chart0, self.chart_inf @ other.chart_inf)


@dataclass(frozen=True, eq=False)
class Subbundle:
    ambient: BundleP1
    inclusion: BundleMap

    @property
    def rank(self) -> int:
        return self.inclusion.chart0.ncols

    @property
    def degree(self) -> int:
        return self.inclusion.source.degree

    @property
    def slope(self) -> Fraction:
        return Fraction(self.degree, self.rank)

    @property
    def basis0(self) -> Mat:
        return self.inclusion.chart0

    @property
    def basis_inf(self) -> Mat:
        return self.inclusion.chart_inf

    def same_as(self, other: "Subbundle") -> bool:
        """Equal saturated images (both sides are saturated)."""
        if self.rank != other.rank:
            return False
        if self.rank == 0:
            return True
        return generic_rank(self.basis0.hstack(other.basis0)) == self.rank

    def contains(self, other: "Subbundle") -> bool:
        if other.rank == 0:
            return True
        return generic_rank(self.basis0.hstack(other.basis0)) == self.rank


def generic_rank(m: Mat) -> int:
    """Rank over the function field Q(z)."""
    if m.ncols == 0 or m.nrows == 0:
        return 0
    m = to_laurent(m)
    shift = -min(0, min((e.min_exp for r in m.rows for e in r if e), default=0))
    p = shift_exponent(m, shift).map(lambda e: e.to_poly())
    return smith_decomposition(p).rank


def _as_w(m: Mat) -> Mat:
    return laurent_to_w(m)


def zero_subbundle(v: BundleP1) -> Subbundle:
    empty = Mat([[] for _ in range(v.rank)])
    return Subbundle(v, BundleMap(BundleP1(Mat([])), v, empty, empty))


def subbundle_from_frames(v: BundleP1, s0: Mat, s_inf: Mat, transition: Mat | None = None) -> Subbundle:
    """Wrap already saturated chart frames; ``transition`` solves ``s_inf T_E = T s0``."""
    if s0.ncols == 0:
        return zero_subbundle(v)
    s0 = to_laurent(s0)
    s_inf = to_laurent(s_inf)
    if transition is None:
        li = w_to_laurent(left_inverse(_as_w(s_inf)))
        transition = li @ v.transition @ s0
    src = BundleP1(transition)
    return Subbundle(v, BundleMap(src, v, s0, s_inf))


def subbundle_from_chart0(v: BundleP1, m0: Mat) -> Subbundle:
    """Saturation of the subsheaf generated on chart 0 by the columns of ``m0``."""
    m0 = to_laurent(m0)
    if m0.ncols == 0:
        return zero_subbundle(v)
    p0 = m0.map(lambda e: e.to_poly())
    r = smith_decomposition(p0)
    if r.rank != m0.ncols:
        raise NotInjective(f"generic rank {r.rank} < {m0.ncols}")
    s0 = to_laurent(r.U_inv.cols(range(r.rank)))
    tm = v.transition @ s0
    s_inf_w = saturated_column_basis(_as_w(shift_exponent(tm, -max_exp(tm))))
    return subbundle_from_frames(v, s0, w_to_laurent(s_inf_w))


def saturate(f: BundleMap) -> Subbundle:
    return subbundle_from_chart0(f.target, f.chart0)


def kernel_subbundle(v: BundleP1, m0: Mat) -> Subbundle:
    """Subbundle whose chart-0 sections are the kernel of the polynomial matrix ``m0``."""
    p0 = to_laurent(m0).map(lambda e: e.to_poly())
    k = kernel_basis(p0)
    if k.ncols == 0:
        return zero_subbundle(v)
    return subbundle_from_chart0(v, to_laurent(k))


def full_subbundle(v: BundleP1) -> Subbundle:
    n = v.rank
    eye = laurent_identity(n)
    return Subbundle(v, BundleMap(v, v, eye, eye))


def generic_fiber_rank(m: Mat, points=(Fraction(7, 3), Fraction(-5, 2), Fraction(11))) -> int:
    """Cheap lower bound for the generic rank via evaluation."""
    best = 0
    for x in points:
        best = max(best, rank(m.map(lambda e: e(x))))
    return best


__all__ = [
    "BirkhoffSplit",
    "BundleMap",
    "BundleP1",
    "InvalidTransition",
    "NotInjective",
    "SplittingType",
    "Subbundle",
    "birkhoff_split",
    "chart_swap",
    "cohomology_dims",
    "degree",
    "direct_sum",
    "dual",
    "from_splitting",
    "full_subbundle",
    "generic_rank",
    "kernel_subbundle",
    "line_bundle",
    "saturate",
    "subbundle_from_chart0",
    "subbundle_from_frames",
    "twist",
    "zero_subbundle",
]

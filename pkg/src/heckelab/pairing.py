"""Bundles with an O(ell)-valued symplectic or orthogonal form.

The form lives on chart 0 as a polynomial Gram matrix ``omega0``; on chart
inf it is ``z^-ell * T^-T * omega0 * T^-1`` (derived, never stored).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bundle import BundleP1, Subbundle, birkhoff_split, chart_swap, from_splitting, kernel_subbundle, twist
from .exactalg import INF, Mat, ldet, linverse, rank
from .exactalg.matrix import eval_at, shift_exponent, subs_inverse, to_laurent
from .exactalg.poly import ONE_LAURENT, ZERO_LAURENT, as_fraction

SYMPLECTIC = "symplectic"
ORTHOGONAL = "orthogonal"
_ALIASES = {"symplectic": SYMPLECTIC, "sympl": SYMPLECTIC, "sp": SYMPLECTIC, "orthogonal": ORTHOGONAL, "orth": ORTHOGONAL, "o": ORTHOGONAL}


class KindMismatch(ValueError):
    pass


class InvalidMiddleBlock(ValueError):
    pass


def canonical_kind(kind: str) -> str:
    try:
        return _ALIASES[kind.lower()]
    except KeyError:
        raise ValueError(f"unknown form kind {kind!r}") from None


@dataclass(frozen=True, eq=False)
class PairedBundle:
    V: BundleP1
    kind: str
    ell: int
    omega0: Mat

    def __post_init__(self):
        object.__setattr__(self, "kind", canonical_kind(self.kind))
        om = to_laurent(self.omega0)
        object.__setattr__(self, "omega0", om)
        if om.shape != (self.V.rank, self.V.rank):
            raise ValueError("form size does not match the bundle rank")

    @property
    def n(self) -> int:
        return self.V.rank

    @property
    def mu(self) -> Fraction:
        return Fraction(self.ell, 2)

    def omega_inf(self) -> Mat:
        return omega_inf(self)

    def splitting(self):
        return birkhoff_split(self.V).splitting

    def __repr__(self):
        return f"PairedBundle(kind={self.kind}, ell={self.ell}, T={self.V.transition!r}, omega0={self.omega0!r})"


@dataclass(frozen=True)
class FiberForm:
    point: object
    gram: Mat
    kind: str

    @property
    def rank(self) -> int:
        return rank(self.gram)


@dataclass(frozen=True)
class ValidationReport:
    symmetry: bool
    even_rank: bool
    chart0_polynomial: bool
    chart0_nondegenerate: bool
    chart_inf_polynomial: bool
    chart_inf_nondegenerate: bool
    degree_law: bool
    ell_normalized: bool

    @property
    def ok(self) -> bool:
        return not self.failures()

    def failures(self) -> list:
        return [k for k, v in self.__dict__.items() if not v]

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        return d


def omega_inf(p: PairedBundle) -> Mat:
    ti = linverse(p.V.transition)
    return shift_exponent(ti.T() @ p.omega0 @ ti, -p.ell)


def _is_symmetric(m: Mat, sign: int) -> bool:
    t = m.T()
    return all(a == (b if sign > 0 else -b) for ra, rb in zip(m.rows, t.rows) for a, b in zip(ra, rb))


def validate_pair(p: PairedBundle) -> ValidationReport:
    sign = -1 if p.kind == SYMPLECTIC else 1
    om = p.omega0
    sym = _is_symmetric(om, sign)
    even = p.kind != SYMPLECTIC or p.n % 2 == 0
    poly0 = all(e.is_poly() for r in om.rows for e in r)
    d0 = ldet(om) if p.n else ONE_LAURENT
    nd0 = poly0 and bool(d0) and d0.is_const()
    oi = omega_inf(p)
    polyi = all(e.is_poly_w() for r in oi.rows for e in r)
    di = ldet(oi) if p.n else ONE_LAURENT
    ndi = polyi and bool(di) and di.is_const()
    deg_ok = 2 * p.V.degree == p.n * p.ell
    return ValidationReport(sym, even, poly0, nd0, polyi, ndi, deg_ok, p.ell in (0, 1))


def _antidiag_form(n: int, kind: str) -> Mat:
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i + j == n - 1:
                if kind == SYMPLECTIC and i > j:
                    row.append(-ONE_LAURENT)
                else:
                    row.append(ONE_LAURENT)
            else:
                row.append(ZERO_LAURENT)
        rows.append(row)
    return Mat(rows)


def standard_values(a_list: Sequence[int], ell: int, mid: int = 0) -> list:
    a = [int(x) for x in a_list]
    if mid and ell % 2:
        raise InvalidMiddleBlock("a middle block needs an even twist (middle value ell/2)")
    return a + [ell // 2] * mid + [ell - x for x in reversed(a)]


def standard_pair(kind: str, a_list: Sequence[int], ell: int, mid: int = 0) -> PairedBundle:
    """Hyperbolic model on O(a_1) + ... + O(a_k) + O(ell/2)^mid + O(ell-a_k) + ... + O(ell-a_1)."""
    kind = canonical_kind(kind)
    if mid < 0:
        raise InvalidMiddleBlock("middle block size must be nonnegative")
    if kind == SYMPLECTIC and mid % 2:
        raise InvalidMiddleBlock("a symplectic middle block must have even rank")
    vals = standard_values(a_list, ell, mid)
    if not vals:
        raise ValueError("empty pair")
    return PairedBundle(from_splitting(vals), kind, ell, _antidiag_form(len(vals), kind))


def normalize_twist(p: PairedBundle) -> PairedBundle:
    """Tensor by O(-floor(ell/2)) so that the twist lies in {0, 1}."""
    h = p.ell // 2
    if h == 0:
        return p
    return PairedBundle(twist(p.V, -h), p.kind, p.ell - 2 * h, p.omega0)


def reframe(p: PairedBundle, a_inf: Mat, b0: Mat) -> PairedBundle:
    """Change of frames: ``T' = A^-1 T B``, ``omega0' = B^T omega0 B``.

    ``a_inf`` must be unimodular over Q[1/z] and ``b0`` over Q[z].
    """
    b0 = to_laurent(b0)
    t = linverse(to_laurent(a_inf)) @ p.V.transition @ b0
    return PairedBundle(BundleP1(t), p.kind, p.ell, b0.T() @ p.omega0 @ b0)


def swap_charts(p: PairedBundle) -> PairedBundle:
    """Same pair in the coordinate z' = 1/z."""
    return PairedBundle(chart_swap(p.V), p.kind, p.ell, subs_inverse(omega_inf(p)))


def is_isotropic(p: PairedBundle, e: Subbundle) -> bool:
    s = e.basis0
    if s.ncols == 0:
        return True
    return (s.T() @ p.omega0 @ s).is_zero()


def perp(p: PairedBundle, e: Subbundle) -> Subbundle:
    """Saturated kernel of V -> E^* (x) O(ell)."""
    if e.rank == 0:
        from .bundle import full_subbundle

        return full_subbundle(p.V)
    return kernel_subbundle(p.V, e.basis0.T() @ p.omega0)


def fiber_form(p: PairedBundle, x) -> FiberForm:
    if x is INF or (isinstance(x, str) and x == "inf"):
        return FiberForm(INF, eval_at(omega_inf(p), 0, chart="inf"), p.kind)
    x = as_fraction(x)
    return FiberForm(x, eval_at(p.omega0, x), p.kind)


__all__ = [
    "FiberForm",
    "InvalidMiddleBlock",
    "KindMismatch",
    "ORTHOGONAL",
    "PairedBundle",
    "SYMPLECTIC",
    "ValidationReport",
    "canonical_kind",
    "fiber_form",
    "is_isotropic",
    "normalize_twist",
    "omega_inf",
    "perp",
    "reframe",
    "standard_pair",
    "standard_values",
    "swap_charts",
    "validate_pair",
]

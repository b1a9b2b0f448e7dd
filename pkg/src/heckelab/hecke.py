"""Hecke modifications of (paired) bundles at a point of P^1.

A modification at a finite point ``x`` is described by a constant basis ``C``
of the fiber and exponents ``e``: the new chart-0 frame is
``C diag((z - x)^e)`` and, when ``x != 0``, the new chart-inf frame is
``T(x) C diag((w - w_x)^e)``.  Exponents in {0, 1} shrink the sheaf (down),
exponents in {0, -1} enlarge it (up).  The point at infinity is reduced to
``x = 0`` by exchanging the charts.

Fiber coordinates at a finite point are taken in the chart-0 frame; at
infinity in the chart-inf frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .bundle import BundleMap, BundleP1, SplittingType, birkhoff_split, chart_swap, dual
from .exactalg import INF, Laurent, Mat, inverse, ldet, linverse, nullspace, rank
from .exactalg.bivariate import BiLaurent
from .exactalg.matrix import (
    canonical_projective,
    complete_basis,
    eval_at,
    laurent_identity,
    rref,
    subs_inverse,
    to_laurent,
)
from .exactalg.poly import ONE_LAURENT, Poly, as_fraction, linear
from .isogr import QuadSpace, rulings_ig24
from .pairing import (
    ORTHOGONAL,
    SYMPLECTIC,
    KindMismatch,
    PairedBundle,
    swap_charts,
    validate_pair,
)


class NotIsotropic(ValueError):
    pass


class RankTooSmall(ValueError):
    """Orthogonal Hecke constructions need rank at least 5."""


def _point(x):
    if x is INF or (isinstance(x, str) and x.strip().lower() in ("inf", "oo", "infinity")):
        return INF
    return as_fraction(x)


def _vec(v) -> list:
    return [as_fraction(e) for e in v]


# ---------------------------------------------------------------------------
# elementary modification


def _wx(x: Fraction) -> Laurent:
    """w - w_x as a Laurent polynomial in z."""
    return Laurent.from_terms({-1: Fraction(1), 0: -1 / x})


def _local_factor(m_ij, x: Fraction, ej: int, ei: int):
    """``m_ij (z - x)^ej (w - w_x)^-ei`` with exact division."""
    p = ej - ei
    if ei:
        m_ij = m_ij * Laurent.monomial(ei, (-x) ** ei)
    lin = linear(x)
    if p > 0:
        for _ in range(p):
            m_ij = m_ij * lin
    elif p < 0:
        for _ in range(-p):
            m_ij = m_ij.exact_div(lin) if not isinstance(m_ij, BiLaurent) else m_ij.exact_div_z(lin)
    return m_ij


def _diag_pow(base: Laurent, e: Sequence[int]) -> list:
    return [base ** k if k >= 0 else None for k in e]


def _scale_cols(m: Mat, factors) -> Mat:
    return Mat([[a * f for a, f in zip(r, factors)] for r in m.rows])


def _scale_rows(m: Mat, factors) -> Mat:
    return Mat([[a * f for a in r] for r, f in zip(m.rows, factors)])


@dataclass(frozen=True, eq=False)
class Modification:
    source: BundleP1
    target: BundleP1
    point: object
    C: Mat
    e: tuple
    small_map: BundleMap  # down: target -> source; up: source -> target

    @property
    def is_down(self) -> bool:
        return all(k >= 0 for k in self.e)


def modify(v: BundleP1, x, C: Mat, e: Sequence[int]) -> Modification:
    x = _point(x)
    e = tuple(int(k) for k in e)
    if not (all(k in (0, 1) for k in e) or all(k in (0, -1) for k in e)):
        raise ValueError("exponents must all lie in {0, 1} or all in {0, -1}")
    if x is INF:
        m = modify(chart_swap(v), 0, C, e)
        sm = m.small_map
        new = chart_swap(m.target)
        src, tgt = (new, v) if m.is_down else (v, new)
        swapped = BundleMap(src, tgt, subs_inverse(sm.chart_inf), subs_inverse(sm.chart0))
        return Modification(v, new, INF, C, e, swapped)
    Cl = to_laurent(C)
    T = v.transition
    n = v.rank
    down = all(k >= 0 for k in e)
    if x == 0:
        zf = [Laurent.monomial(k) for k in e]
        tn = _scale_cols(T @ Cl, zf)
        new = BundleP1(tn)
        if down:
            sm = BundleMap(new, v, _scale_cols(Cl, zf), laurent_identity(n))
        else:
            sm = BundleMap(v, new, _scale_rows(to_laurent(inverse(C)), [Laurent.monomial(-k) for k in e]), laurent_identity(n))
        return Modification(v, new, x, C, e, sm)
    Tx = eval_at(T, x)
    cinf = Tx @ C
    M = to_laurent(inverse(cinf)) @ T @ Cl
    tn = Mat([[_local_factor(M[i, j], x, e[j], e[i]) for j in range(n)] for i in range(n)])
    new = BundleP1(tn)
    lin, wl = linear(x), _wx(x)
    if down:
        c0 = _scale_cols(Cl, [lin**k for k in e])
        ci = _scale_cols(to_laurent(cinf), [wl**k for k in e])
        sm = BundleMap(new, v, c0, ci)
    else:
        c0 = _scale_rows(to_laurent(inverse(C)), [lin ** (-k) for k in e])
        ci = _scale_rows(to_laurent(inverse(cinf)), [wl ** (-k) for k in e])
        sm = BundleMap(v, new, c0, ci)
    return Modification(v, new, x, C, e, sm)


def _basis_with(sub: list, n: int, first: bool) -> Mat:
    """Columns: ``sub`` followed by a completion (first=True) or completion then ``sub``."""
    full = complete_basis(sub, n)
    comp = full[len(sub):]
    cols = (sub + comp) if first else (comp + sub)
    return Mat([list(r) for r in zip(*cols)])


def down_by_subspace(v: BundleP1, x, K: list) -> Modification:
    """Sections whose value at ``x`` lies in span(K)."""
    n = v.rank
    K = [_vec(k) for k in K]
    C = _basis_with(K, n, True)
    return modify(v, x, C, [0] * len(K) + [1] * (n - len(K)))


def up_by_subspace(v: BundleP1, x, S: list) -> Modification:
    """``V + (z - x)^-1 S``."""
    n = v.rank
    S = [_vec(s) for s in S]
    C = _basis_with(S, n, False)
    return modify(v, x, C, [0] * (n - len(S)) + [-1] * len(S))


@dataclass(frozen=True)
class FiberFunctional:
    point: object
    covector: tuple

    def __post_init__(self):
        object.__setattr__(self, "point", _point(self.point))
        object.__setattr__(self, "covector", canonical_projective(self.covector))


@dataclass(frozen=True)
class IsotropicPlane:
    point: object
    basis: tuple

    def __post_init__(self):
        object.__setattr__(self, "point", _point(self.point))
        rows = [_vec(r) for r in self.basis]
        r, piv = rref(Mat(rows))
        if len(piv) != 2:
            raise ValueError("plane basis must have rank 2")
        object.__setattr__(self, "basis", tuple(tuple(r.rows[i]) for i in range(2)))


def hecke_down(v: BundleP1, x, theta) -> tuple:
    """Kernel of V -> C_x given by the fiber functional ``theta``; returns (V^theta, inclusion)."""
    if isinstance(theta, FiberFunctional):
        x, theta = theta.point, theta.covector
    th = _vec(theta)
    if not any(th):
        raise ValueError("theta must be nonzero")
    K = nullspace(Mat([th]))
    m = down_by_subspace(v, x, K)
    return m.target, m.small_map


# ---------------------------------------------------------------------------
# induced forms


@dataclass(frozen=True, eq=False)
class DegenerateWitness:
    point: object
    gram: Mat
    kernel_vector: tuple
    reason: str

    def to_json(self) -> dict:
        return {
            "point": str(self.point),
            "reason": self.reason,
            "kernel_vector": [str(c) for c in self.kernel_vector],
            "gram": [[str(c) for c in r] for r in self.gram.rows],
        }


@dataclass(frozen=True, eq=False)
class TwistedFiberKernel:
    """Data of the down step and the twisted form on its dual.

    ``form`` is the chart-0 matrix of the L^*(x)-valued form on
    ``modified_dual`` (pole absorbed by the factor ``(z - x)``); ``kernel``
    spans its fiber kernel at ``x`` and ``pi`` spans the kernel of the
    restricted form on ``V^theta`` at ``x`` (the annihilator of ``kernel``).
    Everything is expressed in the (possibly chart-swapped) coordinates of
    ``local``.
    """

    kind: str
    point: object
    local: PairedBundle
    down: Modification
    modified_dual: BundleP1
    form: Mat
    gram_w: Mat
    kernel: tuple
    pi: tuple
    residual: Optional[Mat] = None  # orthogonal: Gram of the residual form on pi

    @property
    def codim(self) -> int:
        return self.local.n - len(self.kernel)

    @property
    def local_point(self):
        return 0 if self.point is INF else self.point

    @property
    def base_direction(self) -> tuple:
        """Directions in ``V^theta|_x`` whose up-modification gives back V."""
        nx = eval_at(self.down.small_map.chart0, self.local_point)
        return tuple(tuple(v) for v in nullspace(nx))


def _local_pair(p: PairedBundle, x):
    x = _point(x)
    if x is INF:
        return swap_charts(p), Fraction(0)
    return p, x


def _twisted_dual_form(om0: Mat, C: Mat, e, x) -> Mat:
    """``(z - x) N^-1 omega0^-1 N^-T`` with ``N = C diag((z - x)^e)``."""
    Ci = to_laurent(inverse(C))
    Y = Ci @ linverse(om0) @ Ci.T()
    lin = linear(x)
    n = len(e)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            k = 1 - e[i] - e[j]
            y = Y[i, j]
            if k >= 0:
                row.append(y * lin**k)
            else:
                for _ in range(-k):
                    y = y.exact_div(lin)
                row.append(y)
        out.append(row)
    return Mat(out)


def _induced(p: PairedBundle, x, K: list) -> TwistedFiberKernel:
    lp, lx = _local_pair(p, x)
    down = down_by_subspace(lp.V, lx, K)
    N0 = down.small_map.chart0
    gw = N0.T() @ lp.omega0 @ N0
    H = _twisted_dual_form(lp.omega0, down.C, down.e, lx)
    kern = tuple(tuple(v) for v in nullspace(eval_at(H, lx)))
    pi = tuple(tuple(v) for v in nullspace(eval_at(gw, lx)))
    residual = None
    if p.kind == ORTHOGONAL:
        g1 = gw.map(lambda f: f.to_poly().shift(lx).coeff(1))
        P = Mat([list(r) for r in zip(*pi)])
        residual = P.T() @ g1 @ P
    return TwistedFiberKernel(p.kind, _point(x), lp, down, dual(down.target), H, gw, kern, pi, residual)


def induced_form_symplectic(p: PairedBundle, x, theta) -> TwistedFiberKernel:
    if p.kind != SYMPLECTIC:
        raise KindMismatch("symplectic construction needs a symplectic pair")
    if isinstance(theta, FiberFunctional):
        x, theta = theta.point, theta.covector
    th = _vec(theta)
    if not any(th):
        raise ValueError("theta must be nonzero")
    return _induced(p, x, nullspace(Mat([th])))


def _fiber_gram(lp: PairedBundle, lx) -> Mat:
    return eval_at(lp.omega0, lx)


def induced_form_orthogonal(p: PairedBundle, x, Theta) -> TwistedFiberKernel:
    if p.kind != ORTHOGONAL:
        raise KindMismatch("orthogonal construction needs an orthogonal pair")
    if p.n < 5:
        raise RankTooSmall("orthogonal Hecke constructions are defined for rank >= 5")
    if isinstance(Theta, IsotropicPlane):
        x, Theta = Theta.point, Theta.basis
    rows = [_vec(r) for r in Theta]
    if len(rows) != 2 or rank(Mat(rows)) != 2:
        raise ValueError("Theta must be a 2-dimensional subspace")
    lp, lx = _local_pair(p, x)
    g = _fiber_gram(lp, lx)
    th = Mat(rows)
    if not (th @ g @ th.T()).is_zero():
        raise NotIsotropic("Theta is not isotropic for the fiber form")
    return _induced(p, x, nullspace(th @ g))


# ---------------------------------------------------------------------------
# up step


def _gram_after_up(gw: Mat, C: Mat, e, x) -> Optional[Mat]:
    """Form on ``W + (z - x)^-1 S``; None if it acquires a pole."""
    g = to_laurent(C).T() @ gw @ to_laurent(C)
    lin = linear(x)
    n = len(e)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            y = g[i, j]
            k = -(e[i] + e[j])
            for _ in range(k):
                q, r = divmod(y.to_poly(), lin.to_poly())
                if r:
                    return None
                y = Laurent.from_poly(q)
            row.append(y)
        out.append(row)
    return Mat(out)


def _witness(tk: TwistedFiberKernel, S: list) -> DegenerateWitness:
    """Degenerate fiber of the candidate form on the down-modification of the dual by ann(S)."""
    lx = tk.local_point
    n = tk.local.n
    lam = nullspace(Mat(S))  # annihilator of S, inside the dual fiber
    Ct = _basis_with(lam, n, True)
    et = [0] * len(lam) + [1] * (n - len(lam))
    lin = linear(lx)
    Ntil = _scale_cols(to_laurent(Ct), [lin**k for k in et])
    cand = Ntil.T() @ tk.form @ Ntil
    local = cand.map(lambda f: f.to_poly().shift(lx))
    v = min((f.valuation() for r in local.rows for f in r if f), default=0)
    gx = local.map(lambda f: f.coeff(v))
    ker = nullspace(gx)
    vec = tuple(ker[0]) if ker else tuple(Fraction(0) for _ in range(n))
    return DegenerateWitness(tk.point, gx, vec, "candidate form is degenerate at the modified fiber")


def _up_with_basis(tk: TwistedFiberKernel, C: Mat, e) -> Union[PairedBundle, DegenerateWitness, None]:
    lx = tk.local_point
    gram = _gram_after_up(tk.gram_w, C, e, lx)
    if gram is None:
        return None
    mod = modify(tk.down.target, lx, C, e)
    cand = PairedBundle(mod.target, tk.kind, tk.local.ell, gram)
    if not validate_pair(cand).ok:
        return None
    return swap_charts(cand) if tk.point is INF else cand


def up_from_kernel(tk: TwistedFiberKernel, S: list) -> Union[PairedBundle, DegenerateWitness]:
    """Enlarge ``V^theta`` by ``(z - x)^-1 S`` and carry the form along when it descends."""
    S = [_vec(s) for s in S]
    n = tk.local.n
    C = _basis_with(S, n, False)
    e = [0] * (n - len(S)) + [-1] * len(S)
    out = _up_with_basis(tk, C, e)
    return out if out is not None else _witness(tk, S)


def hecke_up_symplectic(p: PairedBundle, x, theta, lam, tk: Optional[TwistedFiberKernel] = None):
    """``lam`` is a vector of ``V^theta|_x`` (a functional on the dual fiber)."""
    tk = tk or induced_form_symplectic(p, x, theta)
    lam = _vec(lam)
    if not any(lam):
        raise ValueError("lambda must be nonzero")
    return up_from_kernel(tk, [lam])


def plane_from_dual(Lam) -> list:
    """Annihilator (a 2-plane of V^Theta|_x) of a codimension-2 subspace of the dual fiber."""
    rows = [_vec(r) for r in Lam]
    return nullspace(Mat(rows))


def hecke_up_orthogonal(p: PairedBundle, x, Theta, Lam, tk: Optional[TwistedFiberKernel] = None):
    """``Lam`` spans a codimension-2 subspace of ``(V^Theta)^*|_x``."""
    tk = tk or induced_form_orthogonal(p, x, Theta)
    plane = plane_from_dual(Lam)
    if len(plane) != 2:
        raise ValueError("Lambda must have codimension 2")
    return up_from_kernel(tk, plane)


def descent_criterion(tk: TwistedFiberKernel, Lam) -> bool:
    """Whether ``Lam`` (rows in the dual fiber) contains the fiber kernel and is isotropic modulo it."""
    Lrows = [_vec(r) for r in Lam]
    if rank(Mat(Lrows + [list(k) for k in tk.kernel])) != rank(Mat(Lrows)):
        return False
    if tk.kind == SYMPLECTIC:
        return True
    # transport the residual form to the dual quotient via H(x)
    lx = tk.local_point
    hx = eval_at(tk.form, lx)
    imgs = [[sum(hx[i, j] * r[j] for j in range(len(r))) for i in range(len(r))] for r in Lrows]
    P = Mat([list(r) for r in zip(*tk.pi)])
    coords = _coords_in(P, imgs)
    R = tk.residual
    return all(
        sum(a[i] * R[i, j] * b[j] for i in range(len(a)) for j in range(len(b))) == 0 for a in coords for b in coords
    )


def _coords_in(P: Mat, vectors) -> list:
    """Coordinates of vectors lying in the column span of P."""
    out = []
    k = P.ncols
    for v in vectors:
        aug = Mat([list(P.rows[i]) + [v[i]] for i in range(P.nrows)])
        r, piv = rref(aug)
        if k in piv:
            raise ValueError("vector not in the span")
        c = [Fraction(0)] * k
        for i, pc in enumerate(piv):
            c[pc] = r[i, k]
        out.append(c)
    return out


def dual_subspace_for(tk: TwistedFiberKernel, S: list) -> list:
    """Codimension-|S| subspace of the dual fiber annihilating ``S``."""
    return nullspace(Mat([_vec(s) for s in S]))


# ---------------------------------------------------------------------------
# isometries


@dataclass(frozen=True, eq=False)
class Isometry:
    chart0: Mat
    chart_inf: Mat


def find_isometry(new: PairedBundle, old: PairedBundle, x, tk: TwistedFiberKernel) -> Optional[Isometry]:
    """Isometry ``new -> old`` when ``new`` is the up-modification at the base direction.

    The chart-0 matrix is the identity of sheaves written in the two frames;
    the chart-inf matrix is solved from the intertwining relation.
    """
    lnew = swap_charts(new) if tk.point is INF else new
    lold = tk.local
    lx = tk.local_point
    base = [list(v) for v in tk.base_direction]
    C = _basis_with(base, lold.n, False)
    e = [0] * (lold.n - len(base)) + [-1] * len(base)
    lin = linear(lx)
    frame = tk.down.small_map.chart0 @ to_laurent(C)
    cols = []
    for j in range(lold.n):
        col = [frame[i, j] for i in range(lold.n)]
        if e[j] < 0:
            try:
                col = [f.exact_div(lin) for f in col]
            except ArithmeticError:
                return None
        cols.append(col)
    phi0 = Mat([list(r) for r in zip(*cols)])
    return verify_isometry(lnew, lold, phi0, swap=tk.point is INF)


def verify_isometry(new: PairedBundle, old: PairedBundle, phi0: Mat, swap: bool = False) -> Optional[Isometry]:
    """Check ``phi0`` is a chart-0 frame of an isometry ``new -> old`` and complete it on chart inf."""
    phi0 = to_laurent(phi0)
    if not all(f.is_poly() for r in phi0.rows for f in r):
        return None
    d = ldet(phi0)
    if not d or not d.is_const():
        return None
    if phi0.T() @ old.omega0 @ phi0 != new.omega0:
        return None
    phi_inf = old.V.transition @ phi0 @ linverse(new.V.transition)
    if not all(f.is_poly_w() for r in phi_inf.rows for f in r):
        return None
    di = ldet(phi_inf)
    if not di or not di.is_const():
        return None
    if swap:
        return Isometry(subs_inverse(phi_inf), subs_inverse(phi0))
    return Isometry(phi0, phi_inf)


# ---------------------------------------------------------------------------
# two-parameter families


def _bi(m: Mat) -> Mat:
    return m.map(BiLaurent.lift)


@dataclass(frozen=True, eq=False)
class BiFamily:
    """Bundle on P^1_z x P^1_t built from a base down step.

    ``T0`` / ``Tinf``: z-transitions over the t-charts (t, resp. s = 1/t).
    ``G0`` / ``Ginf``: t-transitions over the z-charts, ``g_s = G g_t``.
    Member ``t`` is the up-modification of ``V^theta`` by ``span(p_i + t q_i)``
    (``t = INF`` gives ``span(q_i)``); the marked member is ``t = 0``.
    """

    n: int
    k: int
    kind: str
    ell: int
    point: object
    tk: Optional[TwistedFiberKernel]
    p: tuple
    q: tuple
    rest: tuple
    T0: Mat
    Tinf: Mat
    G0: Mat
    Ginf: Mat
    special: Poly
    base_t: object = 0

    def z_transition(self, t) -> Mat:
        t = _point(t)
        if t is INF:
            return self.Tinf.map(lambda f: f.eval_t(0))
        return self.T0.map(lambda f: f.eval_t(t))

    def member_bundle(self, t) -> BundleP1:
        return BundleP1(self.z_transition(t))

    def member(self, t) -> PairedBundle:
        if self.tk is None:
            raise ValueError("constant family has no form data")
        t = _point(t)
        C = self._C(t)
        e = [0] * (self.n - self.k) + [-1] * self.k
        out = _up_with_basis(self.tk, C, e)
        if out is None:
            raise ArithmeticError("family member does not carry a nondegenerate form")
        return out

    def _C(self, t) -> Mat:
        if t is INF:
            cols = [list(v) for v in self.p] + [list(v) for v in self.rest] + [list(v) for v in self.q]
        else:
            cols = (
                [list(v) for v in self.q]
                + [list(v) for v in self.rest]
                + [[a + t * b for a, b in zip(pv, qv)] for pv, qv in zip(self.p, self.q)]
            )
        return Mat([list(r) for r in zip(*cols)])

    def restrict_z(self, z0) -> BundleP1:
        """Bundle over the parameter line at the curve point ``z0``."""
        z0 = _point(z0)
        if z0 is INF:
            return BundleP1(self.Ginf.map(lambda f: f.eval_z(INF)))
        return BundleP1(self.G0.map(lambda f: f.eval_z(z0)))

    def cocycle_ok(self) -> bool:
        tinf_t = self.Tinf.map(lambda f: f.subs_t_inverse())
        return tinf_t @ self.G0 == self.Ginf @ self.T0

    def candidates(self) -> list:
        roots = sorted(set(self.special.rational_roots())) if self.special.degree > 0 else []
        return roots + [INF]


def _family_blocks(n: int, k: int, lin, t_var=True) -> Mat:
    """``[[-t^-1 I_k, 0, 0], [0, I, 0], [lin I_k, 0, t I_k]]`` with BiLaurent entries."""
    rows = [[BiLaurent() for _ in range(n)] for _ in range(n)]
    mid = n - 2 * k
    for i in range(k):
        rows[i][i] = BiLaurent.t_monomial(-1, -1)
        rows[k + mid + i][i] = BiLaurent.lift(lin)
        rows[k + mid + i][k + mid + i] = BiLaurent.t_monomial(1)
    for i in range(mid):
        rows[k + i][k + i] = BiLaurent.lift(ONE_LAURENT)
    return Mat(rows)


def _e_matrix(n: int, k: int) -> Mat:
    """``E(t)`` with ``C(t) = C_const E(t)``: lambda-column i gets ``+ t`` at q-slot i."""
    rows = [[BiLaurent.lift(ONE_LAURENT) if i == j else BiLaurent() for j in range(n)] for i in range(n)]
    for i in range(k):
        rows[i][n - k + i] = BiLaurent.t_monomial(1)
    return Mat(rows)


def _e_inverse(n: int, k: int) -> Mat:
    rows = [[BiLaurent.lift(ONE_LAURENT) if i == j else BiLaurent() for j in range(n)] for i in range(n)]
    for i in range(k):
        rows[i][n - k + i] = BiLaurent.t_monomial(1, -1)
    return Mat(rows)


def _family_transition(W: BundleP1, x: Fraction, Cc: Mat, k: int) -> Mat:
    n = W.rank
    e = [0] * (n - k) + [-1] * k
    E, Ei = _e_matrix(n, k), _e_inverse(n, k)
    T = W.transition
    if x == 0:
        zf = [BiLaurent.lift(Laurent.monomial(j)) for j in e]
        return _scale_cols(_bi(T @ to_laurent(Cc)) @ E, zf)
    Mc = to_laurent(inverse(eval_at(T, x) @ Cc)) @ T @ to_laurent(Cc)
    M = Ei @ _bi(Mc) @ E
    return Mat([[_local_factor(M[i, j], x, e[j], e[i]) for j in range(n)] for i in range(n)])


def build_family(tk: TwistedFiberKernel, p: list, q: list) -> BiFamily:
    if tk.point is INF:
        raise ValueError("families are built at finite points; move the point first")
    x = tk.point
    n, k = tk.local.n, len(p)
    W = tk.down.target
    span = [list(v) for v in p] + [list(v) for v in q]
    full = complete_basis(span, n)
    rest = full[2 * k:]
    cols_c = [list(v) for v in q] + rest + [list(v) for v in p]
    cols_ci = [list(v) for v in p] + rest + [list(v) for v in q]
    Cc = Mat([list(r) for r in zip(*cols_c)])
    Cci = Mat([list(r) for r in zip(*cols_ci)])
    T0 = _family_transition(W, x, Cc, k)
    Tinf = _family_transition(W, x, Cci, k)
    G0 = _family_blocks(n, k, linear(x))
    if x == 0:
        Ginf = _bi(laurent_identity(n))
    else:
        Ginf = _family_blocks(n, k, _wx(x))
    special = Poly([-x, 1]) ** k
    return BiFamily(
        n, k, tk.kind, tk.local.ell, x, tk,
        tuple(tuple(v) for v in p), tuple(tuple(v) for v in q), tuple(tuple(v) for v in rest),
        T0, Tinf, G0, Ginf, special,
    )


def constant_family(v: BundleP1) -> BiFamily:
    n = v.rank
    T = _bi(v.transition)
    eye = _bi(laurent_identity(n))
    return BiFamily(n, 0, "", 0, None, None, (), (), (), T, T, eye, eye, Poly([1]))


def symplectic_hecke_family(p: PairedBundle, x, theta) -> BiFamily:
    tk = induced_form_symplectic(p, x, theta)
    base = [list(v) for v in tk.base_direction]
    other = next(list(v) for v in tk.pi if rank(Mat(base + [list(v)])) == 2)
    return build_family(tk, base, [other])


def ig24_for(tk: TwistedFiberKernel) -> tuple:
    """Rulings of the residual 4-space with the base plane in pi-coordinates."""
    P = Mat([list(r) for r in zip(*tk.pi)])
    base = [list(v) for v in tk.base_direction]
    base_c = _coords_in(P, base)
    Q = QuadSpace(tk.residual)
    return rulings_ig24(Q, base_c), P, base_c


def orthogonal_hecke_family(p: PairedBundle, x, Theta, ruling: str = "base") -> BiFamily:
    tk = induced_form_orthogonal(p, x, Theta)
    R, P, _ = ig24_for(tk)
    fam = R.family_a if ruling in ("base", "containing-t0", "a", "A") else R.family_b
    if ruling not in ("base", "containing-t0", "a", "A", "other", "b", "B"):
        raise ValueError(f"unknown ruling {ruling!r}")
    lift = lambda c: [sum(P[i, j] * c[j] for j in range(P.ncols)) for i in range(P.nrows)]  # noqa: E731
    return build_family(tk, [lift(v) for v in fam.p], [lift(v) for v in fam.q])


@dataclass(frozen=True)
class JumpingLine:
    point: object
    splitting: SplittingType

    @property
    def contribution(self) -> int:
        return sum(max(a, 0) * r for a, r in self.splitting.pairs)


@dataclass(frozen=True)
class JumpingReport:
    generic: SplittingType
    jumps: tuple

    @property
    def total_contribution(self) -> int:
        return sum(j.contribution for j in self.jumps)

    def to_json(self) -> dict:
        return {
            "generic": self.generic.to_json(),
            "jumps": [{"point": str(j.point), "splitting": j.splitting.to_json(), "contribution": j.contribution} for j in self.jumps],
            "total_contribution": self.total_contribution,
        }


def jumping_lines(f: BiFamily) -> JumpingReport:
    cands = f.candidates()
    g = next(c for c in (Fraction(7, 3), Fraction(-11, 5), Fraction(13, 2)) if c not in cands)
    generic = birkhoff_split(f.restrict_z(g)).splitting
    jumps = []
    for c in cands:
        st = birkhoff_split(f.restrict_z(c)).splitting
        if st != generic:
            jumps.append(JumpingLine(c, st))
    return JumpingReport(generic, tuple(jumps))


__all__ = [
    "BiFamily",
    "DegenerateWitness",
    "FiberFunctional",
    "Isometry",
    "IsotropicPlane",
    "JumpingLine",
    "JumpingReport",
    "Modification",
    "NotIsotropic",
    "RankTooSmall",
    "TwistedFiberKernel",
    "build_family",
    "constant_family",
    "descent_criterion",
    "down_by_subspace",
    "find_isometry",
    "hecke_down",
    "hecke_up_orthogonal",
    "hecke_up_symplectic",
    "ig24_for",
    "induced_form_orthogonal",
    "induced_form_symplectic",
    "jumping_lines",
    "modify",
    "orthogonal_hecke_family",
    "plane_from_dual",
    "symplectic_hecke_family",
    "up_by_subspace",
    "up_from_kernel",
    "verify_isometry",
]

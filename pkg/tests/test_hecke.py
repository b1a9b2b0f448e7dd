import random
from fractions import Fraction

import pytest

from heckelab.bundle import SplittingType, from_splitting
from heckelab.exactalg import INF, Mat, eval_at, ldet, parse_matrix, rank
from heckelab.hecke import (
    DegenerateWitness,
    FiberFunctional,
    IsotropicPlane,
    NotIsotropic,
    RankTooSmall,
    constant_family,
    descent_criterion,
    dual_subspace_for,
    find_isometry,
    hecke_down,
    hecke_up_orthogonal,
    hecke_up_symplectic,
    induced_form_orthogonal,
    induced_form_symplectic,
    jumping_lines,
    orthogonal_hecke_family,
    symplectic_hecke_family,
)
from heckelab.hn import check_splitting_symmetry
from heckelab.pairing import KindMismatch, PairedBundle, standard_pair, validate_pair
from heckelab.sampling import random_paired_bundle

from oracles import det_is_power_of_linear, frank, splitting_values


def sp(*vals):
    return SplittingType.from_values(vals)


def fr(v):
    return [Fraction(c) for c in v]


# ---------------------------------------------------------------- down step


def test_hecke_down_trivial_rank_two():
    v = from_splitting([0, 0])
    w, incl = hecke_down(v, 0, [1, 0])
    assert w.splitting() == sp(0, -1)
    # [DERIVED] the modified transition is diag(z, 1); oracle agrees
    assert splitting_values(parse_matrix("z, 0; 0, 1")) == [0, -1]
    assert w.degree == v.degree - 1


def test_hecke_down_image_at_fiber_is_ker_theta():
    v = from_splitting([1, 0, -1])
    theta = fr([1, 2, -1])
    for x in (0, 3, Fraction(-1, 2)):
        w, incl = hecke_down(v, x, theta)
        img = eval_at(incl.chart0, x)
        assert rank(img) == 2
        assert all(sum(a * b for a, b in zip(theta, col)) == 0 for col in zip(*img.rows))
        # isomorphism away from x
        assert ldet(incl.chart0)(x + 1) != 0


def test_hecke_down_projective_invariance():
    v = from_splitting([2, 0, -1])
    a = hecke_down(v, 1, [1, -1, 2])[0].splitting()
    b = hecke_down(v, 1, [-3, 3, -6])[0].splitting()
    assert a == b
    assert FiberFunctional(1, (2, -2, 4)).covector == (1, -1, 2)


def test_hecke_down_full_frame_shifts_by_minus_one():
    x = 2
    for vals in ([0, 0, 0], [2, 1, -1]):
        v = from_splitting(vals)
        w, total = v, None
        for i in range(3):
            # the i-th coordinate functional of V, pulled back to the current fiber
            e_i = Mat([[Fraction(int(j == i)) for j in range(3)]])
            theta = (e_i @ eval_at(total, x)).rows[0] if total is not None else e_i.rows[0]
            w, incl = hecke_down(w, x, theta)
            total = incl.chart0 if total is None else total @ incl.chart0
        # [DERIVED] n-fold composition equals V(-x)
        assert w.splitting() == SplittingType.from_values(vals).shifted(-1)
        assert splitting_values(w.transition) == [a - 1 for a in vals]


def test_hecke_down_at_infinity():
    v = from_splitting([1, 0])
    w, _ = hecke_down(v, INF, [0, 1])
    assert w.degree == v.degree - 1


def test_zero_theta_rejected():
    with pytest.raises(ValueError):
        hecke_down(from_splitting([0, 0]), 0, [0, 0])


# ---------------------------------------------------------------- symplectic


def std4():
    return standard_pair("symplectic", [0, 0], 0)


def test_induced_form_symplectic_standard():
    tk = induced_form_symplectic(std4(), 0, [1, 0, 0, 0])
    assert tk.codim == 2
    H = tk.form
    assert H.T() == H.map(lambda f: -f)
    assert tk.modified_dual.degree == 1
    # [DERIVED] det H = c z^2, checked pointwise
    assert det_is_power_of_linear(H, 0, 2)


def test_induced_form_det_order_random():
    rng = random.Random(12)
    for _ in range(6):
        n = rng.choice((2, 4, 6))
        p = random_paired_bundle(rng, "symplectic", n, rng.randint(0, 1), spread=1)
        x = Fraction(rng.randint(-2, 2))
        theta = [rng.randint(-2, 2) for _ in range(n - 1)] + [1]
        tk = induced_form_symplectic(p, x, theta)
        assert tk.codim == 2
        assert tk.form.T() == tk.form.map(lambda f: -f)
        assert det_is_power_of_linear(tk.form, x, n - 2)


def test_kind_mismatch():
    with pytest.raises(KindMismatch):
        induced_form_symplectic(standard_pair("orthogonal", [1, 0], 0, mid=1), 0, [1, 0, 0, 0, 0])
    with pytest.raises(KindMismatch):
        induced_form_orthogonal(std4(), 0, [[1, 0, 0, 0], [0, 1, 0, 0]])


def test_up_at_base_direction_recovers_input():
    for p, x in ((std4(), 0), (standard_pair("symplectic", [1, 0], 1), 2), (std4(), INF)):
        theta = [1] + [0] * (p.n - 1)
        tk = induced_form_symplectic(p, x, theta)
        lam = list(tk.base_direction[0])
        out = hecke_up_symplectic(p, x, theta, lam, tk=tk)
        assert isinstance(out, PairedBundle)
        assert out.splitting() == p.splitting() and out.ell == p.ell and out.kind == p.kind
        assert find_isometry(out, p, x, tk) is not None


def test_up_outside_kernel_condition_gives_witness():
    p = std4()
    tk = induced_form_symplectic(p, 0, [1, 0, 0, 0])
    bad = next(v for v in ([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1])
               if frank([list(b) for b in tk.pi] + [fr(v)]) == 3)
    out = hecke_up_symplectic(p, 0, [1, 0, 0, 0], bad, tk=tk)
    assert isinstance(out, DegenerateWitness)
    assert not descent_criterion(tk, dual_subspace_for(tk, [bad]))
    g = out.gram
    k = out.kernel_vector
    assert any(k)
    assert all(sum(g[i, j] * k[j] for j in range(g.ncols)) == 0 for i in range(g.nrows))


def test_valid_lambdas_form_a_projective_line():
    p = std4()
    tk = induced_form_symplectic(p, 0, [1, 0, 0, 0])
    assert len(tk.pi) == 2
    grid = [fr([a, b, c, d]) for a in (-1, 0, 1) for b in (-1, 0, 1) for c in (-1, 0, 1) for d in (-1, 0, 1)]
    grid = [v for v in grid if any(v)]
    valid = []
    for lam in grid:
        out = hecke_up_symplectic(p, 0, [1, 0, 0, 0], lam, tk=tk)
        ok = isinstance(out, PairedBundle) and validate_pair(out).ok
        assert ok == descent_criterion(tk, dual_subspace_for(tk, [lam]))
        if ok:
            valid.append(lam)
            assert out.V.degree == p.V.degree
            assert check_splitting_symmetry(out).ok
    # the valid directions span exactly the 2-dim space pi
    assert frank(valid) == 2
    assert frank(valid + [list(v) for v in tk.pi]) == 2


# ---------------------------------------------------------------- orthogonal


def std5(a=(1, 0)):
    return standard_pair("orthogonal", list(a), 0, mid=1)


E = lambda i: [int(j == i) for j in range(5)]  # noqa: E731


def test_induced_form_orthogonal_standard():
    p = std5()
    tk = induced_form_orthogonal(p, 0, [E(0), E(1)])
    assert tk.codim == 4
    assert tk.form.T() == tk.form
    assert tk.down.target.degree == p.V.degree - 2
    assert tk.residual.nrows == 4 and rank(tk.residual) == 4
    assert IsotropicPlane(0, ((2, 0, 0, 0, 0), (1, 1, 0, 0, 0))).basis == (tuple(fr(E(0))), tuple(fr(E(1))))


def test_orthogonal_errors():
    with pytest.raises(NotIsotropic):
        induced_form_orthogonal(std5(), 0, [E(0), E(4)])
    with pytest.raises(RankTooSmall):
        induced_form_orthogonal(standard_pair("orthogonal", [0, 0], 0), 0, [[1, 0, 0, 0], [0, 1, 0, 0]])


def test_orthogonal_up_dichotomy():
    p = std5()
    Theta = [E(0), E(1)]
    tk = induced_form_orthogonal(p, 0, Theta)
    base = [list(v) for v in tk.base_direction]
    out = hecke_up_orthogonal(p, 0, Theta, dual_subspace_for(tk, base), tk=tk)
    assert isinstance(out, PairedBundle) and out.splitting() == p.splitting()
    assert find_isometry(out, p, 0, tk) is not None
    # Lambda containing K but not isotropic modulo K: a non-isotropic 2-plane of pi
    pi = [list(v) for v in tk.pi]
    R = tk.residual
    nonisotropic = None
    for i in range(4):
        for j in range(i + 1, 4):
            if R[i, i] or R[j, j] or R[i, j]:
                nonisotropic = [pi[i], pi[j]]
                break
        if nonisotropic:
            break
    Lam = dual_subspace_for(tk, nonisotropic)
    assert not descent_criterion(tk, Lam)
    assert isinstance(hecke_up_orthogonal(p, 0, Theta, Lam, tk=tk), DegenerateWitness)
    # Lambda not containing K: plane with a direction outside pi
    outside = next(fr(E(i)) for i in range(5) if frank(pi + [fr(E(i))]) == 5)
    Lam = dual_subspace_for(tk, [outside, pi[0]])
    assert not descent_criterion(tk, Lam)
    assert isinstance(hecke_up_orthogonal(p, 0, Theta, Lam, tk=tk), DegenerateWitness)


# ---------------------------------------------------------------- families


def test_symplectic_family_members():
    p = std4()
    f = symplectic_hecke_family(p, 0, [1, 0, 0, 0])
    assert f.cocycle_ok()
    assert f.member(0).splitting() == p.splitting()
    for t in (1, -2, Fraction(1, 3), INF):
        m = f.member(t)
        assert validate_pair(m).ok and m.V.degree == p.V.degree
        assert m.splitting() == f.member_bundle(t).splitting()
    assert f.restrict_z(Fraction(5, 7)).splitting().is_balanced()


def test_symplectic_family_single_jump():
    for p, x in ((std4(), 0), (std4(), 3), (standard_pair("symplectic", [0, 0, 0], 0), 1)):
        rep = jumping_lines(symplectic_hecke_family(p, x, [1] + [0] * (p.n - 1)))
        assert len(rep.jumps) == 1
        j = rep.jumps[0]
        assert j.point == x
        assert j.splitting == SplittingType.from_values([1, -1] + [0] * (p.n - 2))
        assert rep.total_contribution == 1


def test_constant_family_has_no_jumps():
    rep = jumping_lines(constant_family(from_splitting([1, 0, -1])))
    assert rep.jumps == ()


@pytest.mark.parametrize("a", [(1, 0), (0, 0)])
@pytest.mark.parametrize("ruling", ["base", "other"])
def test_orthogonal_family_contribution(a, ruling):
    p = std5(a)
    f = orthogonal_hecke_family(p, 0, [E(0), E(1)], ruling=ruling)
    assert f.cocycle_ok()
    for t in (0, 1, -1, INF):
        m = f.member(t)
        assert validate_pair(m).ok and m.kind == "orthogonal" and m.ell == 0
    if ruling == "base":
        assert f.member(0).splitting() == p.splitting()
    assert jumping_lines(f).total_contribution == 2


def _member_planes(f, ts):
    out = []
    for t in ts:
        out.append([[a + t * b for a, b in zip(pv, qv)] for pv, qv in zip(f.p, f.q)])
    out.append([list(q) for q in f.q])
    return out


def test_two_rulings_differ():
    p = std5()
    fa = orthogonal_hecke_family(p, 0, [E(0), E(1)], ruling="base")
    fb = orthogonal_hecke_family(p, 0, [E(0), E(1)], ruling="other")
    ts = [Fraction(k, 2) for k in range(-6, 7)]
    for A in _member_planes(fa, ts):
        for B in _member_planes(fb, ts):
            assert frank(A + B) > 2
    with pytest.raises(ValueError):
        orthogonal_hecke_family(p, 0, [E(0), E(1)], ruling="sideways")

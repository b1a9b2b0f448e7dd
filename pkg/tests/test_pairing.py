import random
from fractions import Fraction

import pytest

from heckelab.bundle import BundleP1, SplittingType, from_splitting, subbundle_from_chart0, twist
from heckelab.exactalg import INF, Mat, linverse, parse_matrix, to_laurent
from heckelab.pairing import (
    ORTHOGONAL,
    SYMPLECTIC,
    InvalidMiddleBlock,
    PairedBundle,
    canonical_kind,
    fiber_form,
    is_isotropic,
    normalize_twist,
    omega_inf,
    perp,
    reframe,
    standard_pair,
    swap_charts,
    validate_pair,
)
from heckelab.sampling import random_paired_bundle, random_unimodular


def sp(*vals):
    return SplittingType.from_values(vals)


def F(rows):
    return Mat([[Fraction(x) for x in r] for r in rows])


def test_kind_aliases():
    assert canonical_kind("sympl") == SYMPLECTIC
    assert canonical_kind("Orthogonal") == ORTHOGONAL
    with pytest.raises(ValueError):
        canonical_kind("hermitian")


def test_standard_symplectic_trivial():
    p = standard_pair("symplectic", [0, 0], 0)
    assert p.splitting() == sp(0, 0, 0, 0)
    assert fiber_form(p, 0).gram == F([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])
    assert validate_pair(p).ok


def test_standard_orthogonal_with_middle():
    p = standard_pair("orthogonal", [1], 0, mid=1)
    assert p.splitting() == sp(1, 0, -1)
    assert fiber_form(p, 5).gram == F([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    assert validate_pair(p).ok


def test_standard_symplectic_twisted():
    p = standard_pair("symplectic", [2, 1], 1)
    assert p.splitting() == sp(2, 1, 0, -1)
    assert p.V.degree == 2 == p.n * p.ell // 2
    assert validate_pair(p).ok


def test_invalid_middle_blocks():
    with pytest.raises(InvalidMiddleBlock):
        standard_pair("orthogonal", [1], 1, mid=1)
    with pytest.raises(InvalidMiddleBlock):
        standard_pair("symplectic", [0], 0, mid=1)


def test_validate_pair_failures():
    # odd symplectic rank: a 3x3 skew matrix is singular
    p = PairedBundle(from_splitting([0, 0, 0]), SYMPLECTIC, 0, F([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))
    rep = validate_pair(p)
    assert not rep.ok and not rep.even_rank and not rep.chart0_nondegenerate
    # det omega0 = z: degenerate at z = 0
    q = PairedBundle(from_splitting([0, 0]), SYMPLECTIC, 0, parse_matrix("0, z; -z, 0"))
    rep = validate_pair(q)
    assert not rep.chart0_nondegenerate
    assert "chart0_nondegenerate" in rep.failures()
    # wrong symmetry
    r = PairedBundle(from_splitting([0, 0]), ORTHOGONAL, 0, F([[0, 1], [-1, 0]]))
    assert not validate_pair(r).symmetry
    # degree law
    s = PairedBundle(from_splitting([1, 0]), ORTHOGONAL, 0, F([[0, 1], [1, 0]]))
    assert not validate_pair(s).degree_law


def test_omega_inf_of_standard_pair_is_constant():
    p = standard_pair("symplectic", [2, -1], 1)
    oi = omega_inf(p)
    assert all(e.is_const() for r in oi.rows for e in r)


def test_normalize_twist():
    base = standard_pair("orthogonal", [0, 0], 0)
    p4 = PairedBundle(twist(base.V, 2), ORTHOGONAL, 4, base.omega0)
    assert validate_pair(p4).degree_law
    q = normalize_twist(p4)
    assert q.ell == 0 and q.splitting() == sp(0, 0, 0, 0)
    b1 = standard_pair("symplectic", [1, 0], 1)
    p3 = PairedBundle(twist(b1.V, 1), SYMPLECTIC, 3, b1.omega0)
    q = normalize_twist(p3)
    assert q.ell == 1 and q.splitting() == b1.splitting()
    assert normalize_twist(b1) is b1


def test_perp_of_first_hyperbolic_line():
    p = standard_pair("orthogonal", [2, 1], 0)
    n = p.n
    e = subbundle_from_chart0(p.V, F([[1]] + [[0]] * (n - 1)))
    ep = perp(p, e)
    assert ep.rank == n - 1
    # all summands except the partner of the first one
    expect = subbundle_from_chart0(p.V, F([[int(i == j) for j in range(n - 1)] for i in range(n)]))
    assert ep.same_as(expect)
    assert ep.degree == e.degree + (Fraction(n, 2) - 1) * p.ell
    assert perp(p, ep).same_as(e)


def test_perp_of_everything_is_zero():
    p = standard_pair("symplectic", [1, 0], 1)
    full = subbundle_from_chart0(p.V, F([[int(i == j) for j in range(4)] for i in range(4)]))
    z = perp(p, full)
    assert z.rank == 0


def test_isotropy_iff_contained_in_perp():
    rng = random.Random(5)
    seen = set()
    for _ in range(16):
        base = standard_pair("symplectic", [1, 0], 1)
        b0 = random_unimodular(rng, 4, "0")
        p = reframe(base, random_unimodular(rng, 4, "inf"), b0)
        if rng.random() < 0.5:
            # the first Lagrangian summand pair, in the new frame
            m = linverse(b0) @ to_laurent(F([[1, 0], [0, 1], [0, 0], [0, 0]]))
        else:
            m = F([[rng.randint(-2, 2) + int(i == j) for j in range(2)] for i in range(4)])
        e = subbundle_from_chart0(p.V, m)
        iso = is_isotropic(p, e)
        seen.add(iso)
        assert iso == perp(p, e).contains(e)
    assert seen == {True, False}


def test_perp_degree_law_random_pairs():
    rng = random.Random(9)
    for kind, n, ell in [(SYMPLECTIC, 4, 1), (SYMPLECTIC, 6, 0), (ORTHOGONAL, 5, 0), (ORTHOGONAL, 4, 1)]:
        for _ in range(4):
            p = random_paired_bundle(rng, kind, n, ell)
            r = rng.randint(1, n - 1)
            cols = [[Fraction(rng.randint(-1, 1)) + (Fraction(1) if i == j else 0) for j in range(r)] for i in range(n)]
            e = subbundle_from_chart0(p.V, Mat(cols))
            ep = perp(p, e)
            assert ep.rank == n - r
            assert ep.degree == e.degree + (Fraction(n, 2) - r) * p.ell
            assert perp(p, ep).same_as(e)


def test_fiber_form_at_infinity():
    p = standard_pair("orthogonal", [1, 0], 0, mid=1)
    g = fiber_form(p, INF)
    assert g.rank == 5
    assert g.gram == g.gram.T()


def test_reframe_and_swap_preserve_validity():
    rng = random.Random(2)
    p = standard_pair("symplectic", [1, -1, 0], 1)
    q = reframe(p, random_unimodular(rng, 6, "inf"), random_unimodular(rng, 6, "0"))
    assert validate_pair(q).ok and q.splitting() == p.splitting()
    s = swap_charts(q)
    assert validate_pair(s).ok and s.splitting() == p.splitting()


def test_form_size_mismatch():
    with pytest.raises(ValueError):
        PairedBundle(BundleP1(parse_matrix("1")), ORTHOGONAL, 0, F([[1, 0], [0, 1]]))

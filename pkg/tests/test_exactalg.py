import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckelab.exactalg import (
    INF,
    EvalAtPole,
    Laurent,
    Mat,
    NotInvertible,
    Poly,
    eval_at,
    format_laurent,
    laurent_identity,
    ldet,
    linverse,
    parse_laurent,
    parse_matrix,
    smith_decomposition,
    smith_form,
)
from heckelab.exactalg.bivariate import BiLaurent
from heckelab.exactalg.matrix import canonical_projective, complete_basis, nullspace, rank

from oracles import fdet

z = Laurent.monomial(1)


def P(*cs):
    return Poly([Fraction(c) for c in cs])


def test_poly_arithmetic():
    a, b = P(1, 1), P(-1, 1)
    assert a * b == P(-1, 0, 1)
    assert (a * b).exact_div(a) == b
    q, r = divmod(P(1, 0, 1), P(1, 1))
    assert q * P(1, 1) + r == P(1, 0, 1)
    assert r == P(2)
    assert P(0, 0, 0) == Poly([]) and not P(0)
    assert P(Fraction(1, 2), 3) * P(Fraction(2, 3)) == P(Fraction(1, 3), 2)


def test_poly_roots_and_shift():
    p = P(6, -5, 1)  # (z - 2)(z - 3)
    assert sorted(p.rational_roots()) == [2, 3]
    assert p.shift(2) == P(0, -1, 1)
    assert P(Fraction(1, 4), 0, -1).rational_roots() in ([Fraction(-1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(-1, 2)])


def test_laurent_canonical_form():
    f = Laurent(-2, P(0, 1, 1))
    assert f.val == -1 and f.poly == P(1, 1)
    assert f.min_exp == -1 and f.max_exp == 0
    assert f.subs_inverse() == Laurent(0, P(1, 1))
    assert (z * z.subs_inverse()) == Laurent.const(1)


def test_laurent_eval():
    f = parse_laurent("z^-1 + 2 + z")
    assert f(2) == Fraction(9, 2)
    with pytest.raises(EvalAtPole):
        f(0)
    with pytest.raises(EvalAtPole):
        f(INF)
    assert parse_laurent("3 + z^-2")(INF) == 3


def test_text_format_roundtrip():
    for s in ["0", "1", "-z^-1", "1/2*z^-3 - z + 7/3*z^4", "z"]:
        f = parse_laurent(s)
        assert parse_laurent(format_laurent(f)) == f
    assert format_laurent(parse_laurent(" z^2 +  4/2 ")) == "2 + z^2"


def test_smith_examples():
    U, D, W = smith_form(Mat([[P(0, 1), P(0)], [P(0), P(0, 1)]]))
    assert D == Mat([[P(0, 1), P(0)], [P(0), P(0, 1)]])
    M = Mat([[P(0, 1), P(1)], [P(0), P(0, 1)]])
    U, D, W = smith_form(M)
    assert U @ M @ W == D
    assert D == Mat([[P(1), P(0)], [P(0), P(0, 0, 1)]])
    U, D, W = smith_form(Mat([[P(0)]]))
    assert D == Mat([[P(0)]]) and U == Mat([[P(1)]]) and W == Mat([[P(1)]])


def _random_poly(rng, max_deg=4):
    d = rng.randint(-1, max_deg)
    return P(*[rng.randint(-3, 3) for _ in range(d + 1)]) if d >= 0 else P()


def test_smith_roundtrip_random():
    rng = random.Random(20261015)
    for _ in range(1000):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        deg = rng.choice((1, 2, 4))
        M = Mat([[_random_poly(rng, deg) for _ in range(c)] for _ in range(r)])
        s = smith_decomposition(M)
        assert s.U @ M @ s.W == s.D
        assert s.det_U != 0 and s.det_W != 0
        f = s.invariant_factors()
        for i in range(len(f) - 1):
            if f[i + 1]:
                assert f[i] and f[i + 1] % f[i] == P()


def test_smith_unimodular_factors():
    rng = random.Random(3)
    for _ in range(30):
        M = Mat([[_random_poly(rng, 2) for _ in range(3)] for _ in range(3)])
        s = smith_decomposition(M)
        assert s.U @ s.U_inv == Mat([[P(int(i == j)) for j in range(3)] for i in range(3)])
        assert s.W @ s.W_inv == Mat([[P(int(i == j)) for j in range(3)] for i in range(3)])
        assert ldet(s.U).is_const() and ldet(s.W).is_const()


def test_eval_at_examples():
    M = parse_matrix("z, 1; 0, z^-1")
    assert eval_at(M, 2) == Mat([[Fraction(2), Fraction(1)], [Fraction(0), Fraction(1, 2)]])
    with pytest.raises(EvalAtPole):
        eval_at(parse_matrix("z^-1"), 0)
    I3 = laurent_identity(3)
    for x in (0, 5, Fraction(-1, 3), INF):
        assert eval_at(I3, x) == Mat([[Fraction(int(i == j)) for j in range(3)] for i in range(3)])
    # chart-inf flag: w = 0 is the point at infinity
    assert eval_at(parse_matrix("z^-1, 3"), 0, chart="inf") == Mat([[Fraction(0), Fraction(3)]])


def test_eval_at_commutes_with_product():
    A = parse_matrix("z, 1; 2, z^-1")
    B = parse_matrix("1 + z^-1, z^2; 0, 1")
    for x in (1, -2, Fraction(3, 4)):
        assert eval_at(A @ B, x) == eval_at(A, x) @ eval_at(B, x)


def test_ldet_matches_pointwise_det():
    M = parse_matrix("z, 1 + z, 0; z^-1, 2, z^2; 1, 0, 1")
    d = ldet(M)
    for x in (1, 2, Fraction(-1, 2)):
        assert d(x) == fdet([[e(x) for e in r] for r in M.rows])


def test_linverse():
    T = parse_matrix("z^-1, 1; 0, z")
    assert T @ linverse(T) == laurent_identity(2)
    with pytest.raises(NotInvertible):
        linverse(parse_matrix("1 + z, 0; 0, 1"))


def test_rational_linear_algebra():
    m = Mat([[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]])
    assert rank(m) == 1
    ns = nullspace(m)
    assert len(ns) == 2
    for v in ns:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in m.rows)
    basis = complete_basis([[Fraction(1), Fraction(1), Fraction(0)]], 3)
    assert rank(Mat(basis)) == 3
    assert canonical_projective([Fraction(0), Fraction(2), Fraction(-4)]) == (0, 1, -2)


def test_bilaurent_substitutions():
    t = BiLaurent.t_monomial(1)
    f = t * BiLaurent.lift(z) + BiLaurent.t_monomial(-1, Fraction(2))
    assert f.eval_t(2) == 2 * z + Laurent.const(1)
    assert f.subs_t_inverse().eval_t(Fraction(1, 2)) == f.eval_t(2)
    assert f.eval_z(3) == Laurent.from_terms({1: Fraction(3), -1: Fraction(2)})
    with pytest.raises(EvalAtPole):
        f.eval_t(INF)


laurents = st.builds(
    lambda v, cs: Laurent(v, Poly([Fraction(c) for c in cs])),
    st.integers(-3, 3),
    st.lists(st.integers(-4, 4), max_size=4),
)


@settings(max_examples=200, deadline=None)
@given(laurents, laurents, laurents)
def test_laurent_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a) == Laurent()
    assert a.subs_inverse().subs_inverse() == a
    if b:
        assert (a * b).exact_div(b) == a


@settings(max_examples=100, deadline=None)
@given(laurents, st.fractions(min_value=-5, max_value=5).filter(bool))
def test_laurent_eval_homomorphism(a, x):
    b = a * a + Laurent.const(1)
    assert b(x) == a(x) ** 2 + 1

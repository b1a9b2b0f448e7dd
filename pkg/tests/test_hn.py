import random
from fractions import Fraction

import pytest

from heckelab.bundle import BundleP1, SplittingType, from_splitting
from heckelab.hn import (
    check_splitting_symmetry,
    hn_filtration,
    is_delta_stable,
    paired_hn,
    semistability_report,
    top_sums,
)
from heckelab.pairing import ORTHOGONAL, SYMPLECTIC, perp, standard_pair, validate_pair
from heckelab.sampling import corpus_classes, random_paired_bundle, random_transition, random_unimodular


def sp(*vals):
    return SplittingType.from_values(vals)


def test_hn_filtration_split_bundle():
    f = hn_filtration(from_splitting([1, 0, -1]))
    assert f.ranks == [1, 2, 3]
    assert list(f.slopes) == [1, 0, -1]


def test_hn_filtration_balanced_is_trivial():
    f = hn_filtration(from_splitting([2, 2, 2]))
    assert f.ranks == [3]
    assert list(f.slopes) == [2]


def test_hn_filtration_frame_independent():
    rng = random.Random(4)
    for _ in range(20):
        n = rng.randint(2, 4)
        T = random_transition(rng, n)
        f1 = hn_filtration(BundleP1(T))
        f2 = hn_filtration(BundleP1(random_unimodular(rng, n, "inf") @ T @ random_unimodular(rng, n, "0")))
        assert f1.ranks == f2.ranks and f1.degrees == f2.degrees


def test_paired_hn_symplectic_one_step():
    p = standard_pair("symplectic", [1, 0], 0)
    h = paired_hn(p)
    assert h.splitting == sp(1, 0, 0, -1)
    assert h.k == 1
    assert [(e.rank, e.degree) for e in h.chain] == [(1, 1)]
    assert [(e.rank, e.degree) for e in h.perps] == [(3, 1)]
    mid = h.middle
    assert mid.n == 2 and mid.kind == SYMPLECTIC
    assert mid.splitting() == sp(0, 0)
    assert validate_pair(mid).ok


def test_paired_hn_semistable():
    h = paired_hn(standard_pair("symplectic", [0, 0], 0))
    assert h.k == 0 and h.chain == () and h.middle_rank() == 4


def test_paired_hn_orthogonal_full_flag():
    p = standard_pair("orthogonal", [2, 1], 0)
    h = paired_hn(p)
    assert [e.rank for e in h.chain] == [1, 2]
    assert [e.rank for e in h.perps] == [2, 3]
    assert h.middle is None and h.middle_rank() == 0
    # E_k = E_k^perp when the middle block is empty
    assert h.chain[-1].same_as(h.perps[0])


def test_paired_hn_orthogonal_with_middle():
    h = paired_hn(standard_pair("orthogonal", [1], 0, mid=1))
    assert [e.rank for e in h.chain] == [1]
    assert h.middle_rank() == 1


def test_paired_hn_exact_perps_agree():
    rng = random.Random(8)
    for kind, n, ell in corpus_classes():
        p = random_paired_bundle(rng, kind, n, ell)
        a, b = paired_hn(p), paired_hn(p, exact_perps=True)
        assert all(x.same_as(y) for x, y in zip(a.perps, b.perps))
        for e, ep in zip(a.chain, reversed(a.perps)):
            assert perp(p, e).same_as(ep)


def test_paired_hn_corpus_invariants():
    rng = random.Random(10)
    classes = corpus_classes()
    for i in range(90):
        kind, n, ell = classes[i % len(classes)]
        p = random_paired_bundle(rng, kind, n, ell)
        h = paired_hn(p)
        slopes = list(h.slopes)
        assert all(a > b for a, b in zip(slopes, slopes[1:]))
        assert not slopes or slopes[-1] > h.mu
        if h.middle_rank():
            assert h.middle_slope() == h.mu
            assert validate_pair(h.middle).ok
        for e, ep in zip(h.chain, reversed(h.perps)):
            lhs = (h.mu - Fraction(ep.degree, ep.rank)) * ep.rank
            rhs = (h.mu - Fraction(e.degree, e.rank)) * e.rank
            assert lhs == rhs


def test_check_splitting_symmetry():
    assert check_splitting_symmetry(standard_pair("orthogonal", [3, 1], 0, mid=2)).ok
    bad = check_splitting_symmetry(from_splitting([1, 0, 0]), ell=0)
    assert not bad.ok and bad.index == 1
    assert check_splitting_symmetry(sp(2, 1, 0, -1), ell=1).ok
    assert not check_splitting_symmetry(sp(2, 1, 0, -1), ell=0).ok


def test_semistability_report_examples():
    r = semistability_report(standard_pair("symplectic", [0, 0], 0), deltas=(0, 1, 2, 3))
    assert r.as_vector_bundle and r.as_paired
    assert not any(r.delta_stable.values())
    r = semistability_report(standard_pair("symplectic", [1, 0], 0))
    assert not r.as_vector_bundle and not r.as_paired


def test_delta_stability_by_top_sums():
    st = sp(0, 0, -1, -1)
    assert top_sums(st) == [0, 0, -1, -2]
    # the O(1) line gives (1 + 0)/1 >= 1/2
    assert is_delta_stable(sp(1, 1, 0, 0), 1, 0) is False
    assert is_delta_stable(sp(-1, -1, -1, -1), 0, 0)
    assert not is_delta_stable(sp(-1, -1, -1, -1), 0, 1)
    assert is_delta_stable(sp(-2, -2, -2, -2), 0, 1)


@pytest.mark.parametrize("kind, n, ell", corpus_classes())
def test_semistability_equivalence_per_class(kind, n, ell):
    rng = random.Random(n * 10 + ell + (kind == ORTHOGONAL))
    for _ in range(8):
        p = random_paired_bundle(rng, kind, n, ell)
        r = semistability_report(p)
        assert r.as_vector_bundle == r.as_paired
        assert check_splitting_symmetry(p).ok

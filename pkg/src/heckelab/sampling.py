"""Seeded random generators for property suites and ``selftest``."""

from __future__ import annotations

import random
from fractions import Fraction

from .bundle import BundleP1
from .exactalg import Laurent, Mat
from .exactalg.matrix import laurent_identity
from .pairing import ORTHOGONAL, SYMPLECTIC, PairedBundle, reframe, standard_pair

_SMALL = [Fraction(c) for c in (-2, -1, 1, 2)] + [Fraction(1, 2), Fraction(-3, 2)]


def small_rational(rng: random.Random) -> Fraction:
    return rng.choice(_SMALL)


def random_unimodular(rng: random.Random, n: int, chart: str = "0", steps: int = 3, max_deg: int = 2) -> Mat:
    """Product of elementary matrices ``I + c t^k E_ij`` with t = z (chart 0) or 1/z (chart inf)."""
    sgn = 1 if chart == "0" else -1
    rows = [list(r) for r in laurent_identity(n).rows]
    if n < 2:
        c = small_rational(rng)
        return Mat([[Laurent.const(c)]])
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = small_rational(rng)
        term = Laurent.monomial(sgn * rng.randint(0, max_deg), c)
        # row_i += term * row_j, i.e. left-multiply by the elementary matrix
        rows[i] = [a + term * b for a, b in zip(rows[i], rows[j])]
    return Mat(rows)


def random_transition(rng: random.Random, n: int, spread: int = 2) -> Mat:
    vals = [rng.randint(-spread, spread) for _ in range(n)]
    d = Mat([[Laurent.monomial(-vals[i]) if i == j else Laurent.const(0) for j in range(n)] for i in range(n)])
    return random_unimodular(rng, n, "inf") @ d @ random_unimodular(rng, n, "0")


def random_standard_pair(rng: random.Random, kind: str, n: int, ell: int, spread: int = 2) -> PairedBundle:
    if kind == SYMPLECTIC:
        k, mid = n // 2, 0
    else:
        k = n // 2
        mid = n - 2 * k
        if ell % 2 and mid:
            raise ValueError("odd-rank orthogonal pairs need ell = 0")
    a = sorted((rng.randint(-spread, spread) for _ in range(k)), reverse=True)
    return standard_pair(kind, a, ell, mid)


def random_paired_bundle(rng: random.Random, kind: str, n: int, ell: int, spread: int = 2) -> PairedBundle:
    """A standard pair seen through random chart-0 and chart-inf frames."""
    p = random_standard_pair(rng, kind, n, ell, spread)
    return reframe(p, random_unimodular(rng, n, "inf"), random_unimodular(rng, n, "0"))


def corpus_classes():
    """(kind, n, ell) combinations used by the splitting-symmetry suite."""
    out = []
    for n in (2, 4, 6):
        for ell in (0, 1):
            out.append((SYMPLECTIC, n, ell))
    for n in (3, 5, 7):
        out.append((ORTHOGONAL, n, 0))
    return out


def random_bundle(rng: random.Random, n: int, spread: int = 2) -> BundleP1:
    return BundleP1(random_transition(rng, n, spread))

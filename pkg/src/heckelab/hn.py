"""Harder-Narasimhan data of bundles and paired bundles on P^1.

The HN flag is read off a Birkhoff frame: its i-th step is spanned by the
frame vectors of the i largest summand degrees.  For a paired bundle the
lower half of the flag is isotropic and the upper half is its perp chain;
both facts are verified on the computed frame rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .bundle import BirkhoffSplit, BundleP1, SplittingType, Subbundle, birkhoff_split, subbundle_from_frames
from .exactalg import Mat
from .pairing import PairedBundle, perp


class IsotropyViolation(ValueError):
    """An HN step below the middle is not isotropic."""


@dataclass(frozen=True, eq=False)
class HNFiltration:
    steps: tuple
    slopes: tuple
    splitting: SplittingType

    @property
    def ranks(self) -> list:
        return [s.rank for s in self.steps]

    @property
    def degrees(self) -> list:
        return [s.degree for s in self.steps]


def _cumulative(split: SplittingType):
    ranks, degs = [0], [0]
    for a, r in split.pairs:
        ranks.append(ranks[-1] + r)
        degs.append(degs[-1] + a * r)
    return ranks, degs


def _step(v: BundleP1, b: BirkhoffSplit, r: int) -> Subbundle:
    idx = range(r)
    return subbundle_from_frames(v, b.frame.cols(idx), b.pi_minus.cols(idx), Mat([row[:r] for row in b.D.rows[:r]]))


def hn_filtration(v: BundleP1, split: Optional[BirkhoffSplit] = None) -> HNFiltration:
    b = split or birkhoff_split(v)
    ranks, _ = _cumulative(b.splitting)
    steps = tuple(_step(v, b, r) for r in ranks[1:])
    return HNFiltration(steps, tuple(Fraction(a) for a, _ in b.splitting.pairs), b.splitting)


@dataclass(frozen=True, eq=False)
class PairedHNData:
    chain: tuple  # E_1 < ... < E_k
    perps: tuple  # E_k^perp, ..., E_1^perp
    slopes: tuple  # mu(E_i / E_{i-1}), i = 1..k
    middle: Optional[PairedBundle]
    splitting: SplittingType
    ell: int

    @property
    def k(self) -> int:
        return len(self.chain)

    @property
    def mu(self) -> Fraction:
        return Fraction(self.ell, 2)

    def middle_rank(self) -> int:
        return self.middle.n if self.middle is not None else 0

    def middle_slope(self) -> Optional[Fraction]:
        if not self.chain:
            return self.mu
        top, low = self.perps[0], self.chain[-1]
        if top.rank == low.rank:
            return None
        return Fraction(top.degree - low.degree, top.rank - low.rank)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "splitting": self.splitting.to_json(),
            "chain": [{"rank": e.rank, "degree": e.degree} for e in self.chain],
            "perps": [{"rank": e.rank, "degree": e.degree} for e in self.perps],
            "slopes": [str(s) for s in self.slopes],
            "middle_rank": self.middle_rank(),
        }


def paired_hn(p: PairedBundle, split: Optional[BirkhoffSplit] = None, exact_perps: bool = False) -> PairedHNData:
    """Isotropic HN chain with its perp chain and middle quotient.

    With ``exact_perps`` the perps are computed from the form by saturated
    kernels (slower) instead of being read off the frame.
    """
    b = split or birkhoff_split(p.V)
    st = b.splitting
    ranks, _ = _cumulative(st)
    m = st.m
    half = Fraction(p.ell, 2)
    k = sum(1 for a, _ in st.pairs if a > half)
    om = p.omega0
    frame = b.frame
    if k:
        s = frame.cols(range(ranks[k]))
        if not (s.T() @ om @ s).is_zero():
            raise IsotropyViolation(f"HN step of rank {ranks[k]} is not isotropic")
    chain = tuple(_step(p.V, b, ranks[i]) for i in range(1, k + 1))
    perps = []
    for i in range(k, 0, -1):
        j = m - i
        if ranks[j] != p.n - ranks[i]:
            raise IsotropyViolation(f"perp of E_{i} has the wrong rank")
        si, sj = frame.cols(range(ranks[i])), frame.cols(range(ranks[j]))
        if not (si.T() @ om @ sj).is_zero():
            raise IsotropyViolation(f"HN step {j} is not orthogonal to E_{i}")
        perps.append(perp(p, chain[i - 1]) if exact_perps else _step(p.V, b, ranks[j]))
    middle = None
    lo, hi = ranks[k], ranks[m - k]
    if hi > lo:
        idx = range(lo, hi)
        sm = frame.cols(idx)
        dm = Mat([row[lo:hi] for row in b.D.rows[lo:hi]])
        middle = PairedBundle(BundleP1(dm), p.kind, p.ell, sm.T() @ om @ sm)
    return PairedHNData(chain, tuple(perps), tuple(Fraction(a) for a, _ in st.pairs[:k]), middle, st, p.ell)


@dataclass(frozen=True)
class SymmetryCheck:
    ok: bool
    index: Optional[int] = None  # 1-based violating block

    def __bool__(self):
        return self.ok


def check_splitting_symmetry(obj, ell: Optional[int] = None) -> SymmetryCheck:
    """``r_{m+1-i} = r_i`` and ``a_{m+1-i} = ell - a_i`` for every block."""
    if isinstance(obj, PairedBundle):
        st, ell = obj.splitting(), obj.ell if ell is None else ell
    elif isinstance(obj, BundleP1):
        st = obj.splitting()
    else:
        st = obj
    if ell is None:
        raise ValueError("ell is required for a bare bundle")
    pairs = st.pairs
    m = len(pairs)
    for i in range(m):
        a, r = pairs[i]
        b, s = pairs[m - 1 - i]
        if r != s or b != ell - a:
            return SymmetryCheck(False, i + 1)
    return SymmetryCheck(True)


def top_sums(st: SplittingType) -> list:
    vals = st.values()
    out, acc = [], 0
    for v in vals:
        acc += v
        out.append(acc)
    return out


@dataclass(frozen=True)
class SemistabilityReport:
    as_vector_bundle: bool
    as_paired: bool
    delta_stable: dict

    def to_json(self) -> dict:
        return {
            "as_vector_bundle": self.as_vector_bundle,
            "as_paired": self.as_paired,
            "delta_stable": {str(d): v for d, v in sorted(self.delta_stable.items())},
        }


def is_delta_stable(st: SplittingType, ell: int, delta) -> bool:
    """Every nonzero isotropic E has (deg E + delta)/rk E < ell/2.

    The largest degree of an isotropic rank-r subbundle (r <= n/2) is the
    sum of the r largest summand degrees.
    """
    mu = Fraction(ell, 2)
    sums = top_sums(st)
    n = st.rank
    return all(Fraction(sums[r - 1] + delta, r) < mu for r in range(1, n // 2 + 1))


def semistability_report(p: PairedBundle, deltas: Iterable[int] = (0, 1, 2), hn: Optional[PairedHNData] = None) -> SemistabilityReport:
    data = hn or paired_hn(p)
    st = data.splitting
    as_vb = st.is_semistable()
    as_paired = not (data.k >= 1 and data.slopes[0] > data.mu)
    return SemistabilityReport(as_vb, as_paired, {d: is_delta_stable(st, p.ell, d) for d in deltas})


__all__ = [
    "HNFiltration",
    "IsotropyViolation",
    "PairedHNData",
    "SemistabilityReport",
    "SymmetryCheck",
    "check_splitting_symmetry",
    "hn_filtration",
    "is_delta_stable",
    "paired_hn",
    "semistability_report",
]

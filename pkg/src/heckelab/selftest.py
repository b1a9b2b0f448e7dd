"""Randomized property suites shared by ``heckelab selftest`` and the test-suite."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bundle import birkhoff_split
from .hecke import DegenerateWitness, descent_criterion, dual_subspace_for, hecke_up_symplectic, induced_form_symplectic
from .hn import check_splitting_symmetry, paired_hn, semistability_report
from .pairing import SYMPLECTIC, PairedBundle, perp, validate_pair
from .sampling import corpus_classes, random_bundle, random_paired_bundle, small_rational


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"name": self.name, "cases": self.cases, "failures": len(self.failures), "ok": self.ok}


def birkhoff_roundtrip(rng: random.Random, cases: int) -> SuiteResult:
    res = SuiteResult("birkhoff_roundtrip")
    for i in range(cases):
        v = random_bundle(rng, rng.randint(1, 4))
        b = birkhoff_split(v)
        res.cases += 1
        if b.pi_minus @ b.D @ b.pi_plus != v.transition:
            res.failures.append(i)
    return res


def perp_law(p: PairedBundle, hn) -> bool:
    """deg E^perp = deg E + (n/2 - r) ell for the chain, and E^perp^perp = E."""
    for e, ep in zip(hn.chain, reversed(hn.perps)):
        if Fraction(ep.degree) != e.degree + (Fraction(p.n, 2) - e.rank) * p.ell:
            return False
        exact = perp(p, e)
        if not exact.same_as(ep) or not perp(p, exact).same_as(e):
            return False
    return True


def paired_corpus(rng: random.Random, cases: int) -> list:
    """Symmetry, semistability equivalence and perp law on random paired bundles."""
    sym = SuiteResult("splitting_symmetry")
    semi = SuiteResult("semistability_equivalence")
    law = SuiteResult("perp_law")
    classes = corpus_classes()
    for i in range(cases):
        kind, n, ell = classes[i % len(classes)]
        p = random_paired_bundle(rng, kind, n, ell)
        hn = paired_hn(p)
        rep = semistability_report(p, hn=hn)
        for suite in (sym, semi, law):
            suite.cases += 1
        if not check_splitting_symmetry(p).ok:
            sym.failures.append(i)
        if rep.as_vector_bundle != rep.as_paired:
            semi.failures.append(i)
        if not perp_law(p, hn):
            law.failures.append(i)
    return [sym, semi, law]


def hecke_dichotomy(rng: random.Random, cases: int, lambdas: int = 5) -> SuiteResult:
    """Up-modification gives a valid pair exactly when the kernel condition holds."""
    res = SuiteResult("hecke_dichotomy")
    for i in range(cases):
        n = rng.choice((2, 4))
        p = random_paired_bundle(rng, SYMPLECTIC, n, rng.randint(0, 1), spread=1)
        x = rng.choice((Fraction(0), Fraction(rng.randint(-3, 3)), small_rational(rng)))
        theta = _nonzero(rng, n)
        tk = induced_form_symplectic(p, x, theta)
        if tk.codim != 2:
            res.failures.append((i, "codim"))
            continue
        for _ in range(lambdas):
            lam = _lambda(rng, tk, n)
            out = hecke_up_symplectic(p, x, theta, lam, tk=tk)
            expect = descent_criterion(tk, dual_subspace_for(tk, [lam]))
            got = isinstance(out, PairedBundle) and validate_pair(out).ok
            res.cases += 1
            if got != expect or (not got and not isinstance(out, DegenerateWitness)):
                res.failures.append((i, lam))
    return res


def _nonzero(rng: random.Random, n: int) -> list:
    while True:
        v = [Fraction(rng.randint(-2, 2)) for _ in range(n)]
        if any(v):
            return v


def _lambda(rng: random.Random, tk, n: int) -> list:
    """Half the time a vector of pi (criterion holds), otherwise arbitrary."""
    if rng.random() < 0.5:
        coeffs = [Fraction(rng.randint(-2, 2)) for _ in tk.pi]
        v = [sum(c * b[j] for c, b in zip(coeffs, tk.pi)) for j in range(n)]
        if any(v):
            return v
    return _nonzero(rng, n)


def run_all(cases: int = 50, seed: int = 0) -> list:
    rng = random.Random(seed)
    out = [birkhoff_roundtrip(rng, cases)]
    out += paired_corpus(rng, cases)
    out.append(hecke_dichotomy(rng, max(1, cases // 5)))
    return out


__all__ = ["SuiteResult", "birkhoff_roundtrip", "hecke_dichotomy", "paired_corpus", "perp_law", "run_all"]

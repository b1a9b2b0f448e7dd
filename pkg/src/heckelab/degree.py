"""Degree formula for rational curves of paired bundles and the numeric bounds around it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .pairing import ORTHOGONAL, SYMPLECTIC, canonical_kind


class InvariantViolation(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    a: int
    r: int
    degE: Fraction  # degree of the cumulative step E_i
    c2: int = 0


@dataclass(frozen=True)
class DegreeInput:
    n: int
    ell: int
    blocks: tuple
    symmetric: bool = False

    @property
    def m(self) -> int:
        return len(self.blocks)

    @classmethod
    def from_json(cls, d: dict) -> "DegreeInput":
        try:
            n, ell = int(d["n"]), int(d.get("ell", 0))
            raw = d.get("blocks")
            if raw is None:
                # shorthand: single block carrying the total c2
                raw = [{"a": d.get("a", 0), "r": n, "degE": d.get("degE", 0), "c2": d.get("c2", 0)}]
            blocks = tuple(Block(int(b["a"]), int(b["r"]), Fraction(str(b.get("degE", 0))), int(b.get("c2", 0))) for b in raw)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvariantViolation(f"malformed degree input: {exc}") from None
        return cls(n, ell, blocks, bool(d.get("symmetric", False)))

    def check(self) -> None:
        if self.n < 1 or not self.blocks:
            raise InvariantViolation("need n >= 1 and at least one block")
        if any(b.r <= 0 for b in self.blocks):
            raise InvariantViolation("block ranks must be positive")
        if any(b.c2 < 0 for b in self.blocks):
            raise InvariantViolation("c2 entries must be nonnegative")
        if any(x.a <= y.a for x, y in zip(self.blocks, self.blocks[1:])):
            raise InvariantViolation("block values a_i must strictly decrease")
        if sum(b.r for b in self.blocks) != self.n:
            raise InvariantViolation("block ranks must sum to n")
        if self.symmetric:
            m = self.m
            for i, b in enumerate(self.blocks):
                o = self.blocks[m - 1 - i]
                if o.r != b.r or o.a != -b.a + (self.ell % 2):
                    raise InvariantViolation(f"block {i + 1} violates the splitting symmetry")


def degree_formula(d: DegreeInput) -> Fraction:
    """``2n (sum c2_i + sum_{i<m} (a_i - a_{i+1}) (mu(V) - mu(E_i)) r_i)``.

    ``E_i`` is cumulative: its rank is ``r_1 + ... + r_i`` and its degree is
    ``degE_i``; ``r_i`` in the product is the block multiplicity.
    """
    d.check()
    mu = Fraction(d.ell, 2)
    total = Fraction(sum(b.c2 for b in d.blocks))
    rk = 0
    for i in range(d.m - 1):
        b, nxt = d.blocks[i], d.blocks[i + 1]
        rk += b.r
        mu_e = Fraction(b.degE) / rk
        total += (b.a - nxt.a) * (mu - mu_e) * b.r
    return 2 * d.n * total


def perp_slope_identity(n: int, ell: int, r: int, d) -> tuple:
    """Both sides of ``(mu(V) - mu(E^perp)) rk E^perp = (mu(V) - mu(E)) rk E``."""
    if not 0 < r < n:
        raise InvariantViolation("need 0 < r < n")
    d = Fraction(d)
    mu = Fraction(ell, 2)
    dperp = d + (Fraction(n, 2) - r) * ell
    rperp = n - r
    lhs = (mu - dperp / rperp) * rperp
    rhs = (mu - d / r) * r
    return lhs, rhs


def delta_stable_region(g: int, n: int, delta: int, kind: str = SYMPLECTIC) -> bool:
    canonical_kind(kind)
    return (g == delta + 2 and n > delta + 1) or (g > delta + 2 and Fraction(n) > Fraction(delta + 2, 2))


@dataclass(frozen=True)
class BoundQuery:
    g: int
    n: int
    delta: int = 0
    r: int = 1
    d: Fraction = Fraction(0)
    ell: int = 0
    kind: str = SYMPLECTIC

    def __post_init__(self):
        object.__setattr__(self, "kind", canonical_kind(self.kind))
        object.__setattr__(self, "d", Fraction(self.d))
        if self.n < 2 or self.g < 0:
            raise InvariantViolation("need n >= 2 and g >= 0")


def codim_sides(q: BoundQuery) -> tuple:
    """``(n - r +- 1)(r ell / 2 - d)`` and ``(r/2)(2n - 3r +- 1)(g - 1)``; + symplectic, - orthogonal."""
    if not 1 <= q.r <= Fraction(q.n, 2):
        raise InvariantViolation("need 1 <= r <= n/2")
    s = 1 if q.kind == SYMPLECTIC else -1
    lhs = (q.n - q.r + s) * (Fraction(q.r * q.ell, 2) - q.d)
    rhs = Fraction(q.r, 2) * (2 * q.n - 3 * q.r + s) * (q.g - 1)
    return lhs, rhs


def codim_positive(q: BoundQuery) -> bool:
    lhs, rhs = codim_sides(q)
    return lhs < rhs


def unique_hom_threshold(n: int, delta: int) -> Fraction:
    return Fraction(3 * (delta - 1) * n, n - 1) + 1


def unique_hom_region(g: int, n: int, delta: int) -> bool:
    if delta < 1:
        raise InvariantViolation("need delta >= 1")
    return (delta == 1 and g >= 3) or (g > unique_hom_threshold(n, delta) and Fraction(n) > Fraction(delta + 2, 2))


def remark_inequality(delta: int, n: int) -> bool:
    if delta < 2 or n < 4:
        raise InvariantViolation("stated for delta >= 2 and n >= 4")
    return delta + 2 < unique_hom_threshold(n, delta)


def moduli_dimension(n: int, g: int, kind: str) -> Fraction:
    kind = canonical_kind(kind)
    if kind == SYMPLECTIC:
        return Fraction(n * (n + 1), 2) * (g - 1)
    return Fraction(n * (n - 1), 2) * (g - 1)


def minimal_degree_hypotheses(g: int, n: int, kind: str) -> bool:
    """Range in which the minimal degrees 2n (symplectic) / 4n (orthogonal) are asserted."""
    kind = canonical_kind(kind)
    if kind == ORTHOGONAL:
        return g >= 5 and n >= 5
    return True


def hecke_curve_degree(n: int, contribution: int) -> Fraction:
    """Degree of a single-block family with total c2 equal to the jump contribution."""
    return degree_formula(DegreeInput(n, 0, (Block(0, n, Fraction(0), contribution),)))


def bounds_report(g: int, n: int, delta: int, kind: str) -> dict:
    kind = canonical_kind(kind)
    out = {
        "g": g,
        "n": n,
        "delta": delta,
        "kind": kind,
        "delta_stable_region": delta_stable_region(g, n, delta, kind),
        "moduli_dimension": str(moduli_dimension(n, g, kind)),
    }
    if delta >= 1:
        out["unique_hom_region"] = unique_hom_region(g, n, delta)
    if delta >= 2 and n >= 4:
        out["remark_inequality"] = remark_inequality(delta, n)
    return out


__all__ = [
    "Block",
    "BoundQuery",
    "DegreeInput",
    "InvariantViolation",
    "bounds_report",
    "codim_positive",
    "codim_sides",
    "degree_formula",
    "delta_stable_region",
    "hecke_curve_degree",
    "minimal_degree_hypotheses",
    "moduli_dimension",
    "perp_slope_identity",
    "remark_inequality",
    "unique_hom_region",
    "unique_hom_threshold",
]

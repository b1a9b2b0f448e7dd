"""Laurent polynomials in (z, t): a map from t-exponent to a Laurent polynomial in z."""

from __future__ import annotations

from fractions import Fraction

from .poly import INF, ZERO_LAURENT, Laurent, Poly


class BiLaurent:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @staticmethod
    def lift(e) -> "BiLaurent":
        if isinstance(e, BiLaurent):
            return e
        if isinstance(e, Laurent):
            return BiLaurent({0: e})
        if isinstance(e, Poly):
            return BiLaurent({0: Laurent.from_poly(e)})
        return BiLaurent({0: Laurent.const(e)})

    @staticmethod
    def t_monomial(k: int, c=Fraction(1)) -> "BiLaurent":
        c = c if isinstance(c, Laurent) else Laurent.const(c)
        return BiLaurent({k: c})

    def zero_like(self) -> "BiLaurent":
        return BiLaurent()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = BiLaurent.lift(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __neg__(self):
        return BiLaurent({k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        other = BiLaurent.lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO_LAURENT) + v
        return BiLaurent(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-BiLaurent.lift(other))

    def __rsub__(self, other):
        return BiLaurent.lift(other) - self

    def __mul__(self, other):
        other = BiLaurent.lift(other)
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                out[k1 + k2] = out.get(k1 + k2, ZERO_LAURENT) + v1 * v2
        return BiLaurent(out)

    __rmul__ = __mul__

    def exact_div_z(self, d: Laurent) -> "BiLaurent":
        return BiLaurent({k: v.exact_div(d) for k, v in self.terms.items()})

    def subs_t_inverse(self) -> "BiLaurent":
        return BiLaurent({-k: v for k, v in self.terms.items()})

    def eval_t(self, t) -> Laurent:
        """Substitute a rational t (t = INF reads the t^0 coefficient, requiring no positive powers)."""
        if t is INF:
            if any(k > 0 for k in self.terms):
                from .poly import EvalAtPole

                raise EvalAtPole("positive power of t at t = inf")
            return self.terms.get(0, ZERO_LAURENT)
        t = Fraction(t)
        acc = ZERO_LAURENT
        for k, v in self.terms.items():
            acc = acc + v * (t**k)
        return acc

    def eval_z(self, z) -> Laurent:
        """Substitute z (rational or INF); the result is a Laurent polynomial in t."""
        return Laurent.from_terms({k: v(z) for k, v in self.terms.items()})

    def __repr__(self):
        from .textfmt import format_laurent

        if not self.terms:
            return "BiLaurent(0)"
        parts = [f"({format_laurent(v)})*t^{k}" for k, v in sorted(self.terms.items())]
        return "BiLaurent(" + " + ".join(parts) + ")"

"""Univariate polynomials and Laurent polynomials over the rationals.

Both types are immutable.  ``Poly`` stores coefficients by increasing degree
with no trailing zeros.  ``Laurent`` stores ``z**val * poly`` where the
constant term of ``poly`` is nonzero (the zero element has ``val == 0``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Union

Scalar = Union[int, Fraction]


class EvalAtPole(ArithmeticError):
    """Raised when a Laurent entry is evaluated at one of its poles."""


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def is_point_inf(x) -> bool:
    return x is INF or (isinstance(x, str) and x.lower() in ("inf", "oo"))


def _integral(cs) -> tuple:
    """(d, ints) with cs[i] == ints[i] / d."""
    d = 1
    for c in cs:
        q = c.denominator
        if q != 1:
            d = d * q // gcd(d, q)
    if d == 1:
        return 1, [c.numerator for c in cs]
    return d, [c.numerator * (d // c.denominator) for c in cs]


def _trim(cs: list) -> tuple:
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim([as_fraction(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        c = as_fraction(c)
        return cls._raw((c,) if c else ())

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        c = as_fraction(c)
        if not c:
            return ZERO_POLY
        return cls._raw((Fraction(0),) * k + (c,))

    # -- inspection -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        from .textfmt import format_terms

        return f"Poly({format_terms(dict(enumerate(self.coeffs)))!r})"

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = Poly.const(other)
            else:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(_trim(out))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO_POLY
            return Poly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        if len(a) == 1 or len(b) == 1:
            if len(b) == 1:
                a, b = b, a
            return Poly._raw(_trim([a[0] * c for c in b]))
        # integer convolution over a common denominator: one gcd per coefficient
        da, ia = _integral(a)
        db, ib = _integral(b)
        acc = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(ia):
            if x:
                for j, y in enumerate(ib):
                    acc[i + j] += x * y
        den = da * db
        return Poly._raw(_trim([Fraction(v, den) for v in acc]))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ONE_POLY
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "Poly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.coeffs[-1]
        if len(rem) - 1 < db:
            return ZERO_POLY, self
        quo = [Fraction(0)] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lb
            quo[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] -= c * bc[j]
        return Poly._raw(_trim(quo)), Poly._raw(_trim(rem[:db]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self * (1 / self.coeffs[-1])

    def __call__(self, x):
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, x) -> "Poly":
        """Return ``p(z + x)``."""
        x = as_fraction(x)
        out = ZERO_POLY
        lin = Poly._raw((x, Fraction(1))) if x else Poly._raw((Fraction(0), Fraction(1)))
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def valuation(self) -> int:
        """Order of vanishing at 0 (``-1`` never; zero polynomial gives a large value)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 1 << 30

    def rational_roots(self) -> list:
        """Distinct rational roots, sorted."""
        if self.degree <= 0:
            return []
        from math import gcd, lcm

        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, c)
        ints = [c // g for c in ints]
        roots = set()
        v = 0
        while ints[v] == 0:
            v += 1
        if v:
            roots.add(Fraction(0))
        ints = ints[v:]
        if len(ints) > 1:
            a0, an = abs(ints[0]), abs(ints[-1])
            ps = _divisors(a0)
            qs = _divisors(an)
            p = Poly(ints)
            for num in ps:
                for q in qs:
                    for s in (1, -1):
                        r = Fraction(s * num, q)
                        if r not in roots and p(r) == 0:
                            roots.add(r)
        return sorted(roots)


def _divisors(n: int) -> list:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i * i != n:
                out.append(n // i)
        i += 1
    return out


ZERO_POLY = Poly._raw(())
ONE_POLY = Poly._raw((Fraction(1),))
Z = Poly._raw((Fraction(0), Fraction(1)))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


class Laurent:
    """``z**val * poly`` with ``poly(0) != 0``, or zero."""

    __slots__ = ("val", "poly")

    def __init__(self, val: int = 0, poly=None):
        if poly is None:
            poly = ZERO_POLY
        elif not isinstance(poly, Poly):
            poly = Poly(poly)
        self.val, self.poly = _canon(val, poly)

    @classmethod
    def _raw(cls, val, poly) -> "Laurent":
        obj = object.__new__(cls)
        obj.val, obj.poly = _canon(val, poly)
        return obj

    @classmethod
    def const(cls, c) -> "Laurent":
        return cls._raw(0, Poly.const(c))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Laurent":
        return cls._raw(k, Poly.const(c))

    @classmethod
    def from_poly(cls, p: Poly) -> "Laurent":
        return cls._raw(0, p)

    @classmethod
    def from_terms(cls, terms: dict) -> "Laurent":
        terms = {k: as_fraction(c) for k, c in terms.items() if c}
        if not terms:
            return ZERO_LAURENT
        lo = min(terms)
        hi = max(terms)
        return cls._raw(lo, Poly._raw(_trim([terms.get(k, Fraction(0)) for k in range(lo, hi + 1)])))

    @classmethod
    def from_w(cls, p: Poly) -> "Laurent":
        """Interpret ``p`` as a polynomial in ``w = 1/z``."""
        if not p:
            return ZERO_LAURENT
        return cls._raw(-p.degree, Poly._raw(tuple(reversed(p.coeffs))))

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.poly

    def __bool__(self):
        return bool(self.poly)

    @property
    def min_exp(self) -> int:
        return self.val

    @property
    def max_exp(self) -> int:
        return self.val + self.poly.degree

    def coeff(self, k: int) -> Fraction:
        return self.poly.coeff(k - self.val)

    def terms(self) -> dict:
        return {self.val + i: c for i, c in enumerate(self.poly.coeffs) if c}

    def is_monomial(self) -> bool:
        return self.poly.degree == 0

    def is_const(self) -> bool:
        return not self.poly or (self.val == 0 and self.poly.degree == 0)

    def is_poly(self) -> bool:
        return self.val >= 0 or not self.poly

    def is_poly_w(self) -> bool:
        return not self.poly or self.max_exp <= 0

    def to_poly(self) -> Poly:
        if not self.poly:
            return ZERO_POLY
        if self.val < 0:
            raise ValueError("Laurent polynomial has negative powers")
        return Poly._raw((Fraction(0),) * self.val + self.poly.coeffs)

    def to_w(self) -> Poly:
        """As a polynomial in ``w = 1/z``; requires no positive powers of z."""
        if not self.poly:
            return ZERO_POLY
        if self.max_exp > 0:
            raise ValueError("Laurent polynomial has positive powers of z")
        cs = (Fraction(0),) * (-self.max_exp) + tuple(reversed(self.poly.coeffs))
        return Poly._raw(cs)

    def __eq__(self, other):
        if isinstance(other, Laurent):
            return self.val == other.val and self.poly == other.poly
        if isinstance(other, (int, Fraction)):
            return self == Laurent.const(other)
        if isinstance(other, Poly):
            return self == Laurent.from_poly(other)
        return NotImplemented

    def __hash__(self):
        return hash(("Laurent", self.val, self.poly.coeffs))

    def __repr__(self):
        from .textfmt import format_laurent

        return f"Laurent({format_laurent(self)!r})"

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return Laurent._raw(self.val, -self.poly)

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        if not self.poly:
            return other
        if not other.poly:
            return self
        if self.val <= other.val:
            lo, hi = self, other
        else:
            lo, hi = other, self
        d = hi.val - lo.val
        shifted = Poly._raw((Fraction(0),) * d + hi.poly.coeffs)
        return Laurent._raw(lo.val, lo.poly + shifted)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Laurent._raw(self.val, self.poly * other)
        other = _lift(other)
        if other is None:
            return NotImplemented
        return Laurent._raw(self.val + other.val, self.poly * other.poly)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ArithmeticError("only monomials are units")
            return Laurent._raw(self.val * k, Poly.const(1 / self.poly.coeffs[0] ** (-k)))
        out = ONE_LAURENT
        for _ in range(k):
            out = out * self
        return out

    def shift_exp(self, k: int) -> "Laurent":
        """Multiply by ``z**k``."""
        if not self.poly:
            return self
        return Laurent._raw(self.val + k, self.poly)

    def exact_div(self, other) -> "Laurent":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = _lift(other)
        if not other.poly:
            raise ZeroDivisionError("Laurent division by zero")
        q = self.poly.exact_div(other.poly)
        return Laurent._raw(self.val - other.val, q)

    def divides_by_linear(self, x) -> bool:
        return self.poly(x) == 0 if x else True

    def __call__(self, x):
        """Evaluate at a rational ``x`` or at ``INF``."""
        if is_point_inf(x):
            if not self.poly:
                return Fraction(0)
            if self.max_exp > 0:
                raise EvalAtPole("pole at infinity")
            return self.coeff(0)
        x = as_fraction(x)
        if not self.poly:
            return Fraction(0)
        if x == 0:
            if self.val < 0:
                raise EvalAtPole("pole at z = 0")
            return self.coeff(0)
        v = self.poly(x)
        return v * x**self.val

    def subs_inverse(self) -> "Laurent":
        """Return ``f(1/z)``."""
        if not self.poly:
            return self
        return Laurent._raw(-self.max_exp, Poly._raw(tuple(reversed(self.poly.coeffs))))

    def shift_center(self, x) -> "Laurent":
        """Re-expand a polynomial (no negative powers) around ``z = x``: return q with q(s) = f(s + x)."""
        return Laurent.from_poly(self.to_poly().shift(x))


def _canon(val: int, poly: Poly):
    cs = poly.coeffs
    if not cs:
        return 0, ZERO_POLY
    k = 0
    while not cs[k]:
        k += 1
    if k:
        return val + k, Poly._raw(cs[k:])
    return val, poly


def _lift(x):
    if isinstance(x, Laurent):
        return x
    if isinstance(x, Poly):
        return Laurent.from_poly(x)
    if isinstance(x, (int, Fraction)):
        return Laurent.const(x)
    return None


ZERO_LAURENT = Laurent._raw(0, ZERO_POLY)
ONE_LAURENT = Laurent._raw(0, ONE_POLY)


def zpow(k: int) -> Laurent:
    return Laurent.monomial(k)


def linear(x) -> Laurent:
    """The Laurent polynomial ``z - x``."""
    x = as_fraction(x)
    return Laurent.from_poly(Poly._raw(_trim([-x, Fraction(1)])))

"""Text form of Laurent polynomials and matrices.

Terms look like ``-3/2*z^-1 + 1 + 2*z^3``; matrices are rows separated by
``;`` with entries separated by ``,``.  Printing is canonical: increasing
exponent order, coefficients in lowest terms.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Laurent

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*(?P<star>\*)?\s*)?
        (?:(?P<var>z)(?:\s*\^\s*(?:\((?P<pexp>[+-]?\d+)\)|(?P<exp>[+-]?\d+)))?)?
        \s*""",
    re.VERBOSE,
)


def _format_coef(c: Fraction) -> str:
    return str(c)


def format_terms(terms: dict, var: str = "z") -> str:
    items = sorted((k, c) for k, c in terms.items() if c)
    if not items:
        return "0"
    parts = []
    for idx, (k, c) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        if k == 0:
            body = _format_coef(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{_format_coef(a)}*{mono}"
        if idx == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def format_laurent(f: Laurent) -> str:
    return format_terms(f.terms())


def parse_laurent(text: str) -> Laurent:
    """Parse the canonical term syntax (whitespace-insensitive)."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial term at {pos}: {text!r}")
        sign, coef, var = m.group("sign"), m.group("coef"), m.group("var")
        if sign is None and not first:
            raise ValueError(f"missing operator at {pos}: {text!r}")
        if coef is None and var is None:
            raise ValueError(f"empty term at {pos}: {text!r}")
        if m.group("star") and var is None:
            raise ValueError(f"dangling '*' at {pos}: {text!r}")
        c = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            c = -c
        if var is None:
            k = 0
        else:
            e = m.group("pexp") or m.group("exp")
            k = int(e) if e is not None else 1
        terms[k] = terms.get(k, Fraction(0)) + c
        pos = m.end()
        first = False
    return Laurent.from_terms(terms)


def parse_matrix(text: str):
    from .matrix import Mat

    rows = [r for r in text.split(";")]
    if rows and not rows[-1].strip():
        rows = rows[:-1]
    out = [[parse_laurent(e) for e in r.split(",")] for r in rows]
    if not out or any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged or empty matrix")
    return Mat(out)


def format_matrix(rows) -> str:
    return "; ".join(", ".join(format_laurent(_as_laurent(e)) for e in r) for r in rows)


def _as_laurent(e):
    if isinstance(e, Laurent):
        return e
    from .poly import Poly

    if isinstance(e, Poly):
        return Laurent.from_poly(e)
    return Laurent.const(e)

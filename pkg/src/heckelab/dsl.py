"""A small construction language: tokenizer, parser, canonical printer.

::

    script := { stmt ";" }
    stmt   := "let" ID "=" expr | cmd
    cmd    := ("split" | "hn" | "report" | "jumping") expr
            | "degree" JSON | "bounds" { ID "=" value }
            | "rulings" matrix | "incidence" matrix "," matrix "," matrix
            | "selftest" INT
    expr   := term { "(+)" term }
    term   := atom [ "^" INT ]
    atom   := "O(" INT ")" | "(" expr ")" | ID | STRING
            | "std_symplectic(" ints ";" INT ")"
            | "std_orthogonal(" ints ";" INT [ "," "mid=" INT ] ")"
            | NAME "(" [ arg { "," arg } ] ")"
    arg    := [ ID "=" ] value
    value  := expr | number | "inf" | vector | matrix
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected=()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(sorted(set(expected)))
        exp = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"{line}:{col}: {message}{exp}")


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Inf:
    pass


@dataclass(frozen=True)
class Word:
    """A bare identifier used as an option value (e.g. ``ruling=base``)."""

    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Str:
    text: str


@dataclass(frozen=True)
class Vector:
    items: tuple


@dataclass(frozen=True)
class MatrixLit:
    rows: tuple


@dataclass(frozen=True)
class Line:
    a: int


@dataclass(frozen=True)
class Sum:
    items: tuple


@dataclass(frozen=True)
class Power:
    base: object
    k: int


@dataclass(frozen=True)
class StdPair:
    kind: str  # "symplectic" | "orthogonal"
    a: tuple
    ell: int
    mid: Optional[int] = None


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple  # positional values
    kwargs: tuple  # (name, value) pairs in source order


@dataclass(frozen=True)
class Let:
    name: str
    expr: object


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple


@dataclass(frozen=True)
class Json:
    data: object

    def __hash__(self):
        return hash(canonical_json(self.data))

    def __eq__(self, other):
        return isinstance(other, Json) and canonical_json(self.data) == canonical_json(other.data)


@dataclass(frozen=True)
class KV:
    pairs: tuple


@dataclass(frozen=True)
class Script:
    stmts: tuple


EXPR_COMMANDS = ("split", "hn", "report", "jumping")
COMMANDS = EXPR_COMMANDS + ("degree", "bounds", "rulings", "incidence", "selftest")


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+) |
    (?P<nl>\n) |
    (?P<comment>\#[^\n]*) |
    (?P<oplus>\(\+\)) |
    (?P<string>"(?:[^"\\\n]|\\.)*") |
    (?P<int>\d+) |
    (?P<id>[A-Za-z_][A-Za-z_0-9]*) |
    (?P<punct>[()\[\]{},;=^/:-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    line: int
    col: int
    pos: int


def tokenize(text: str) -> list:
    toks = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                toks.append(Tok(kind, s, line, col, pos))
            col += len(s)
        pos = m.end()
    toks.append(Tok("eof", "", line, col, pos))
    return toks


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, expected=()):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"{msg} (found {found})", t.line, t.col, expected)

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("punct", "oplus", "id") and t.text == text

    def expect(self, text: str) -> Tok:
        if not self.at(text):
            self.error("unexpected token", [repr(text)])
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def ident(self) -> str:
        if self.tok.kind != "id":
            self.error("expected identifier", ["identifier"])
        s = self.tok.text
        self.i += 1
        return s

    # numbers --------------------------------------------------------------
    def integer(self) -> int:
        neg = self.accept("-")
        if self.tok.kind != "int":
            self.error("expected integer", ["integer"])
        v = int(self.tok.text)
        self.i += 1
        return -v if neg else v

    def number(self) -> Fraction:
        v = Fraction(self.integer())
        if self.at("/"):
            self.i += 1
            if self.tok.kind != "int":
                self.error("expected denominator", ["integer"])
            d = int(self.tok.text)
            if d == 0:
                self.error("zero denominator")
            self.i += 1
            v = v / d
        return v

    # script ---------------------------------------------------------------
    def script(self) -> Script:
        stmts = []
        while self.tok.kind != "eof":
            stmts.append(self.stmt())
            self.expect(";")
        return Script(tuple(stmts))

    def stmt(self):
        if self.at("let"):
            self.i += 1
            t = self.tok
            name = self.ident()
            if name in COMMANDS or name in _RESERVED:
                raise ParseError(f"reserved word {name!r} cannot be bound", t.line, t.col)
            self.expect("=")
            return Let(name, self.expr())
        if self.tok.kind == "id" and self.tok.text in COMMANDS:
            return self.command()
        self.error("expected a statement", ["'let'"] + [repr(c) for c in COMMANDS])

    def command(self) -> Command:
        name = self.ident()
        if name in EXPR_COMMANDS:
            return Command(name, (self.expr(),))
        if name == "degree":
            return Command(name, (self.json_payload(),))
        if name == "bounds":
            pairs = []
            while self.tok.kind == "id":
                k = self.ident()
                self.expect("=")
                pairs.append((k, self.value()))
                self.accept(",")
            return Command(name, (KV(tuple(pairs)),))
        if name in ("rulings", "incidence"):
            paren = self.accept("(")
            mats = [self.matrix()]
            while self.accept(","):
                mats.append(self.matrix())
            if paren:
                self.expect(")")
            want = 1 if name == "rulings" else 3
            if len(mats) != want:
                self.error(f"{name} takes {want} matrix argument(s)")
            return Command(name, tuple(mats))
        if name == "selftest":
            return Command(name, (Num(Fraction(self.integer())),))
        self.error("unknown command")

    def json_payload(self) -> Json:
        t = self.tok
        if not self.at("{"):
            self.error("expected JSON object", ["'{'"])
        depth, j = 0, self.i
        while True:
            tk = self.toks[j]
            if tk.kind == "eof":
                raise ParseError("unterminated JSON object", t.line, t.col, ["'}'"])
            if tk.kind == "punct" and tk.text == "{":
                depth += 1
            elif tk.kind == "punct" and tk.text == "}":
                depth -= 1
                if depth == 0:
                    break
            j += 1
        raw = self.text[t.pos : self.toks[j].pos + 1]
        try:
            data = json.loads(raw, parse_float=_reject_float)
        except (ValueError, TypeError) as exc:
            raise ParseError(f"invalid JSON payload: {exc}", t.line, t.col) from None
        self.i = j + 1
        return Json(data)

    # expressions ----------------------------------------------------------
    def expr(self):
        items = [self.term()]
        while self.accept("(+)"):
            items.append(self.term())
        return items[0] if len(items) == 1 else Sum(tuple(items))

    def term(self):
        base = self.atom()
        if self.accept("^"):
            k = self.integer()
            if k < 1:
                self.error("exponent must be positive")
            return Power(base, k)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "string":
            self.i += 1
            return Str(json.loads(t.text))
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if t.kind != "id":
            self.error("expected an expression", ["'O('", "'('", "identifier", "string"])
        name = t.text
        if self.peek().kind == "punct" and self.peek().text == "(":
            self.i += 2
            if name == "O":
                a = self.integer()
                self.expect(")")
                return Line(a)
            if name in ("std_symplectic", "std_orthogonal"):
                return self.std_pair(name)
            return self.call(name)
        self.i += 1
        if name == "inf":
            return Inf()
        return Var(name)

    def std_pair(self, name: str) -> StdPair:
        a = []
        if not self.at(";"):
            a.append(self.integer())
            while self.accept(","):
                a.append(self.integer())
        self.expect(";")
        ell = self.integer()
        mid = None
        if self.accept(","):
            if self.ident() != "mid":
                self.i -= 1
                self.error("expected 'mid='", ["'mid'"])
            self.expect("=")
            mid = self.integer()
        self.expect(")")
        kind = "symplectic" if name == "std_symplectic" else "orthogonal"
        return StdPair(kind, tuple(a), ell, mid)

    def call(self, name: str) -> Call:
        args, kwargs = [], []
        if not self.at(")"):
            while True:
                if self.tok.kind == "id" and self.peek().kind == "punct" and self.peek().text == "=":
                    k = self.ident()
                    self.expect("=")
                    kwargs.append((k, self.value()))
                else:
                    if kwargs:
                        self.error("positional argument after keyword argument")
                    args.append(self.value())
                if not self.accept(","):
                    break
        self.expect(")")
        return Call(name, tuple(args), tuple(kwargs))

    def value(self):
        t = self.tok
        if t.kind == "int" or (self.at("-") and self.peek().kind == "int"):
            return Num(self.number())
        if self.at("["):
            return self.bracket()
        if t.kind == "id" and not (self.peek().kind == "punct" and self.peek().text == "(") and t.text != "inf":
            e = self.expr()
            if isinstance(e, Var):
                return Word(e.name) if e.name in _WORDS else e
            return e
        return self.expr()

    def bracket(self):
        self.expect("[")
        if self.at("["):
            rows = [self.vector_body()]
            while self.accept(","):
                rows.append(self.vector_body())
            self.expect("]")
            return MatrixLit(tuple(rows))
        items = self.numbers_until("]")
        self.expect("]")
        return Vector(items)

    def vector_body(self) -> tuple:
        self.expect("[")
        items = self.numbers_until("]")
        self.expect("]")
        return items

    def numbers_until(self, close: str) -> tuple:
        items = []
        if not self.at(close):
            items.append(self.number())
            while self.accept(","):
                items.append(self.number())
        return tuple(items)

    def matrix(self) -> MatrixLit:
        v = self.bracket()
        if isinstance(v, Vector):
            return MatrixLit((v.items,))
        return v


_WORDS = {"base", "other", "sympl", "orth", "symplectic", "orthogonal"}
_RESERVED = _WORDS | {"let", "inf", "O"}


def _reject_float(s):
    raise ValueError(f"non-exact number {s}; use an integer or a \"p/q\" string")


def parse(text: str) -> Script:
    return _Parser(text).script()


def parse_expr(text: str):
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        p.error("trailing input after expression", ["end of input"])
    return e


# ---------------------------------------------------------------------------
# canonical printer


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(", ", ": "))


def _num(v: Fraction) -> str:
    return str(Fraction(v))


def print_value(v) -> str:
    if isinstance(v, Num):
        return _num(v.value)
    if isinstance(v, Inf):
        return "inf"
    if isinstance(v, Word):
        return v.name
    if isinstance(v, Var):
        return v.name
    if isinstance(v, Str):
        return json.dumps(v.text)
    if isinstance(v, Vector):
        return "[" + ", ".join(_num(x) for x in v.items) + "]"
    if isinstance(v, MatrixLit):
        return "[" + ", ".join("[" + ", ".join(_num(x) for x in r) + "]" for r in v.rows) + "]"
    if isinstance(v, Line):
        return f"O({v.a})"
    if isinstance(v, Sum):
        return " (+) ".join(f"({print_value(x)})" if isinstance(x, Sum) else print_value(x) for x in v.items)
    if isinstance(v, Power):
        inner = print_value(v.base)
        if isinstance(v.base, (Sum, Power)):
            inner = f"({inner})"
        return f"{inner}^{v.k}"
    if isinstance(v, StdPair):
        name = "std_symplectic" if v.kind == "symplectic" else "std_orthogonal"
        mid = f", mid={v.mid}" if v.mid is not None else ""
        return f"{name}({', '.join(str(a) for a in v.a)}; {v.ell}{mid})"
    if isinstance(v, Call):
        parts = [print_value(a) for a in v.args] + [f"{k}={print_value(x)}" for k, x in v.kwargs]
        return f"{v.name}({', '.join(parts)})"
    raise TypeError(f"cannot print {v!r}")


def print_stmt(s) -> str:
    if isinstance(s, Let):
        return f"let {s.name} = {print_value(s.expr)};"
    if isinstance(s, Command):
        if s.name == "degree":
            return f"degree {canonical_json(s.args[0].data)};"
        if s.name == "bounds":
            kv = s.args[0].pairs
            return "bounds" + "".join(f" {k}={print_value(v)}" for k, v in kv) + ";"
        if s.name == "selftest":
            return f"selftest {print_value(s.args[0])};"
        return f"{s.name} {', '.join(print_value(a) for a in s.args)};"
    raise TypeError(f"cannot print {s!r}")


def print_canonical(script: Script) -> str:
    return "".join(print_stmt(s) + "\n" for s in script.stmts)


__all__ = [
    "Call",
    "Command",
    "Inf",
    "Json",
    "KV",
    "Let",
    "Line",
    "MatrixLit",
    "Num",
    "ParseError",
    "Power",
    "Script",
    "StdPair",
    "Str",
    "Sum",
    "Var",
    "Vector",
    "Word",
    "canonical_json",
    "parse",
    "parse_expr",
    "print_canonical",
    "print_value",
    "tokenize",
]

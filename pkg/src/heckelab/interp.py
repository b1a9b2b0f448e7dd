"""Interpreter for the construction language: evaluates a parsed script into JSON-ready reports."""

from __future__ import annotations

import json
from fractions import Fraction

from . import dsl
from .bundle import (
    BundleP1,
    birkhoff_split,
    cohomology_dims,
    direct_sum,
    dual,
    line_bundle,
    twist,
)
from .degree import DegreeInput, BoundQuery, bounds_report, codim_sides, degree_formula, hecke_curve_degree
from .exactalg import INF, linverse
from .exactalg.matrix import block_diag
from .exactalg.poly import ZERO_LAURENT
from .hecke import (
    BiFamily,
    DegenerateWitness,
    hecke_down,
    hecke_up_orthogonal,
    hecke_up_symplectic,
    induced_form_orthogonal,
    induced_form_symplectic,
    jumping_lines,
    orthogonal_hecke_family,
    symplectic_hecke_family,
)
from .hn import check_splitting_symmetry, hn_filtration, paired_hn, semistability_report
from .isogr import QuadSpace, incidence, isotropic_lines_dim2, rulings_ig24
from .pairing import ORTHOGONAL, SYMPLECTIC, KindMismatch, PairedBundle, canonical_kind, standard_pair, validate_pair
from .selftest import run_all

SCHEMA = 1


class ExecError(Exception):
    def __init__(self, message: str, index: int, stmt: str):
        self.message = message
        self.index = index
        self.stmt = stmt
        super().__init__(f"statement {index + 1} ({stmt}): {message}")


class _TypeErr(Exception):
    pass


def jsonable(obj):
    """Exact rationals become "p/q" strings; containers are converted recursively."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if obj is INF:
        return "inf"
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"not serializable: {type(obj).__name__}")


def dumps(reports) -> str:
    return json.dumps(jsonable(reports), indent=2, ensure_ascii=True) + "\n"


# ---------------------------------------------------------------------------
# static checks


def _free_vars(node, out: list) -> None:
    if isinstance(node, dsl.Var):
        out.append(node.name)
    elif isinstance(node, dsl.Sum):
        for x in node.items:
            _free_vars(x, out)
    elif isinstance(node, dsl.Power):
        _free_vars(node.base, out)
    elif isinstance(node, dsl.Call):
        for x in node.args:
            _free_vars(x, out)
        for _, x in node.kwargs:
            _free_vars(x, out)


def check_bindings(script: dsl.Script) -> None:
    bound: set = set()
    for i, s in enumerate(script.stmts):
        names: list = []
        if isinstance(s, dsl.Let):
            _free_vars(s.expr, names)
        else:
            for a in s.args:
                _free_vars(a, names)
        for nm in names:
            if nm not in bound:
                raise ExecError(f"identifier {nm!r} used before it is bound", i, dsl.print_stmt(s))
        if isinstance(s, dsl.Let):
            bound.add(s.name)


# ---------------------------------------------------------------------------
# evaluation


def _kind_name(v) -> str:
    return {
        BundleP1: "bundle",
        PairedBundle: "pair",
        BiFamily: "family",
        DegenerateWitness: "witness",
    }.get(type(v), type(v).__name__)


class Interpreter:
    def __init__(self, seed: int = 0):
        self.seed = seed
        self.env: dict = {}

    # values -------------------------------------------------------------
    def value(self, node):
        if isinstance(node, dsl.Num):
            return node.value
        if isinstance(node, dsl.Inf):
            return INF
        if isinstance(node, dsl.Word):
            return node.name
        if isinstance(node, dsl.Vector):
            return list(node.items)
        if isinstance(node, dsl.MatrixLit):
            return [list(r) for r in node.rows]
        if isinstance(node, dsl.Str):
            return node.text
        return self.expr(node)

    def expr(self, node):
        if isinstance(node, dsl.Var):
            return self.env[node.name]
        if isinstance(node, dsl.Line):
            return line_bundle(node.a)
        if isinstance(node, dsl.StdPair):
            return standard_pair(node.kind, list(node.a), node.ell, node.mid or 0)
        if isinstance(node, dsl.Str):
            return BundleP1.from_text(node.text)
        if isinstance(node, dsl.Sum):
            acc = self.expr(node.items[0])
            for x in node.items[1:]:
                acc = _plus(acc, self.expr(x))
            return acc
        if isinstance(node, dsl.Power):
            b = self.expr(node.base)
            acc = b
            for _ in range(node.k - 1):
                acc = _plus(acc, b)
            return acc
        if isinstance(node, dsl.Call):
            fn = _CONSTRUCTORS.get(node.name)
            if fn is None:
                raise _TypeErr(f"unknown constructor {node.name!r}")
            args = [self.value(a) for a in node.args]
            kwargs = {k: self.value(v) for k, v in node.kwargs}
            return fn(*args, **kwargs)
        raise _TypeErr(f"not an expression: {dsl.print_value(node)}")

    # statements ---------------------------------------------------------
    def run(self, script: dsl.Script) -> list:
        check_bindings(script)
        reports = []
        for i, s in enumerate(script.stmts):
            text = dsl.print_stmt(s)
            try:
                if isinstance(s, dsl.Let):
                    self.env[s.name] = self.expr(s.expr)
                    continue
                result = _COMMANDS[s.name](self, *s.args)
            except ExecError:
                raise
            except (_TypeErr, ValueError, ArithmeticError, TypeError, KeyError) as exc:
                raise ExecError(f"{type(exc).__name__}: {exc}", i, text) from exc
            reports.append({"schema": SCHEMA, "index": i, "command": text, "result": jsonable(result)})
        return reports


def _plus(a, b):
    if isinstance(a, BundleP1) and isinstance(b, BundleP1):
        return direct_sum(a, b)
    if isinstance(a, PairedBundle) and isinstance(b, PairedBundle):
        if a.kind != b.kind or a.ell != b.ell:
            raise KindMismatch("orthogonal sum needs the same kind and line bundle")
        return PairedBundle(direct_sum(a.V, b.V), a.kind, a.ell, block_diag(a.omega0, b.omega0, ZERO_LAURENT))
    raise _TypeErr(f"cannot add {_kind_name(a)} and {_kind_name(b)}")


def _need(v, *types, what="argument"):
    if not isinstance(v, types):
        names = " or ".join(t.__name__ for t in types)
        raise _TypeErr(f"{what} must be {names}, got {_kind_name(v)}")
    return v


def _int(v, what="argument") -> int:
    if not isinstance(v, Fraction) or v.denominator != 1:
        raise _TypeErr(f"{what} must be an integer")
    return int(v)


# constructors ------------------------------------------------------------


def _c_twist(v, k):
    k = _int(k, "twist amount")
    if isinstance(v, PairedBundle):
        return PairedBundle(twist(v.V, k), v.kind, v.ell + 2 * k, v.omega0)
    return twist(_need(v, BundleP1), k)


def _c_dual(v):
    if isinstance(v, PairedBundle):
        return PairedBundle(dual(v.V), v.kind, -v.ell, linverse(v.omega0))
    return dual(_need(v, BundleP1))


def _c_bundle(text):
    return BundleP1.from_text(_need(text, str, what="bundle text"))


def _c_pair(t_text, form_text, kind, ell):
    from .exactalg import parse_matrix

    p = PairedBundle(BundleP1.from_text(t_text), canonical_kind(kind), _int(ell, "ell"), parse_matrix(form_text))
    rep = validate_pair(p)
    if not rep.ok:
        raise ValueError(f"not a valid pair: failed {', '.join(rep.failures())}")
    return p


def _c_hecke_down(v, x, theta):
    if isinstance(v, PairedBundle):
        v = v.V
    return hecke_down(_need(v, BundleP1), x, theta)[0]


def _c_hecke_sympl(p, x, theta, lam=None, t=None):
    _need(p, PairedBundle)
    if lam is not None and t is not None:
        raise _TypeErr("give at most one of lam= and t=")
    if lam is not None:
        return hecke_up_symplectic(p, x, theta, lam)
    if t is not None:
        return symplectic_hecke_family(p, x, theta).member(t)
    return induced_form_symplectic(p, x, theta).down.target


def _c_hecke_orth(p, x, Theta, ruling=None, t=None, Lambda=None):
    _need(p, PairedBundle)
    if Lambda is not None:
        if ruling is not None or t is not None:
            raise _TypeErr("Lambda= excludes ruling= and t=")
        return hecke_up_orthogonal(p, x, Theta, Lambda)
    if ruling is None and t is None:
        return induced_form_orthogonal(p, x, Theta).down.target
    return orthogonal_hecke_family(p, x, Theta, ruling or "base").member(Fraction(0) if t is None else t)


def _c_hecke_up(p, x, theta, lam):
    _need(p, PairedBundle)
    if p.kind == SYMPLECTIC:
        return hecke_up_symplectic(p, x, theta, lam)
    return hecke_up_orthogonal(p, x, theta, lam)


def _c_family_sympl(p, x, theta):
    return symplectic_hecke_family(_need(p, PairedBundle), x, theta)


def _c_family_orth(p, x, Theta, ruling="base"):
    return orthogonal_hecke_family(_need(p, PairedBundle), x, Theta, ruling)


def _c_member(f, t):
    return _need(f, BiFamily).member(t)


def _c_restrict(f, z):
    return _need(f, BiFamily).restrict_z(z)


_CONSTRUCTORS = {
    "twist": _c_twist,
    "dual": _c_dual,
    "bundle": _c_bundle,
    "pair": _c_pair,
    "hecke_down": _c_hecke_down,
    "hecke_sympl": _c_hecke_sympl,
    "hecke_orth": _c_hecke_orth,
    "hecke_up": _c_hecke_up,
    "family_sympl": _c_family_sympl,
    "family_orth": _c_family_orth,
    "member": _c_member,
    "restrict": _c_restrict,
}


# commands ----------------------------------------------------------------


def _bundle_of(v) -> BundleP1:
    if isinstance(v, PairedBundle):
        return v.V
    return _need(v, BundleP1)


def _split_json(v: BundleP1) -> dict:
    st = birkhoff_split(v).splitting
    return {"rank": v.rank, "degree": v.degree, "splitting": st.to_json()}


def cmd_split(it: Interpreter, e):
    return _split_json(_bundle_of(it.expr(e)))


def cmd_hn(it: Interpreter, e):
    v = it.expr(e)
    if isinstance(v, PairedBundle):
        return paired_hn(v).to_json()
    f = hn_filtration(_need(v, BundleP1))
    return {
        "splitting": f.splitting.to_json(),
        "ranks": f.ranks,
        "degrees": f.degrees,
        "slopes": list(f.slopes),
    }


def cmd_report(it: Interpreter, e):
    v = it.expr(e)
    if isinstance(v, DegenerateWitness):
        return {"type": "witness", "witness": v.to_json()}
    if isinstance(v, BiFamily):
        return {
            "type": "family",
            "n": v.n,
            "k": v.k,
            "kind": v.kind,
            "ell": v.ell,
            "point": v.point,
            "cocycle_ok": v.cocycle_ok(),
            "marked_member": birkhoff_split(v.member_bundle(v.base_t)).splitting.to_json(),
        }
    if isinstance(v, PairedBundle):
        hn = paired_hn(v)
        sym = check_splitting_symmetry(v)
        return {
            "type": "pair",
            "kind": v.kind,
            "n": v.n,
            "ell": v.ell,
            "degree": v.V.degree,
            "splitting": hn.splitting.to_json(),
            "validation": validate_pair(v).to_json(),
            "symmetry": {"ok": sym.ok, "index": sym.index},
            "semistability": semistability_report(v, hn=hn).to_json(),
            "hn": hn.to_json(),
        }
    v = _need(v, BundleP1)
    h0, h1 = cohomology_dims(v)
    out = {"type": "bundle"}
    out.update(_split_json(v))
    out.update({"h0": h0, "h1": h1})
    return out


def cmd_jumping(it: Interpreter, e):
    f = _need(it.expr(e), BiFamily, what="jumping needs a family")
    rep = jumping_lines(f)
    out = rep.to_json()
    if f.n:
        out["curve_degree"] = hecke_curve_degree(f.n, rep.total_contribution)
    return out


def cmd_degree(it: Interpreter, payload):
    d = DegreeInput.from_json(payload.data)
    return {"n": d.n, "ell": d.ell, "m": d.m, "degree": degree_formula(d)}


_BOUND_KEYS = {"g", "n", "delta", "kind", "r", "d", "ell"}


def cmd_bounds(it: Interpreter, kv):
    vals = {}
    for k, v in kv.pairs:
        if k not in _BOUND_KEYS:
            raise _TypeErr(f"unknown bounds key {k!r}")
        vals[k] = it.value(v)
    for k in ("g", "n", "delta"):
        if k not in vals:
            raise _TypeErr(f"bounds needs {k}=")
    g, n, delta = (_int(vals[k], k) for k in ("g", "n", "delta"))
    kind = canonical_kind(vals.get("kind", "sympl"))
    out = bounds_report(g, n, delta, kind)
    if "r" in vals:
        q = BoundQuery(g, n, delta, _int(vals["r"], "r"), vals.get("d", Fraction(0)), _int(vals.get("ell", Fraction(0)), "ell"), kind)
        lhs, rhs = codim_sides(q)
        out["codim"] = {"r": q.r, "d": q.d, "ell": q.ell, "lhs": lhs, "rhs": rhs, "positive": lhs < rhs}
    return out


def _plane_json(rows) -> list:
    return [list(r) for r in rows]


def cmd_rulings(it: Interpreter, m):
    q = QuadSpace(it.value(m), ORTHOGONAL)
    if q.dim == 2:
        return {"dim": 2, "isotropic_lines": [list(v) for v in isotropic_lines_dim2(q)]}
    r = rulings_ig24(q)
    fam = lambda f: {"p": _plane_json(f.p), "q": _plane_json(f.q), "sign": f.sign}  # noqa: E731
    return {"dim": 4, "A": fam(r.family_a), "B": fam(r.family_b)}


def cmd_incidence(it: Interpreter, m, w1, w2):
    q = QuadSpace(it.value(m), ORTHOGONAL)
    a, b = it.value(w1), it.value(w2)
    out = {"dim": incidence(q, a, b)}
    if q.dim == 4 and len(a) == 2 and len(b) == 2:
        r = rulings_ig24(q)
        out["classes"] = [r.classify(a), r.classify(b)]
    return out


def cmd_selftest(it: Interpreter, n):
    cases = _int(it.value(n), "case count")
    suites = run_all(cases, it.seed)
    return {"seed": it.seed, "suites": [s.to_json() for s in suites], "ok": all(s.ok for s in suites)}


_COMMANDS = {
    "split": cmd_split,
    "hn": cmd_hn,
    "report": cmd_report,
    "jumping": cmd_jumping,
    "degree": cmd_degree,
    "bounds": cmd_bounds,
    "rulings": cmd_rulings,
    "incidence": cmd_incidence,
    "selftest": cmd_selftest,
}


def execute(script: dsl.Script, seed: int = 0) -> list:
    return Interpreter(seed).run(script)


def run_text(text: str, seed: int = 0) -> list:
    return execute(dsl.parse(text), seed)


__all__ = ["ExecError", "Interpreter", "SCHEMA", "check_bindings", "dumps", "execute", "jsonable", "run_text"]

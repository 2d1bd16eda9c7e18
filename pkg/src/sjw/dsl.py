"""A small expression language naming every construction.

Grammar (whitespace-insensitive)::

    expr  := ident "(" [expr ("," expr)*] ")" | integer | range | string
    range := integer ".." integer
    string := '"' chars '"'

Canonical text (``to_text``) has no whitespace; it doubles as the cache
key.  Ranges are only legal inside sweep templates, which must contain
exactly one.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple, Union

from . import constructions as C
from .superalgebra import AlgebraError, SuperAlgebra, from_json

Span = Tuple[int, int]


class DSLError(ValueError):
    """Parse or evaluation error carrying a source span (0-based offsets)."""

    def __init__(self, message: str, src: str = "", span: Optional[Span] = None, path: str = ""):
        self.message = message
        self.src = src
        self.span = span
        self.path = path
        self.line, self.col = _line_col(src, span[0]) if span else (None, None)
        where = " at line %d, column %d" % (self.line, self.col) if span else ""
        via = " (in %s)" % path if path else ""
        super().__init__("%s%s%s" % (message, where, via))


def _line_col(src: str, pos: int) -> Tuple[int, int]:
    line = src.count("\n", 0, pos) + 1
    col = pos - (src.rfind("\n", 0, pos) + 1) + 1
    return line, col


# --- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class Int:
    value: int
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Range:
    lo: int
    hi: int
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Str:
    value: str
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple["Expr", ...]
    span: Span = field(default=(0, 0), compare=False)
    name_span: Span = field(default=(0, 0), compare=False)


Expr = Union[Int, Range, Str, Call]


# --- identifiers -----------------------------------------------------------

def _kantor(a):
    return C.kantor_double(a)


def _file(path: str) -> SuperAlgebra:
    with open(path) as fh:
        text = fh.read()
    return from_json(text, name="file(%s)" % json.dumps(path))


def _hamiltonian_super(n: int, m: int, big_n: int) -> SuperAlgebra:
    """``H_n (x) G(m)`` as a Lie superalgebra modulo its center (the constants), truncated at degree N."""
    h = C.hamiltonian_window(n, big_n)
    a = C.tensor_poisson(h, C.poisson_grassmann(m)) if m else h
    return C.central_quotient(C.lie_view(a), [a.unit]).replace(name="hamiltonian_super(%d,%d,%d)" % (n, m, big_n))


def _jordan(a):
    from .jordancyclic import as_jordan
    return as_jordan(a)


# name -> (argument kinds, builder)
IDENTS: Dict[str, Tuple[Tuple[str, ...], Callable]] = {
    "field": ((), lambda: C.field_algebra().tagged("jordan")),
    "grassmann": (("int",), C.grassmann),
    "poisson_grassmann": (("int",), C.poisson_grassmann),
    "truncated_poly": (("int",), C.truncated_poly),
    "laurent_window": (("int",), C.laurent_window),
    "hamiltonian_window": (("int", "int"), C.hamiltonian_window),
    "hamiltonian_super": (("int", "int", "int"), _hamiltonian_super),
    "tensor": (("alg", "alg"), C.tensor_poisson),
    "kantor": (("alg",), _kantor),
    "vector_type": (("alg",), C.vector_type_bracket),
    "jordan_ext": (("alg", "int"), C.jordan_ext),
    "contact_ext": (("alg", "int"), C.contact_ext),
    "contact_to_jordan": (("alg",), C.contact_to_jordan),
    "rtkk": (("alg",), C.rtkk),
    "sl2": ((), C.sl2),
    "lie": (("alg",), C.lie_view),
    "jordan": (("alg",), _jordan),
    "file": (("str",), _file),
}


# --- parser ----------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<range>-?\d+\s*\.\.\s*-?\d+)
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"(?:[^"\\]|\\.)*")
  | (?P<punct>[(),])
""", re.VERBOSE)


def _tokenize(src: str) -> List[Tuple[str, str, int, int]]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise DSLError("unexpected character %r" % src[pos], src, (pos, pos + 1))
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), m.start(), m.end()))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, kind=None, text=None):
        t = self.peek()
        if t is None:
            raise DSLError("unexpected end of input", self.src, (len(self.src), len(self.src)))
        if (kind and t[0] != kind) or (text and t[1] != text):
            want = text or kind
            raise DSLError("expected %r, found %r" % (want, t[1]), self.src, (t[2], t[3]))
        self.i += 1
        return t

    def expr(self) -> Expr:
        t = self.peek()
        if t is None:
            raise DSLError("empty expression", self.src, (len(self.src), len(self.src)))
        kind, text, a, b = t
        if kind == "int":
            self.i += 1
            return Int(int(text), (a, b))
        if kind == "range":
            self.i += 1
            lo, hi = (int(x) for x in re.split(r"\s*\.\.\s*", text))
            return Range(lo, hi, (a, b))
        if kind == "str":
            self.i += 1
            return Str(json.loads(text), (a, b))
        if kind == "ident":
            self.i += 1
            if text not in IDENTS:
                raise DSLError("unknown identifier %r" % text, self.src, (a, b))
            self.take("punct", "(")
            args: List[Expr] = []
            if self.peek() is not None and self.peek()[1] != ")":
                args.append(self.expr())
                while self.peek() is not None and self.peek()[1] == ",":
                    self.i += 1
                    args.append(self.expr())
            close = self.take("punct", ")")
            want = IDENTS[text][0]
            if len(args) != len(want):
                raise DSLError("%s takes %d argument(s), got %d" % (text, len(want), len(args)),
                               self.src, (a, close[3]))
            return Call(text, tuple(args), (a, close[3]), (a, b))
        raise DSLError("unexpected %r" % text, self.src, (a, b))


def parse(src: str) -> Expr:
    p = _Parser(src)
    e = p.expr()
    t = p.peek()
    if t is not None:
        raise DSLError("trailing input %r" % t[1], src, (t[2], t[3]))
    return e


def to_text(e: Expr) -> str:
    """Canonical text (no whitespace)."""
    if isinstance(e, Int):
        return str(e.value)
    if isinstance(e, Range):
        return "%d..%d" % (e.lo, e.hi)
    if isinstance(e, Str):
        return json.dumps(e.value)
    return "%s(%s)" % (e.name, ",".join(to_text(a) for a in e.args))


def canonical(src: str) -> str:
    return to_text(parse(src))


# --- templates -------------------------------------------------------------

def _ranges(e: Expr) -> List[Range]:
    if isinstance(e, Range):
        return [e]
    if isinstance(e, Call):
        return [r for a in e.args for r in _ranges(a)]
    return []


def _substitute(e: Expr, value: int) -> Expr:
    if isinstance(e, Range):
        return Int(value, e.span)
    if isinstance(e, Call):
        return Call(e.name, tuple(_substitute(a, value) for a in e.args), e.span, e.name_span)
    return e


def expand_template(src: str) -> List[Tuple[int, Expr]]:
    """``[(value, expr)]`` for the single range in a sweep template; an empty range gives ``[]``."""
    e = parse(src)
    rs = _ranges(e)
    if len(rs) != 1:
        raise DSLError("a sweep template needs exactly one range a..b (found %d)" % len(rs), src, e.span)
    r = rs[0]
    return [(v, _substitute(e, v)) for v in range(r.lo, r.hi + 1)]


# --- evaluation ------------------------------------------------------------

_CACHE: Dict[str, SuperAlgebra] = {}


def evaluate(e: Expr, src: str = "", path: str = "") -> SuperAlgebra:
    """Build the algebra named by ``e``; identical text gives the identical object."""
    key = to_text(e)
    if key in _CACHE:
        return _CACHE[key]
    out = _eval(e, src, path)
    if not isinstance(out, SuperAlgebra):
        raise DSLError("expression does not denote an algebra", src, e.span, path)
    _CACHE[key] = out
    return out


def _eval(e: Expr, src: str, path: str):
    if isinstance(e, Int):
        return e.value
    if isinstance(e, Str):
        return e.value
    if isinstance(e, Range):
        raise DSLError("ranges are only allowed in sweep templates", src, e.span, path)
    kinds, fn = IDENTS[e.name]
    here = "%s/%s" % (path, e.name) if path else e.name
    vals = []
    for k, a in zip(kinds, e.args):
        if k == "alg":
            if not isinstance(a, Call):
                raise DSLError("%s expects an algebra argument" % e.name, src, a.span, here)
            vals.append(evaluate(a, src, here))
        elif k == "int":
            if not isinstance(a, Int):
                raise DSLError("%s expects an integer argument" % e.name, src, a.span, here)
            vals.append(a.value)
        else:
            if not isinstance(a, Str):
                raise DSLError("%s expects a quoted string" % e.name, src, a.span, here)
            vals.append(a.value)
    try:
        return fn(*vals)
    except (AlgebraError, OSError, ValueError, KeyError) as exc:
        if isinstance(exc, DSLError):
            raise
        raise DSLError(str(exc), src, e.span, here) from exc


def evaluate_text(src: str) -> SuperAlgebra:
    return evaluate(parse(src), src)

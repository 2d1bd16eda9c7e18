"""Super (Z/2-graded) algebras given by structure constants.

Vectors are sparse dicts ``basis index -> scalar``.  Koszul signs are
computed from stored parities at evaluation time; structure constants never
absorb them.  Operators act on the right of vectors: ``x R(a) = x a``.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactq import Scalar, SolutionSpace, q, qstr, span

Vec = Dict[int, Scalar]

KINDS = ("associative-commutative", "jordan", "lie", "poisson", "contact", "jordan-bracket", "unverified")

EXHAUSTIVE_BUDGET = 20000
RANDOM_TRIALS = 2
RANDOM_BOUND = 2 ** 20


class AlgebraError(ValueError):
    pass


class OutOfWindow(ArithmeticError):
    """Raised when a product of basis elements leaves a truncation window."""

    def __init__(self, i, j, which="product"):
        super().__init__("%s of basis elements %d and %d leaves the window" % (which, i, j))
        self.pair = (i, j)
        self.which = which


def sign(e: int) -> int:
    return -1 if e & 1 else 1


# --- vector helpers -------------------------------------------------------

def vadd(x: Vec, y: Vec, c: Scalar = 1) -> Vec:
    out = dict(x)
    for k, v in y.items():
        nv = out.get(k, 0) + c * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def vscale(x: Vec, c: Scalar) -> Vec:
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


def vsum(terms: Iterable[Tuple[Scalar, Vec]]) -> Vec:
    out: Vec = {}
    for c, v in terms:
        if not c:
            continue
        for k, x in v.items():
            nv = out.get(k, 0) + c * x
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


# --- basis ----------------------------------------------------------------

@dataclass(frozen=True)
class BasisElement:
    name: str
    parity: int
    degree: Optional[int] = None


class SuperBasis:
    __slots__ = ("elements", "_index", "parities", "degrees")

    def __init__(self, elements: Sequence[BasisElement]):
        elements = tuple(elements)
        names = [e.name for e in elements]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise AlgebraError("duplicate basis name %r" % dup)
        has_deg = [e.degree is not None for e in elements]
        if any(has_deg) and not all(has_deg):
            raise AlgebraError("degrees must be given for all basis elements or none")
        for e in elements:
            if e.parity not in (0, 1):
                raise AlgebraError("parity of %r must be 0 or 1" % e.name)
        self.elements = elements
        self._index = {n: i for i, n in enumerate(names)}
        self.parities = tuple(e.parity for e in elements)
        self.degrees = tuple(e.degree for e in elements) if elements and all(has_deg) else None

    @property
    def dim(self) -> int:
        return len(self.elements)

    @property
    def names(self) -> List[str]:
        return [e.name for e in self.elements]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AlgebraError("no basis element named %r" % name) from None

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, SuperBasis) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)


# --- bilinear maps --------------------------------------------------------

class BilinearMap:
    """Structure constants ``(i, j) -> {k: c}``.  Pairs in ``undefined`` raise OutOfWindow."""

    __slots__ = ("dim", "table", "undefined", "_by_left", "which")

    def __init__(self, dim: int, table: Mapping[Tuple[int, int], Mapping[int, Scalar]],
                 undefined: Iterable[Tuple[int, int]] = (), which: str = "product"):
        self.dim = dim
        clean = {}
        for (i, j), out in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise AlgebraError("pair (%d, %d) out of range" % (i, j))
            row = {}
            for k, c in out.items():
                if not 0 <= k < dim:
                    raise AlgebraError("output index %d out of range" % k)
                c = q(c)
                if c:
                    row[k] = c
            if row:
                clean[(i, j)] = row
        self.table = clean
        self.undefined: FrozenSet[Tuple[int, int]] = frozenset(undefined)
        if any(p in self.undefined for p in clean):
            raise AlgebraError("pair both defined and undefined")
        by_left: Dict[int, Dict[int, Dict[int, Scalar]]] = {}
        for (i, j), row in clean.items():
            by_left.setdefault(i, {})[j] = row
        self._by_left = by_left
        self.which = which

    @classmethod
    def from_entries(cls, dim: int, entries: Iterable[Tuple[int, int, int, Scalar]], undefined=(), which="product"):
        table: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
        for i, j, k, c in entries:
            row = table.setdefault((i, j), {})
            row[k] = row.get(k, 0) + q(c)
        return cls(dim, table, undefined, which)

    def get(self, i: int, j: int) -> Dict[int, Scalar]:
        if (i, j) in self.undefined:
            raise OutOfWindow(i, j, self.which)
        return self.table.get((i, j), {})

    def defined(self, i: int, j: int) -> bool:
        return (i, j) not in self.undefined

    def apply(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Vec:
        out: Vec = {}
        if not x or not y:
            return out
        und = self.undefined
        if len(x) * len(y) > 4 * len(self.table) and not und:
            for (i, j), row in self.table.items():
                a = x.get(i)
                if a is None:
                    continue
                b = y.get(j)
                if b is None:
                    continue
                ab = a * b
                for k, c in row.items():
                    nv = out.get(k, 0) + ab * c
                    if nv:
                        out[k] = nv
                    else:
                        del out[k]
            return out
        for i, a in x.items():
            left = self._by_left.get(i)
            for j, b in y.items():
                if und and (i, j) in und:
                    raise OutOfWindow(i, j, self.which)
                if left is None:
                    continue
                row = left.get(j)
                if row is None:
                    continue
                ab = a * b
                for k, c in row.items():
                    nv = out.get(k, 0) + ab * c
                    if nv:
                        out[k] = nv
                    else:
                        del out[k]
        return out

    def entries(self) -> List[Tuple[int, int, int, Scalar]]:
        return [(i, j, k, c) for (i, j) in sorted(self.table) for k, c in sorted(self.table[(i, j)].items())]

    def nnz(self) -> int:
        return sum(len(r) for r in self.table.values())

    def with_constant(self, i: int, j: int, k: int, c: Scalar) -> "BilinearMap":
        table = {p: dict(r) for p, r in self.table.items()}
        row = table.setdefault((i, j), {})
        c = q(c)
        if c:
            row[k] = c
        else:
            row.pop(k, None)
        return BilinearMap(self.dim, table, self.undefined, self.which)

    def __eq__(self, other):
        return (isinstance(other, BilinearMap) and self.dim == other.dim
                and self.table == other.table and self.undefined == other.undefined)


# --- algebras -------------------------------------------------------------

class SuperAlgebra:
    """Finite-dimensional superalgebra with optional bracket and unit.

    ``meta`` holds construction-specific data (Kantor base algebra, TKK
    components, Grassmann factor layout, grading data).  Treat instances as
    immutable.
    """

    def __init__(self, basis: SuperBasis, product: BilinearMap, unit: Optional[int] = None,
                 bracket: Optional[BilinearMap] = None, kinds: Iterable[str] = (),
                 name: str = "", meta: Optional[dict] = None, validate: bool = True):
        if product.dim != basis.dim or (bracket is not None and bracket.dim != basis.dim):
            raise AlgebraError("structure constants do not match basis size")
        kinds = frozenset(kinds)
        bad = kinds - set(KINDS)
        if bad:
            raise AlgebraError("unknown kind tag(s) %s" % sorted(bad))
        self.basis = basis
        self.product = product
        self.bracket = bracket
        self.unit = unit
        self.kinds = kinds
        self.name = name
        self.meta = dict(meta or {})
        if validate:
            self._validate()

    def _validate(self):
        par = self.basis.parities
        for m in (self.product, self.bracket):
            if m is None:
                continue
            for (i, j), row in m.table.items():
                for k in row:
                    if par[k] != (par[i] + par[j]) % 2:
                        raise AlgebraError("%s constant (%s, %s) -> %s is not parity-homogeneous" % (
                            m.which, self.basis.elements[i].name, self.basis.elements[j].name,
                            self.basis.elements[k].name))
        degs = self.basis.degrees
        if degs is not None:
            for m, key in ((self.product, "product_shift"), (self.bracket, "bracket_shift")):
                shift = self.meta.get(key)
                if m is None or shift is None:
                    continue
                for (i, j), row in m.table.items():
                    for k in row:
                        if degs[k] != degs[i] + degs[j] + shift:
                            raise AlgebraError("%s constant breaks the declared degree shift %d" % (m.which, shift))
        if self.unit is not None and not 0 <= self.unit < self.dim:
            raise AlgebraError("unit index out of range")

    # basic data
    @property
    def dim(self) -> int:
        return self.basis.dim

    def parity(self, i: int) -> int:
        return self.basis.parities[i]

    @property
    def parities(self):
        return self.basis.parities

    def e(self, i) -> Vec:
        if isinstance(i, str):
            i = self.basis.index(i)
        return {i: 1}

    def vec(self, spec: Mapping) -> Vec:
        """Vector from ``{name or index: scalar}``."""
        out = {}
        for k, c in spec.items():
            if isinstance(k, str):
                k = self.basis.index(k)
            c = q(c)
            if c:
                out[k] = c
        return out

    def one(self) -> Vec:
        if self.unit is None:
            raise AlgebraError("algebra %s has no unit" % (self.name or "?"))
        return {self.unit: 1}

    def vparity(self, x: Mapping[int, Scalar]) -> int:
        ps = {self.basis.parities[i] for i, c in x.items() if c}
        if len(ps) > 1:
            raise AlgebraError("vector is not parity-homogeneous")
        return ps.pop() if ps else 0

    def mul(self, x: Vec, y: Vec) -> Vec:
        return self.product.apply(x, y)

    def br(self, x: Vec, y: Vec) -> Vec:
        if self.bracket is None:
            raise AlgebraError("algebra %s carries no bracket" % (self.name or "?"))
        return self.bracket.apply(x, y)

    def multiply(self, x: Vec, y: Vec, which: str = "product") -> Vec:
        for v in (x, y):
            if any(not 0 <= k < self.dim for k in v):
                raise AlgebraError("vector index outside basis of size %d" % self.dim)
        if which == "product":
            return self.mul(x, y)
        if which == "bracket":
            return self.br(x, y)
        raise AlgebraError("which must be 'product' or 'bracket'")

    def op(self, which: str) -> Callable[[Vec, Vec], Vec]:
        if which == "bracket":
            if self.bracket is None:
                raise AlgebraError("algebra %s carries no bracket" % (self.name or "?"))
            return self.bracket.apply
        return self.product.apply

    def deriv(self, x: Vec) -> Vec:
        """``x' = [x, 1]``."""
        return self.br(x, self.one())

    def windowed(self) -> bool:
        return bool(self.product.undefined or (self.bracket is not None and self.bracket.undefined))

    def fmt(self, x: Mapping[int, Scalar]) -> str:
        if not x:
            return "0"
        parts = []
        for k in sorted(x):
            parts.append("%s*%s" % (qstr(x[k]), self.basis.elements[k].name))
        return " + ".join(parts)

    def replace(self, **kw) -> "SuperAlgebra":
        args = dict(basis=self.basis, product=self.product, unit=self.unit, bracket=self.bracket,
                    kinds=self.kinds, name=self.name, meta=self.meta)
        args.update(kw)
        return SuperAlgebra(**args)

    def tagged(self, *kinds: str) -> "SuperAlgebra":
        return self.replace(kinds=self.kinds | set(kinds))

    def structurally_equal(self, other: "SuperAlgebra") -> bool:
        return (self.basis == other.basis and self.product == other.product and self.unit == other.unit
                and self.bracket == other.bracket)

    def __repr__(self):
        return "SuperAlgebra(%s, dim=%d)" % (self.name or "?", self.dim)


# --- identity checking ----------------------------------------------------

@dataclass
class CheckReport:
    identity: str
    passed: bool
    witness: Optional[Tuple[str, ...]] = None
    clause: Optional[str] = None
    residual: Dict[str, str] = field(default_factory=dict)
    violations: int = 0
    checked: int = 0
    skipped: int = 0
    method: str = "exhaustive"

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "identity": self.identity, "pass": self.passed,
            "witness": list(self.witness) if self.witness else None,
            "clause": self.clause, "residual": self.residual, "violations": self.violations,
            "checked": self.checked, "skipped": self.skipped, "method": self.method,
        }


Clause = Tuple[str, int, Callable]


def _residual_dict(a: SuperAlgebra, r: Vec) -> Dict[str, str]:
    return {a.basis.elements[k].name: qstr(v) for k, v in sorted(r.items())}


def _random_vec(rng: random.Random, idx: Sequence[int]) -> Vec:
    out = {}
    for i in idx:
        c = rng.randint(-RANDOM_BOUND, RANDOM_BOUND)
        if c:
            out[i] = c
    return out


def run_clauses(a: SuperAlgebra, identity: str, clauses: Sequence[Clause], mode: str = "auto",
                seed: int = 0, stop_at_first: bool = False) -> CheckReport:
    """Evaluate multilinear clauses on homogeneous inputs.

    Each clause is ``(label, arity, fn)`` where ``fn(a, vectors, parities)``
    returns the residual vector.  Exhaustive mode scans all basis tuples;
    random mode evaluates at seeded random homogeneous vectors for every
    parity pattern (an exact Schwartz-Zippel test) and localizes any
    failure to a basis tuple by multilinearity.
    """
    n = a.dim
    rep = CheckReport(identity, True)
    par = a.parities
    by_par = [[i for i in range(n) if par[i] == p] for p in (0, 1)]
    windowed = a.windowed()
    for label, arity, fn in clauses:
        big = n ** arity > EXHAUSTIVE_BUDGET
        use_random = mode == "random" or (mode == "auto" and big and not windowed)
        if use_random and windowed:
            raise AlgebraError("random identity testing is unavailable on windowed algebras")
        if not use_random:
            if mode == "sample" or (mode == "auto" and big):
                # windowed and too large to scan: seeded sample of basis tuples
                rep.method = "sampled"
                rng = random.Random("%s|%s|%d" % (identity, label, seed))
                tuples = [tuple(rng.randrange(n) for _ in range(arity)) for _ in range(EXHAUSTIVE_BUDGET)]
            else:
                tuples = itertools.product(range(n), repeat=arity)
            for tup in tuples:
                vs = [{i: 1} for i in tup]
                ps = [par[i] for i in tup]
                try:
                    r = fn(a, vs, ps)
                except OutOfWindow:
                    rep.skipped += 1
                    continue
                rep.checked += 1
                if r:
                    rep.violations += 1
                    if rep.passed:
                        rep.passed = False
                        rep.witness = tuple(a.basis.elements[i].name for i in tup)
                        rep.clause = label
                        rep.residual = _residual_dict(a, r)
                    if stop_at_first:
                        return rep
        else:
            rep.method = "random"
            rng = random.Random("%s|%s|%d" % (identity, label, seed))
            for ps in itertools.product((0, 1), repeat=arity):
                if any(not by_par[p] for p in ps):
                    continue
                for _ in range(RANDOM_TRIALS):
                    vs = [_random_vec(rng, by_par[p]) for p in ps]
                    r = fn(a, vs, list(ps))
                    rep.checked += 1
                    if r:
                        rep.violations += 1
                        if rep.passed:
                            rep.passed = False
                            tup, res = _localize(a, fn, vs, list(ps))
                            rep.witness = tuple(a.basis.elements[i].name for i in tup)
                            rep.clause = label
                            rep.residual = _residual_dict(a, res)
                        if stop_at_first:
                            return rep
    return rep


def _localize(a, fn, vs, ps):
    vs = list(vs)
    tup = []
    res = None
    for s in range(len(vs)):
        for i in sorted(vs[s]):
            trial = list(vs)
            trial[s] = {i: 1}
            r = fn(a, trial, ps)
            if r:
                vs = trial
                tup.append(i)
                res = r
                break
        else:  # pragma: no cover - impossible for multilinear clauses
            raise AssertionError("failed to localize violation")
    return tup, res


def _merge(identity: str, reports: Sequence[CheckReport]) -> CheckReport:
    out = CheckReport(identity, True)
    methods = set()
    for r in reports:
        out.checked += r.checked
        out.skipped += r.skipped
        out.violations += r.violations
        methods.add(r.method)
        if not r.passed and out.passed:
            out.passed = False
            out.witness = r.witness
            out.clause = ("%s: %s" % (r.identity, r.clause)) if r.clause else r.identity
            out.residual = r.residual
    out.method = "+".join(sorted(methods))
    return out


# clause bodies; vs are vectors, ps their parities

def _supercomm(a, vs, ps):
    x, y = vs
    return vadd(a.mul(x, y), a.mul(y, x), -sign(ps[0] * ps[1]))


def _assoc(a, vs, ps):
    x, y, z = vs
    return vadd(a.mul(a.mul(x, y), z), a.mul(x, a.mul(y, z)), -1)


def _unit(a, vs, ps):
    (x,) = vs
    u = a.one()
    return vadd(vadd(a.mul(u, x), x, -1), vadd(a.mul(x, u), x, -1))


def _antisym(which):
    def f(a, vs, ps):
        m = a.op(which)
        x, y = vs
        return vadd(m(x, y), m(y, x), sign(ps[0] * ps[1]))
    return f


def _jacobi(which):
    def f(a, vs, ps):
        m = a.op(which)
        x, y, z = vs
        r = vadd(m(x, m(y, z)), m(m(x, y), z), -1)
        return vadd(r, m(y, m(x, z)), -sign(ps[0] * ps[1]))
    return f


def _leibniz(a, vs, ps):
    x, y, z = vs
    r = a.br(a.mul(x, y), z)
    r = vadd(r, a.mul(x, a.br(y, z)), -1)
    return vadd(r, a.mul(a.br(x, z), y), -sign(ps[1] * ps[2]))


def _contact_leibniz(a, vs, ps):
    x, y, z = vs
    r = _leibniz(a, vs, ps)
    return vadd(r, a.mul(a.mul(x, y), a.deriv(z)), -1)


def _deriv_rule(a, vs, ps):
    x, y = vs
    r = vadd(a.deriv(a.mul(x, y)), a.mul(a.deriv(x), y), -1)
    return vadd(r, a.mul(x, a.deriv(y)), -1)


def _deriv_even(a, vs, ps):
    (x,) = vs
    d = a.deriv(x)
    return {k: v for k, v in d.items() if a.parity(k) != ps[0]}


def _jordan4(a, vs, ps):
    x, y, z, t = vs
    px, py, pz, pt = ps
    m = a.mul
    xy = m(x, y)
    xt = m(x, t)
    yt = m(y, t)
    lhs = m(m(xy, z), t)
    lhs = vadd(lhs, m(m(xt, z), y), sign(py * pz + py * pt + pz * pt))
    lhs = vadd(lhs, m(m(yt, z), x), sign(px * py + px * pz + px * pt + pz * pt))
    rhs = m(xy, m(z, t))
    rhs = vadd(rhs, m(m(x, z), yt), sign(py * pz))
    rhs = vadd(rhs, m(xt, m(y, z)), sign(pt * (py + pz)))
    return vadd(lhs, rhs, -1)


def check_supercommutative(a: SuperAlgebra, mode="auto", seed=0, stop_at_first=False) -> CheckReport:
    return run_clauses(a, "supercommutative", [("xy = (-1)^{|x||y|} yx", 2, _supercomm)], mode, seed, stop_at_first)


def check_associative(a: SuperAlgebra, mode="auto", seed=0, stop_at_first=False) -> CheckReport:
    return run_clauses(a, "associative", [("(xy)z = x(yz)", 3, _assoc)], mode, seed, stop_at_first)


def check_unit(a: SuperAlgebra) -> CheckReport:
    if a.unit is None:
        return CheckReport("unit", False, clause="no unit")
    return run_clauses(a, "unit", [("1x = x1 = x", 1, _unit)], "exhaustive")


def check_lie_super(a: SuperAlgebra, which: str = "product", mode="auto", seed=0, stop_at_first=False) -> CheckReport:
    a.op(which)
    return run_clauses(a, "lie(%s)" % which, [
        ("super anti-symmetry", 2, _antisym(which)),
        ("graded Jacobi", 3, _jacobi(which)),
    ], mode, seed, stop_at_first)


def check_poisson(a: SuperAlgebra, mode="auto", seed=0, stop_at_first=False) -> CheckReport:
    if a.bracket is None:
        raise AlgebraError("check_poisson needs a bracket")
    parts = []
    for f, kw in ((check_supercommutative, {}), (check_associative, {})):
        parts.append(f(a, mode=mode, seed=seed, stop_at_first=stop_at_first))
        if stop_at_first and not parts[-1].passed:
            return _merge("poisson", parts)
    parts.append(check_lie_super(a, "bracket", mode=mode, seed=seed, stop_at_first=stop_at_first))
    if stop_at_first and not parts[-1].passed:
        return _merge("poisson", parts)
    parts.append(run_clauses(a, "leibniz", [("[ab,c] = a[b,c] + (-1)^{|b||c|}[a,c]b", 3, _leibniz)],
                             mode, seed, stop_at_first))
    return _merge("poisson", parts)


def check_contact(a: SuperAlgebra, mode="auto", seed=0, stop_at_first=False) -> CheckReport:
    if a.bracket is None or a.unit is None:
        raise AlgebraError("check_contact needs a unit and a bracket")
    parts = [check_lie_super(a, "bracket", mode=mode, seed=seed, stop_at_first=stop_at_first)]
    if stop_at_first and not parts[-1].passed:
        return _merge("contact", parts)
    parts.append(run_clauses(a, "derivation", [
        ("D(x) = [x,1] is even", 1, _deriv_even),
        ("D(xy) = D(x)y + xD(y)", 2, _deriv_rule),
    ], mode, seed, stop_at_first))
    if stop_at_first and not parts[-1].passed:
        return _merge("contact", parts)
    parts.append(run_clauses(a, "contact leibniz", [
        ("[ab,c] = a[b,c] + (-1)^{|b||c|}[a,c]b + ab D(c)", 3, _contact_leibniz)], mode, seed, stop_at_first))
    return _merge("contact", parts)


def check_jordan_super(a: SuperAlgebra, mode="auto", seed=0, stop_at_first=False) -> CheckReport:
    parts = [check_supercommutative(a, mode=mode, seed=seed, stop_at_first=stop_at_first)]
    if stop_at_first and not parts[-1].passed:
        return _merge("jordan", parts)
    parts.append(run_clauses(a, "jordan identity", [("graded linearized Jordan identity", 4, _jordan4)],
                             mode, seed, stop_at_first))
    return _merge("jordan", parts)


def check_jordan_bracket(a: SuperAlgebra, mode="auto", seed=0, stop_at_first=False) -> CheckReport:
    if a.bracket is None or a.unit is None:
        raise AlgebraError("check_jordan_bracket needs a unit and a bracket")
    from .constructions import kantor_double
    rep = check_jordan_super(kantor_double(a, verify=False), mode=mode, seed=seed, stop_at_first=stop_at_first)
    rep.identity = "jordan-bracket"
    return rep


CHECKERS = {
    "supercommutative": check_supercommutative,
    "associative": check_associative,
    "lie": check_lie_super,
    "poisson": check_poisson,
    "contact": check_contact,
    "jordan": check_jordan_super,
    "jordan-bracket": check_jordan_bracket,
}


def check(a: SuperAlgebra, identity: str, **kw) -> CheckReport:
    if identity not in CHECKERS:
        raise AlgebraError("unknown identity %r" % identity)
    if identity == "lie":
        which = kw.pop("which", None) or ("bracket" if a.bracket is not None and "lie" not in a.kinds else "product")
        return check_lie_super(a, which, **kw)
    return CHECKERS[identity](a, **kw)


def verify_and_tag(a: SuperAlgebra, *kinds: str, **kw) -> SuperAlgebra:
    """Run the checker for each kind and tag on success; raise otherwise."""
    for k in kinds:
        if k == "associative-commutative":
            rep = _merge(k, [check_supercommutative(a, **kw), check_associative(a, **kw)])
        elif k == "lie":
            rep = check_lie_super(a, "product", **kw)
        else:
            rep = CHECKERS[k](a, **kw)
        if not rep.passed:
            raise AlgebraError("%s check failed for %s: %s at %s" % (k, a.name or "?", rep.clause, rep.witness))
    return a.tagged(*kinds)


# --- operators ------------------------------------------------------------

class LinearOperator:
    """Right-acting linear map: stores the image of every basis vector."""

    __slots__ = ("dim", "images")

    def __init__(self, dim: int, images: Sequence[Mapping[int, Scalar]]):
        if len(images) != dim:
            raise AlgebraError("operator must have one image per basis vector")
        self.dim = dim
        self.images = tuple({k: v for k, v in im.items() if v} for im in images)

    @classmethod
    def identity(cls, dim):
        return cls(dim, [{i: 1} for i in range(dim)])

    @classmethod
    def zero(cls, dim):
        return cls(dim, [{} for _ in range(dim)])

    def apply(self, x: Mapping[int, Scalar]) -> Vec:
        return vsum((c, self.images[i]) for i, c in x.items())

    def then(self, other: "LinearOperator") -> "LinearOperator":
        """``x -> (x self) other``."""
        return LinearOperator(self.dim, [other.apply(im) for im in self.images])

    def plus(self, other: "LinearOperator", c: Scalar = 1) -> "LinearOperator":
        return LinearOperator(self.dim, [vadd(x, y, c) for x, y in zip(self.images, other.images)])

    def scaled(self, c: Scalar) -> "LinearOperator":
        return LinearOperator(self.dim, [vscale(x, c) for x in self.images])

    def as_vector(self) -> Vec:
        n = self.dim
        return {i * n + k: v for i, im in enumerate(self.images) for k, v in im.items()}

    @classmethod
    def from_vector(cls, dim: int, v: Mapping[int, Scalar]):
        ims = [{} for _ in range(dim)]
        for idx, c in v.items():
            ims[idx // dim][idx % dim] = c
        return cls(dim, ims)

    def matrix(self) -> List[List[Scalar]]:
        """Row i = image of basis vector i."""
        out = [[0] * self.dim for _ in range(self.dim)]
        for i, im in enumerate(self.images):
            for k, v in im.items():
                out[i][k] = v
        return out

    def is_zero(self) -> bool:
        return not any(self.images)

    def __eq__(self, other):
        return isinstance(other, LinearOperator) and self.images == other.images

    def __repr__(self):
        return "LinearOperator(dim=%d, nnz=%d)" % (self.dim, sum(len(i) for i in self.images))


def _as_vec(a: SuperAlgebra, x) -> Vec:
    if isinstance(x, (int, str)):
        return a.e(x)
    return dict(x)


def right_mult(a: SuperAlgebra, x) -> LinearOperator:
    x = _as_vec(a, x)
    return LinearOperator(a.dim, [a.mul({i: 1}, x) for i in range(a.dim)])


def inner_derivation(a: SuperAlgebra, x, y, verify: bool = False) -> LinearOperator:
    """``D(x,y) = R(x)R(y) - (-1)^{|x||y|} R(y)R(x)`` (right action)."""
    x = _as_vec(a, x)
    y = _as_vec(a, y)
    px, py = a.vparity(x), a.vparity(y)
    s = sign(px * py)
    ims = []
    for i in range(a.dim):
        e = {i: 1}
        ims.append(vadd(a.mul(a.mul(e, x), y), a.mul(a.mul(e, y), x), -s))
    d = LinearOperator(a.dim, ims)
    if verify:
        rep = check_derivation(a, d, (px + py) % 2)
        if not rep.passed:
            raise AlgebraError("D(x,y) is not a derivation: failure at %s" % (rep.witness,))
    return d


def check_derivation(a: SuperAlgebra, d: LinearOperator, parity: int) -> CheckReport:
    """Right super-Leibniz law ``(uv)D = u(vD) + (-1)^{|v||D|}(uD)v`` on basis pairs."""

    def f(alg, vs, ps):
        u, v = vs
        r = vadd(d.apply(alg.mul(u, v)), alg.mul(u, d.apply(v)), -1)
        return vadd(r, alg.mul(d.apply(u), v), -sign(ps[1] * parity))

    return run_clauses(a, "derivation", [("super-Leibniz", 2, f)], "exhaustive")


def triple_product(j: SuperAlgebra, x, y, z) -> Vec:
    """``{x,y,z} = (xy)z + x(yz) - (-1)^{|x||y|} y(xz)``."""
    if "jordan" not in j.kinds:
        raise AlgebraError("triple_product needs an algebra tagged jordan")
    return _triple(j, _as_vec(j, x), _as_vec(j, y), _as_vec(j, z))


def _triple(j, x, y, z):
    m = j.mul
    s = sign(j.vparity(x) * j.vparity(y))
    r = vadd(m(m(x, y), z), m(x, m(y, z)))
    return vadd(r, m(y, m(x, z)), -s)


def _triple_basis(j, i, k, l):
    m = j.mul
    x, y, z = {i: 1}, {k: 1}, {l: 1}
    s = sign(j.parity(i) * j.parity(k))
    r = vadd(m(m(x, y), z), m(x, m(y, z)))
    return vadd(r, m(y, m(x, z)), -s)


def V_operator(j: SuperAlgebra, y, z) -> LinearOperator:
    """``V(y,z): x -> {x,y,z}``; equals ``D(y,z) + R(yz)``."""
    if "jordan" not in j.kinds:
        raise AlgebraError("V_operator needs an algebra tagged jordan")
    y = _as_vec(j, y)
    z = _as_vec(j, z)
    return LinearOperator(j.dim, [_triple(j, {i: 1}, y, z) for i in range(j.dim)])


def inner_derivation_family(j: SuperAlgebra) -> Dict[Tuple[int, int], LinearOperator]:
    """``D(e_i, e_j)`` for ``i <= j``; the rest follow by super anti-symmetry."""
    out = {}
    for i in range(j.dim):
        for k in range(i, j.dim):
            out[(i, k)] = inner_derivation(j, i, k)
    return out


def inder_space(j: SuperAlgebra) -> SolutionSpace:
    if "jordan" not in j.kinds:
        raise AlgebraError("inder_space needs an algebra tagged jordan")
    fam = inner_derivation_family(j)
    return span((d.as_vector() for d in fam.values()), j.dim * j.dim, label="Inder")


def inder_cyclic_residual(j: SuperAlgebra, a, b, c) -> LinearOperator:
    """``D(ab,c) + (-1)^{|a|(|b|+|c|)} D(bc,a) + (-1)^{|b||c|} D(ac,b)``; zero in every Jordan superalgebra."""
    a, b, c = _as_vec(j, a), _as_vec(j, b), _as_vec(j, c)
    pa, pb, pc = j.vparity(a), j.vparity(b), j.vparity(c)
    m = j.mul
    t1 = inner_derivation(j, m(a, b), c) if m(a, b) else LinearOperator.zero(j.dim)
    t2 = inner_derivation(j, m(b, c), a) if m(b, c) else LinearOperator.zero(j.dim)
    t3 = inner_derivation(j, m(a, c), b) if m(a, c) else LinearOperator.zero(j.dim)
    return t1.plus(t2, sign(pa * (pb + pc))).plus(t3, sign(pb * pc))


# --- serialization --------------------------------------------------------

def to_json_obj(a: SuperAlgebra) -> dict:
    obj = {"basis": []}
    for e in a.basis.elements:
        d = {"name": e.name, "parity": e.parity}
        if e.degree is not None:
            d["degree"] = e.degree
        obj["basis"].append(d)
    obj["product"] = [[i, j, k, qstr(c)] for i, j, k, c in a.product.entries()]
    if a.product.undefined:
        obj["product_undefined"] = sorted([list(p) for p in a.product.undefined])
    if a.bracket is not None:
        obj["bracket"] = [[i, j, k, qstr(c)] for i, j, k, c in a.bracket.entries()]
        if a.bracket.undefined:
            obj["bracket_undefined"] = sorted([list(p) for p in a.bracket.undefined])
    if a.unit is not None:
        obj["unit"] = a.basis.elements[a.unit].name
    return obj


def to_json(a: SuperAlgebra) -> str:
    return json.dumps(to_json_obj(a), sort_keys=True, separators=(",", ":"))


def from_json_obj(obj: dict, name: str = "") -> SuperAlgebra:
    try:
        els = []
        for d in obj["basis"]:
            par = d["parity"]
            if par in ("even", "odd"):
                par = 0 if par == "even" else 1
            els.append(BasisElement(str(d["name"]), int(par), d.get("degree")))
        basis = SuperBasis(els)
        n = basis.dim
        prod = BilinearMap.from_entries(n, [(i, j, k, q(c)) for i, j, k, c in obj.get("product", [])],
                                        [tuple(p) for p in obj.get("product_undefined", [])])
        br = None
        if "bracket" in obj:
            br = BilinearMap.from_entries(n, [(i, j, k, q(c)) for i, j, k, c in obj["bracket"]],
                                          [tuple(p) for p in obj.get("bracket_undefined", [])], which="bracket")
        unit = obj.get("unit")
        unit = basis.index(unit) if unit is not None else None
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, AlgebraError):
            raise
        raise AlgebraError("malformed structure-constant file: %s" % exc) from exc
    return SuperAlgebra(basis, prod, unit=unit, bracket=br, name=name)


def from_json(text: str, name: str = "") -> SuperAlgebra:
    return from_json_obj(json.loads(text), name)

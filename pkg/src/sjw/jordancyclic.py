"""Cyclic cocycles and cyclic homology of Jordan superalgebras.

A cyclic cocycle is an even super-skew form with

    (ab|c) + (-1)^{|a|(|b|+|c|)}(bc|a) + (-1)^{|b||c|}(ac|b) = 0.

Coboundaries are ``lambda(D(a,b))`` for functionals on inner derivations.
For a Kantor double ``J = A + Av`` the module also builds the three
families of cocycles (lambda-cocycles, extended bracket cocycles, mixed
cocycles) and checks that together they span ``HC(J)`` directly.

All subspace comparisons happen inside the ambient form space with the
coboundaries added, so no quotient representatives are chosen.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exactq import (Scalar, SolutionSpace, SparseMatrix, is_subspace, kernel, project, quotient_dim, span,
                     subspace_intersect, subspace_sum)
from .forms import FormCoords
from .superalgebra import (AlgebraError, OutOfWindow, SuperAlgebra, _triple, check_jordan_super, inner_derivation,
                           sign, vadd)


def _require_jordan(j: SuperAlgebra, who: str):
    if "jordan" not in j.kinds:
        raise AlgebraError("%s needs an algebra tagged jordan (got %s)" % (who, j.name or "untagged algebra"))
    if j.unit is None:
        raise AlgebraError("%s needs a unital Jordan superalgebra" % who)


def as_jordan(a: SuperAlgebra, seed: int = 0) -> SuperAlgebra:
    """Tag a supercommutative algebra as Jordan after running the Jordan check."""
    if "jordan" in a.kinds:
        return a
    rep = check_jordan_super(a, seed=seed)
    if not rep.passed:
        raise AlgebraError("%s is not a Jordan superalgebra: %s at %s" % (a.name, rep.clause, rep.witness))
    return a.tagged("jordan")


@dataclass
class QuotientReport:
    dim_cocycles: int
    dim_coboundaries: int
    dim_hc: int
    cocycles: SolutionSpace
    coboundaries: SolutionSpace
    coords: FormCoords = field(repr=False)
    window: Optional[int] = None
    estimate: bool = False

    def to_dict(self) -> dict:
        out = {"dim_c": self.dim_cocycles, "dim_b": self.dim_coboundaries, "dim_hc": self.dim_hc}
        if self.window is not None:
            out["window"] = self.window
        if self.estimate:
            out["estimate"] = True
        return out


@dataclass
class HCDecomposition:
    dim_hc: int
    dim_z: int
    dim_br: int
    dim_mixed: int
    consistent: bool
    z_part: SolutionSpace
    br_part: SolutionSpace
    mixed_part: SolutionSpace
    defect: int = 0
    dim_poisson_center: Optional[int] = None
    window: Optional[int] = None

    def to_dict(self) -> dict:
        out = {"dim_hc": self.dim_hc, "dim_z": self.dim_z, "dim_br": self.dim_br, "dim_mixed": self.dim_mixed,
               "consistent": self.consistent}
        if self.defect:
            out["defect"] = self.defect
        if self.dim_poisson_center is not None:
            out["dim_poisson_center"] = self.dim_poisson_center
        if self.window is not None:
            out["window"] = self.window
            out["estimate"] = True
        return out


# --- cocycles and coboundaries ---------------------------------------------

def _cyclic_rows(j: SuperAlgebra, fc: FormCoords, stats: Optional[dict] = None):
    """One row per ordered triple of even total parity; triples outside the window are skipped."""
    par = j.parities
    prod = j.product
    idx = fc.indices
    skipped = 0
    for a in idx:
        for b in idx:
            for c in idx:
                if (par[a] + par[b] + par[c]) % 2:
                    continue
                try:
                    ab, bc, ac = prod.get(a, b), prod.get(b, c), prod.get(a, c)
                except OutOfWindow:
                    skipped += 1
                    continue
                row: Dict[int, Scalar] = {}
                ok = True
                for vec, other, s in ((ab, c, 1), (bc, a, sign(par[a] * (par[b] + par[c]))),
                                      (ac, b, sign(par[b] * par[c]))):
                    for k, v in vec.items():
                        if fc.lookup(k, other) is None:
                            if par[k] == par[other] and not (k == other and not par[k]):
                                ok = False
                                break
                            continue
                        fc.add_term(row, s * v, k, other)
                    if not ok:
                        break
                if not ok:
                    skipped += 1
                    continue
                if row:
                    yield row
    if stats is not None:
        stats["skipped"] = stats.get("skipped", 0) + skipped


def cyclic_cocycles(j: SuperAlgebra, coords: Optional[FormCoords] = None, stats: Optional[dict] = None) -> SolutionSpace:
    """All even super-skew forms satisfying the cyclic identity (on safe triples)."""
    _require_jordan(j, "cyclic_cocycles")
    fc = coords or FormCoords.of(j)
    C = kernel(SparseMatrix.from_rows(list(_cyclic_rows(j, fc, stats)), fc.size), "C(%s)" % j.name)
    if j.unit in fc.indices:
        for b in C.basis:
            for x in fc.indices:
                if fc.value(b, x, j.unit):
                    raise AlgebraError("cyclic cocycle with (J|e) != 0 at %s" % j.basis.names[x])
    return C


def _d_images(j: SuperAlgebra, fc: FormCoords) -> Tuple[Dict[int, Dict[int, Scalar]], set]:
    """For each form variable (i, k): flattened matrix of ``D(e_i, e_k)`` (entry x*dim+y).

    Variables whose derivation needs an undefined product are returned in the second slot.
    """
    n = j.dim
    out: Dict[int, Dict[int, Scalar]] = {}
    bad = set()
    for v, (i, k) in enumerate(fc.pairs):
        try:
            d = inner_derivation(j, i, k)
        except OutOfWindow:
            bad.add(v)
            continue
        flat = {}
        for x, img in enumerate(d.images):
            for y, c in img.items():
                flat[x * n + y] = c
        out[v] = flat
    return out, bad


def _d_images_windowed(j: SuperAlgebra, fc: FormCoords):
    """Partial version: only matrix rows ``x`` where every product is defined, per variable."""
    n = j.dim
    m = j.mul
    out: Dict[int, Dict[int, Scalar]] = {}
    rows_ok = {}
    par = j.parities
    for v, (i, k) in enumerate(fc.pairs):
        s = sign(par[i] * par[k])
        flat = {}
        for x in range(n):
            e = {x: 1}
            try:
                img = vadd(m(m(e, {i: 1}), {k: 1}), m(m(e, {k: 1}), {i: 1}), -s)
            except OutOfWindow:
                rows_ok.setdefault(x, set()).add(v)
                continue
            for y, c in img.items():
                flat[x * n + y] = c
        out[v] = flat
    return out, rows_ok


def cyclic_coboundaries(j: SuperAlgebra, coords: Optional[FormCoords] = None) -> SolutionSpace:
    """Span of ``lambda(D(a,b))`` over even matrix-entry functionals ``lambda``.

    On windows, a functional (x, y) is used only when ``e_x D(a,b)`` is
    defined for every variable pair ``(a, b)``.
    """
    _require_jordan(j, "cyclic_coboundaries")
    fc = coords or FormCoords.of(j)
    n = j.dim
    par = j.parities
    if j.windowed():
        imgs, blocked = _d_images_windowed(j, fc)
    else:
        imgs, bad = _d_images(j, fc)
        blocked = {}
        if bad:
            raise AlgebraError("inner derivations undefined on a finite algebra")
    cols: Dict[int, Dict[int, Scalar]] = {}
    for v, flat in imgs.items():
        for e, c in flat.items():
            x, y = divmod(e, n)
            if par[x] != par[y] or x in blocked:
                continue
            cols.setdefault(e, {})[v] = c
    return span(cols.values(), fc.size, "B(%s)" % j.name)


def hc(j: SuperAlgebra, coords: Optional[FormCoords] = None) -> QuotientReport:
    _require_jordan(j, "hc")
    fc = coords or FormCoords.of(j)
    C = cyclic_cocycles(j, fc)
    B = cyclic_coboundaries(j, fc)
    if not is_subspace(B, C):
        raise AlgebraError("cyclic coboundaries are not cocycles on %s" % j.name)
    return QuotientReport(C.dim, B.dim, quotient_dim(B, C), C, B, fc, estimate=j.windowed())


def core_pairs(full: FormCoords, core: Sequence[int]) -> Tuple[FormCoords, List[int]]:
    """Layout on the core and the positions of its variables inside ``full``."""
    cc = FormCoords(full.parities, indices=core, names=full.names)
    return cc, [full.index[p] for p in cc.pairs]


def windowed_hc(j: SuperAlgebra, radius: Optional[int] = None) -> QuotientReport:
    """HC estimate: cocycles solved on the whole window, projected to the core.

    The estimate is ``dim pi(C) - dim(pi(C) ∩ B_core)`` where ``B_core`` is
    spanned by coboundaries restricted to core pairs.
    """
    _require_jordan(j, "windowed_hc")
    w = j.meta.get("window")
    if w is None:
        return hc(j)
    r = w.radius if radius is None else radius
    full = FormCoords.of(j)
    C = cyclic_cocycles(j, full)
    cc, pos = core_pairs(full, w.core(r))
    pC = project(C, pos, "pi(C)")
    B = cyclic_coboundaries(j, cc)
    d = pC.dim - subspace_intersect(pC, B).dim
    return QuotientReport(pC.dim, B.dim, d, pC, B, cc, window=r, estimate=True)


def triple_identity_check(j: SuperAlgebra, fc: FormCoords, vec: Mapping[int, Scalar]) -> Tuple[bool, Optional[tuple]]:
    """The four-term triple-product identity on all basis quadruples."""
    par = j.parities
    n = j.dim
    T: Dict[Tuple[int, int, int], Dict[int, Scalar]] = {}

    def t(x, y, z):
        key = (x, y, z)
        if key not in T:
            T[key] = _triple(j, {x: 1}, {y: 1}, {z: 1})
        return T[key]

    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if (par[a] + par[b] + par[c] + par[d]) % 2:
                        continue
                    tot = fc.pair_value(vec, t(a, b, c), {d: 1})
                    tot += sign(par[a] * par[b] + par[d] * par[c]) * fc.pair_value(vec, t(b, a, d), {c: 1})
                    tot += sign(par[b] * par[c] + par[b] * par[d] + par[c] * par[d]) * fc.pair_value(
                        vec, t(a, d, c), {b: 1})
                    tot += sign(par[a] * (par[b] + par[c] + par[d])) * fc.pair_value(vec, t(b, c, d), {a: 1})
                    if tot:
                        nm = j.basis.names
                        return False, (nm[a], nm[b], nm[c], nm[d])
    return True, None


# --- Poisson center ---------------------------------------------------------

def poisson_center(a: SuperAlgebra, indices: Optional[Sequence[int]] = None) -> SolutionSpace:
    """``{u : u' = 0, (cu)' + [c,u] = 0 for all c}`` with ``x' = [x, 1]``.

    ``u`` is supported on ``indices`` (default: the window core, or
    everything).  A test element ``c`` whose conditions leave the window is
    skipped.  The result lives in the full coordinate space of ``a``.
    """
    if a.bracket is None or a.unit is None:
        raise AlgebraError("poisson_center needs a unital algebra with bracket")
    if indices is None:
        w = a.meta.get("window")
        indices = w.core() if (w is not None and a.windowed()) else range(a.dim)
    idx = list(indices)
    one = {a.unit: 1}
    rows: List[Dict[int, Scalar]] = []

    def add_block(images: List[Dict[int, Scalar]]):
        block: Dict[int, Dict[int, Scalar]] = {}
        for col, img in enumerate(images):
            for t, c in img.items():
                block.setdefault(t, {})[col] = c
        rows.extend(block.values())

    try:
        add_block([a.bracket.apply({k: 1}, one) for k in idx])
    except OutOfWindow:
        raise AlgebraError("u' leaves the window on the chosen support")
    for c in range(a.dim):
        try:
            imgs = [vadd(a.bracket.apply(a.product.apply({c: 1}, {k: 1}), one), a.bracket.get(c, k)) for k in idx]
        except OutOfWindow:
            continue
        add_block(imgs)
    K = kernel(SparseMatrix.from_rows(rows, len(idx)))
    return span([{idx[i]: v for i, v in b.items()} for b in K.basis], a.dim, "Zp(%s)" % a.name)


# --- Kantor double families -------------------------------------------------

def _kantor_parts(j: SuperAlgebra) -> Tuple[SuperAlgebra, int]:
    base = j.meta.get("kantor_base")
    if base is None:
        raise AlgebraError("%s is not a Kantor double" % j.name)
    return base, j.meta["half"]


def _functional(a: SuperAlgebra, lam) -> Dict[int, Scalar]:
    if isinstance(lam, Mapping):
        out = {}
        for k, v in lam.items():
            out[a.basis.index(k) if isinstance(k, str) else k] = v
        return out
    return {i: v for i, v in enumerate(lam) if v}


def lambda_cocycle(j: SuperAlgebra, lam, coords: Optional[FormCoords] = None) -> Dict[int, Scalar]:
    """``(av|bv) = (-1)^{|b|} lambda(ab)``, zero on ``A x A`` and ``Av x A``.

    Only the even part of ``lambda`` matters: its odd part would give an odd form.
    """
    a, n = _kantor_parts(j)
    fc = coords or FormCoords.of(j)
    lam = _functional(a, lam)
    par = a.parities
    values = {}
    for x in range(n):
        for y in range(n):
            if par[x] != par[y]:
                continue
            try:
                ab = a.product.get(x, y)
            except OutOfWindow:
                continue
            v = sum(c * lam.get(t, 0) for t, c in ab.items())
            if v:
                values[(n + x, n + y)] = sign(par[y]) * v
    return fc.from_pairs({p: v for p, v in values.items() if fc.lookup(*p) is not None})


def _deriv_vec(a: SuperAlgebra, i: int) -> Dict[int, Scalar]:
    return a.bracket.get(i, a.unit)


def bracket_cyclic_cocycles(a: SuperAlgebra, coords: Optional[FormCoords] = None,
                            stats: Optional[dict] = None) -> SolutionSpace:
    """Forms on ``A`` with skew symmetry, the cyclic identity and
    ``(a'|b) = (-1)^{|a||b|}(b'|a)``, ``([a,b]|c) = (a'|bc) - (-1)^{|a||b|}(b'|ac)``.
    """
    if a.bracket is None or a.unit is None:
        raise AlgebraError("bracket_cyclic_cocycles needs a unital algebra with bracket")
    fc = coords or FormCoords.of(a)
    par = a.parities
    idx = fc.indices
    rows = list(_cyclic_rows(a.tagged("jordan") if "jordan" not in a.kinds else a, fc, stats))
    skipped = 0

    def known(k, other):
        return fc.lookup(k, other) is not None or par[k] != par[other] or (k == other and not par[k])

    for x in idx:
        for y in idx:
            if par[x] != par[y]:
                continue
            try:
                dx, dy = _deriv_vec(a, x), _deriv_vec(a, y)
            except OutOfWindow:
                skipped += 1
                continue
            if not all(known(k, y) for k in dx) or not all(known(k, x) for k in dy):
                skipped += 1
                continue
            row: Dict[int, Scalar] = {}
            fc.add_pairing(row, 1, dx, {y: 1})
            fc.add_pairing(row, -sign(par[x] * par[y]), dy, {x: 1})
            if row:
                rows.append(row)
    for x in idx:
        for y in idx:
            for z in idx:
                if (par[x] + par[y] + par[z]) % 2:
                    continue
                try:
                    bxy = a.bracket.get(x, y)
                    dx, dy = _deriv_vec(a, x), _deriv_vec(a, y)
                    yz, xz = a.product.get(y, z), a.product.get(x, z)
                except OutOfWindow:
                    skipped += 1
                    continue
                terms = ((1, bxy, {z: 1}), (-1, dx, yz), (sign(par[x] * par[y]), dy, xz))
                if not all(known(k, m) for _, u, w in terms for k in u for m in w):
                    skipped += 1
                    continue
                row = {}
                for s, u, w in terms:
                    fc.add_pairing(row, s, u, w)
                if row:
                    rows.append(row)
    if stats is not None:
        stats["skipped"] = stats.get("skipped", 0) + skipped
    return kernel(SparseMatrix.from_rows(rows, fc.size), "Cbr(%s)" % a.name)


def windowed_bracket_cocycles(a: SuperAlgebra, radius: Optional[int] = None) -> Tuple[SolutionSpace, FormCoords]:
    """Bracket cyclic cocycles solved on the whole window and projected to the core pairs."""
    w = a.meta.get("window")
    full = FormCoords.of(a)
    C = bracket_cyclic_cocycles(a, full)
    if w is None or not a.windowed():
        return C, full
    cc, pos = core_pairs(full, w.core(radius))
    return project(C, pos, "pi(Cbr)"), cc


def extend_bracket_cocycle(j: SuperAlgebra, form: Mapping[int, Scalar], lam=None,
                           base_coords: Optional[FormCoords] = None, coords: Optional[FormCoords] = None,
                           verify: bool = True) -> Dict[int, Scalar]:
    """Extend a bracket cyclic cocycle on ``A`` to ``J = K(A)``:

    ``(a|b)`` on ``A x A`` as given, ``(av|bv) = (-1)^{|b|+1}(a|b') - (-1)^{|b|} lambda(ab)``,
    and ``(Av|A) = 0``.
    """
    a, n = _kantor_parts(j)
    bc = base_coords or FormCoords.of(a)
    fc = coords or FormCoords.of(j)
    lam = _functional(a, lam or {})
    par = a.parities
    values: Dict[Tuple[int, int], Scalar] = {}
    for (x, y), v in bc.to_pairs(form).items():
        values[(x, y)] = v
    for x in range(n):
        for y in range(n):
            if par[x] != par[y]:
                continue
            try:
                dy = _deriv_vec(a, y)
                xy = a.product.get(x, y)
            except OutOfWindow:
                continue
            v = -sign(par[y]) * bc.pair_value(form, {x: 1}, dy)
            v -= sign(par[y]) * sum(c * lam.get(t, 0) for t, c in xy.items())
            if v:
                values[(n + x, n + y)] = v
    vec = fc.from_pairs({p: v for p, v in values.items() if fc.lookup(*p) is not None})
    if verify and not j.windowed():
        C = cyclic_cocycles(j, fc)
        if not C.contains(vec):
            raise AlgebraError("extended bracket cocycle is not a cyclic cocycle on %s" % j.name)
    return vec


class MixedCoords:
    """Unknowns ``<a|b>`` for ordered basis pairs of opposite parity in ``A``."""

    def __init__(self, a: SuperAlgebra, indices: Optional[Sequence[int]] = None):
        idx = list(range(a.dim) if indices is None else indices)
        par = a.parities
        self.parities = par
        self.pairs = [(x, y) for x in idx for y in idx if par[x] != par[y]]
        self.index = {p: k for k, p in enumerate(self.pairs)}
        self.indices = idx

    @property
    def size(self):
        return len(self.pairs)

    def add(self, row, coef, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> bool:
        for i, u in x.items():
            for k, w in y.items():
                if self.parities[i] == self.parities[k]:
                    continue
                v = self.index.get((i, k))
                if v is None:
                    return False
                nv = row.get(v, 0) + coef * u * w
                if nv:
                    row[v] = nv
                else:
                    row.pop(v, None)
        return True

    def value(self, vec, x: int, y: int) -> Scalar:
        v = self.index.get((x, y))
        return 0 if v is None else vec.get(v, 0)


def mixed_rows(a: SuperAlgebra, mc: MixedCoords):
    par = a.parities
    idx = mc.indices
    one = {a.unit: 1}
    for x in idx:
        for y in idx:
            for z in idx:
                if not (par[x] + par[y] + par[z]) % 2:
                    continue
                X, Y, Z = {x: 1}, {y: 1}, {z: 1}
                s2 = sign(par[x] * (par[y] + par[z]))
                s3 = sign(par[z] * (par[x] + par[y]))
                try:
                    r1 = ((1, a.bracket.get(x, y), Z), (s2, a.bracket.get(y, z), X), (s3, a.bracket.get(z, x), Y))
                    xyz = a.product.apply(a.product.get(x, y), Z)
                    r2 = ((1, X, a.product.get(y, z)), (s2, Y, a.product.get(z, x)), (s3, Z, a.product.get(x, y)),
                          (-1, xyz, one))
                except OutOfWindow:
                    continue
                for terms in (r1, r2):
                    row: Dict[int, Scalar] = {}
                    if all(mc.add(row, s, u, w) for s, u, w in terms) and row:
                        yield row


def mixed_to_form(j: SuperAlgebra, mc: MixedCoords, vec: Mapping[int, Scalar],
                  coords: Optional[FormCoords] = None) -> Dict[int, Scalar]:
    """``(a|bv) = <a|b>`` and ``(bv|a) = -(-1)^{|a|(|b|+1)} <a|b>``."""
    a, n = _kantor_parts(j)
    fc = coords or FormCoords.of(j)
    values = {}
    for k, v in vec.items():
        if v:
            x, y = mc.pairs[k]
            values[(x, n + y)] = v
    return fc.from_pairs({p: v for p, v in values.items() if fc.lookup(*p) is not None})


def mixed_cocycles(j: SuperAlgebra, coords: Optional[FormCoords] = None,
                   verify: bool = True) -> Tuple[SolutionSpace, MixedCoords]:
    """Solutions ``<a|b>`` of the bracket and product conditions on ``A = base of j``.

    Returns the solution space in ``<|>`` coordinates.  With ``verify`` each
    basis solution, written as a form on ``J``, is checked to be a cyclic
    cocycle.
    """
    a, n = _kantor_parts(j)
    mc = MixedCoords(a)
    S = kernel(SparseMatrix.from_rows(list(mixed_rows(a, mc)), mc.size), "M(%s)" % a.name)
    if verify and not j.windowed():
        fc = coords or FormCoords.of(j)
        C = cyclic_cocycles(j, fc)
        for b in S.basis:
            if not C.contains(mixed_to_form(j, mc, b, fc)):
                raise AlgebraError("mixed solution is not a cyclic cocycle on %s" % j.name)
    return S, mc


def mixed_space_direct(j: SuperAlgebra, coords: Optional[FormCoords] = None) -> SolutionSpace:
    """Cyclic cocycles vanishing on ``A x A`` and ``Av x Av`` (no use of the mixed conditions)."""
    a, n = _kantor_parts(j)
    fc = coords or FormCoords.of(j)
    C = cyclic_cocycles(j, fc)
    keep = [k for k, (x, y) in enumerate(fc.pairs) if (x < n) != (y < n)]
    mask = span([{k: 1} for k in keep], fc.size)
    return subspace_intersect(C, mask, "C_mixed(%s)" % j.name)


def mixed_coboundary_test(j: SuperAlgebra, mc: MixedCoords, vec: Mapping[int, Scalar]) -> bool:
    """True when ``<|>`` vanishes on ``W = ker(a(x)b -> [a,b] + (-1)^{|a||b|} b'a)``."""
    a, n = _kantor_parts(j)
    par = a.parities
    pairs = [(x, y) for x in range(n) for y in range(n)]
    rows: Dict[int, Dict[int, Scalar]] = {}
    for col, (x, y) in enumerate(pairs):
        img = vadd(a.bracket.get(x, y), a.product.apply(_deriv_vec(a, y), {x: 1}), sign(par[x] * par[y]))
        for t, c in img.items():
            rows.setdefault(t, {})[col] = c
    W = kernel(SparseMatrix.from_rows(list(rows.values()), len(pairs)), "W")
    for w in W.basis:
        tot = sum(c * mc.value(vec, *pairs[col]) for col, c in w.items())
        if tot:
            return False
    return True


def mixed_unit_check(j: SuperAlgebra, mc: MixedCoords, vec: Mapping[int, Scalar]) -> bool:
    """``<a|b> + <b|a> = <ab|1>``."""
    a, n = _kantor_parts(j)
    one = a.unit
    for x in range(n):
        for y in range(n):
            ab = a.product.get(x, y)
            rhs = sum(c * mc.value(vec, t, one) for t, c in ab.items())
            if mc.value(vec, x, y) + mc.value(vec, y, x) != rhs:
                return False
    return True


# --- whole-algebra checks ---------------------------------------------------

def _mod(space: SolutionSpace, B: SolutionSpace) -> int:
    return subspace_sum(space, B).dim - B.dim


def decompose_hc(j: SuperAlgebra) -> HCDecomposition:
    """Split ``HC(K(A))`` into the lambda, bracket and mixed parts.

    Each family is lifted to forms on ``J`` and measured modulo ``B(J)``;
    ``consistent`` means the three parts are independent modulo ``B(J)``
    and together fill ``C(J)``.
    """
    _require_jordan(j, "decompose_hc")
    a, n = _kantor_parts(j)
    if j.windowed():
        return _decompose_windowed(j)
    fc = FormCoords.of(j)
    rep = hc(j, fc)
    C, B = rep.cocycles, rep.coboundaries
    lam_forms = [lambda_cocycle(j, {k: 1}, fc) for k in range(n) if not a.parity(k)]
    Z = span(lam_forms, fc.size, "lambda-part")
    bfc = FormCoords.of(a)
    Cbr = bracket_cyclic_cocycles(a, bfc)
    E = span([extend_bracket_cocycle(j, b, None, bfc, fc, verify=False) for b in Cbr.basis], fc.size, "br-part")
    M, mc = mixed_cocycles(j, fc, verify=False)
    Mf = span([mixed_to_form(j, mc, b, fc) for b in M.basis], fc.size, "mixed-part")
    return _assemble(C, B, Z, E, Mf, rep.dim_hc, poisson_center(a).dim)


def _assemble(C, B, Z, E, Mf, dim_hc, zp, window=None) -> HCDecomposition:
    for part in (Z, E, Mf):
        if not is_subspace(part, C):
            raise AlgebraError("%s is not inside the cyclic cocycles" % part.label)
    dz, db, dm = _mod(Z, B), _mod(E, B), _mod(Mf, B)
    total = subspace_sum(subspace_sum(subspace_sum(Z, E), Mf), B).dim - B.dim
    pair_ok = all(_mod(subspace_intersect(subspace_sum(x, B), subspace_sum(y, B)), B) == 0
                  for x, y in ((Z, E), (Z, Mf), (E, Mf)))
    consistent = pair_ok and total == dim_hc and dz + db + dm == dim_hc
    return HCDecomposition(dim_hc, dz, db, dm, consistent, Z, E, Mf, defect=dim_hc - total,
                           dim_poisson_center=zp, window=window)


def _decompose_windowed(j: SuperAlgebra, radius: Optional[int] = None) -> HCDecomposition:
    """Windowed estimate: every family is built on the whole window and projected to the core."""
    a, n = _kantor_parts(j)
    w = j.meta["window"]
    r = w.radius if radius is None else radius
    full = FormCoords.of(j)
    C = cyclic_cocycles(j, full)
    cc, pos = core_pairs(full, w.core(r))
    pC = project(C, pos)
    B = subspace_intersect(cyclic_coboundaries(j, cc), pC)
    dim_hc = pC.dim - B.dim
    Z = project(span([lambda_cocycle(j, {k: 1}, full) for k in range(n) if not a.parity(k)], full.size), pos)
    bfc = FormCoords.of(a)
    Cbr = bracket_cyclic_cocycles(a, bfc)
    E = project(span([extend_bracket_cocycle(j, b, None, bfc, full, verify=False) for b in Cbr.basis],
                     full.size), pos)
    M, mc = mixed_cocycles(j, full, verify=False)
    Mf = project(span([mixed_to_form(j, mc, b, full) for b in M.basis], full.size), pos)
    Z, E, Mf = (subspace_intersect(x, pC) for x in (Z, E, Mf))
    return _assemble(pC, B, Z, E, Mf, dim_hc, poisson_center(a).dim, window=r)


def thm1_check(j: SuperAlgebra) -> dict:
    """Compare ``dim HC(J)`` with ``dim H2(rtkk(J))`` and push cyclic cocycles through the pairing.

    Every cyclic cocycle ``(|)`` becomes the pairing ``(x-|y+) = (x|y)`` on
    ``J- x J+``, which is extended to a 2-cocycle of the TKK algebra;
    coboundaries have to land in coboundaries, and the induced map on
    cohomology has to be injective.
    """
    from .constructions import rtkk
    from .liecohomology import eq1_extension, h2
    _require_jordan(j, "thm1_check")
    if j.windowed():
        raise AlgebraError("thm1_check needs a finite-dimensional Jordan superalgebra")
    rep = hc(j)
    L = rtkk(j)
    lrep = h2(L)
    n = j.dim
    m = L.meta["tkk"]["m"]
    plus = lambda i: n + m + i  # noqa: E731
    fc, lfc = rep.coords, lrep.coords

    def lift(vec):
        pairing = {}
        for x in range(n):
            for y in range(n):
                v = fc.value(vec, x, y)
                if v:
                    pairing[(x, plus(y))] = v
        return eq1_extension(L, pairing, lfc)

    images_c = [lift(b) for b in rep.cocycles.basis]
    images_b = [lift(b) for b in rep.coboundaries.basis]
    Zl, Bl = lrep.cocycle_basis, lrep.coboundary_basis
    all_cocycles = all(Zl.contains(v) for v in images_c)
    cob_ok = all(Bl.contains(v) for v in images_b)
    img = span(images_c, lfc.size)
    injective = img.dim == rep.dim_cocycles
    induced = subspace_sum(img, Bl).dim - Bl.dim
    ok = lrep.dim_h2 == rep.dim_hc and all_cocycles and cob_ok and injective and induced == rep.dim_hc
    return {"dim_hc": rep.dim_hc, "dim_h2": lrep.dim_h2, "dim_c": rep.dim_cocycles, "dim_b": rep.dim_coboundaries,
            "dim_c2": lrep.dim_cocycles, "dim_b2": lrep.dim_coboundaries, "lifts_are_cocycles": all_cocycles,
            "coboundaries_to_coboundaries": cob_ok, "injective": injective, "induced_rank": induced,
            "consistent": ok}


def support_pattern_check(l: SuperAlgebra, fc: FormCoords, vec: Mapping[int, Scalar]) -> dict:
    """Every nonzero ``(a xi_p | b xi_t)`` with ``p != t`` needs ``p``, ``t`` disjoint with union ``{1..n}``."""
    gf = l.meta.get("grassmann_factor")
    if gf is None:
        src = l.meta.get("bracket_source")
        gf = src.meta.get("grassmann_factor") if src is not None else None
    if gf is None:
        raise AlgebraError("support_pattern_check needs an algebra of the form A (x) G(n)")
    n, pairs = gf["n"], gf["pairs"]
    full = set(range(1, n + 1))
    bad = []
    for (x, y), v in fc.to_pairs(vec).items():
        p, t = set(pairs[x][1]), set(pairs[y][1])
        if p != t and (p & t or (p | t) != full):
            bad.append((l.basis.names[x], l.basis.names[y]))
    return {"passed": not bad, "violations": bad[:10], "count": len(bad)}

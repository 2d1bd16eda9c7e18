"""Second cohomology of Lie superalgebras with trivial coefficients.

Forms are even and super-skew (see ``forms``).  A 2-cocycle satisfies

    ([a,b]|c) + (-1)^{|a|(|b|+|c|)}([b,c]|a) + (-1)^{|c|(|a|+|b|)}([c,a]|b) = 0

and coboundaries are ``lambda([a,b])``.  The Lie bracket of ``l`` is its
product table (``lie_view`` converts a bracket-carrying algebra).

Windowed algebras: variables live on the pairs of a chosen index set and a
triple contributes a constraint only when every bracket it needs is
defined and every pair it touches is a variable ("safe" triples).  Dropped
constraints can only enlarge the solution space, so windowed numbers are
estimates and are reported together with a stabilization table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .exactq import (Echelon, Scalar, SolutionSpace, SparseMatrix, is_subspace, kernel, project, qstr,
                     quotient_dim, span, subspace_intersect)
from .forms import FormCoords
from .superalgebra import AlgebraError, OutOfWindow, SuperAlgebra, sign

SCHEMA_KEYS = ("dim_c2", "dim_b2", "dim_h2")


def _require_lie(l: SuperAlgebra, who: str):
    if "lie" not in l.kinds:
        raise AlgebraError("%s needs an algebra tagged lie (got %s)" % (who, l.name or "untagged algebra"))


@dataclass
class CocycleReport:
    dim_cocycles: int
    dim_coboundaries: int
    dim_h2: int
    cocycle_basis: SolutionSpace
    coboundary_basis: SolutionSpace
    coords: FormCoords = field(repr=False)
    window: Optional[int] = None
    table: Optional[List[dict]] = None
    stabilized: Optional[bool] = None
    estimate: bool = False

    def to_dict(self) -> dict:
        out = {"dim_c2": self.dim_cocycles, "dim_b2": self.dim_coboundaries, "dim_h2": self.dim_h2}
        if self.window is not None:
            out["window"] = self.window
        if self.table is not None:
            out["table"] = self.table
            out["stabilized"] = bool(self.stabilized)
        if self.estimate:
            out["estimate"] = True
        return out


# --- constraint rows -------------------------------------------------------

def _structural_zero(fc: FormCoords, i: int, j: int) -> bool:
    p = fc.parities
    return p[i] != p[j] or (i == j and not p[i])


def _term(fc: FormCoords, row: Dict[int, Scalar], coef: Scalar, i: int, j: int, drop_unknown: bool) -> bool:
    """Add ``coef * (e_i|e_j)``; return False when the pair is an unknown outside the layout."""
    if fc.lookup(i, j) is None:
        if drop_unknown and not _structural_zero(fc, i, j):
            return False
        return True
    fc.add_term(row, coef, i, j)
    return True


def cocycle_rows(l: SuperAlgebra, fc: FormCoords, triples: Optional[Iterable[Tuple[int, int, int]]] = None,
                 drop_unknown: bool = True, stats: Optional[dict] = None) -> Iterator[Dict[int, Scalar]]:
    """Cocycle-identity rows over sorted triples of ``fc.indices`` (or the given triples).

    Because the identity is super-alternating in its three arguments,
    sorted triples with repetition already give the full system.
    """
    par = l.parities
    prod = l.product
    if triples is None:
        idx = fc.indices

        def gen():
            for x, a in enumerate(idx):
                for y in range(x, len(idx)):
                    b = idx[y]
                    for c in idx[y:]:
                        yield a, b, c
        triples = gen()
    skipped = 0
    for a, b, c in triples:
        if (par[a] + par[b] + par[c]) % 2:
            continue
        try:
            ab, bc, ca = prod.get(a, b), prod.get(b, c), prod.get(c, a)
        except OutOfWindow:
            skipped += 1
            continue
        row: Dict[int, Scalar] = {}
        ok = True
        s2 = sign(par[a] * (par[b] + par[c]))
        s3 = sign(par[c] * (par[a] + par[b]))
        for vec, other, s in ((ab, c, 1), (bc, a, s2), (ca, b, s3)):
            for k, v in vec.items():
                if not _term(fc, row, s * v, k, other, drop_unknown):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            skipped += 1
            continue
        if row:
            yield row
    if stats is not None:
        stats["skipped"] = stats.get("skipped", 0) + skipped


def _solve(rows: Iterable[Dict[int, Scalar]], ncols: int, label: str) -> SolutionSpace:
    return kernel(SparseMatrix.from_rows(list(rows), ncols), label)


def _default_coords(l: SuperAlgebra, indices=None) -> FormCoords:
    return FormCoords.of(l, indices=indices)


def two_cocycles(l: SuperAlgebra, coords: Optional[FormCoords] = None, stats: Optional[dict] = None) -> SolutionSpace:
    """All even super-skew forms satisfying the cocycle identity (on safe triples)."""
    _require_lie(l, "two_cocycles")
    fc = coords or _default_coords(l)
    return _solve(cocycle_rows(l, fc, stats=stats), fc.size, "Z2(%s)" % l.name)


def coboundary_form(l: SuperAlgebra, fc: FormCoords, functional: Mapping[int, Scalar]) -> Optional[Dict[int, Scalar]]:
    """Coordinates of ``lambda([a,b])``; None if some needed bracket is undefined."""
    vec: Dict[int, Scalar] = {}
    for k, (i, j) in enumerate(fc.pairs):
        try:
            br = l.product.get(i, j)
        except OutOfWindow:
            if any(functional.values()):
                return None
            continue
        v = sum(c * functional.get(t, 0) for t, c in br.items())
        if v:
            vec[k] = v
    return vec


def two_coboundaries(l: SuperAlgebra, coords: Optional[FormCoords] = None,
                     functionals: Optional[Sequence[int]] = None) -> SolutionSpace:
    """Span of ``e_k^*([a,b])`` over even basis functionals ``k``.

    Odd functionals give odd forms, which lie outside the even form space.
    """
    _require_lie(l, "two_coboundaries")
    fc = coords or _default_coords(l)
    ks = functionals if functionals is not None else [k for k in range(l.dim) if not l.parity(k)]
    # transpose the bracket table once: k -> {var: coefficient}
    cols: Dict[int, Dict[int, Scalar]] = {k: {} for k in ks}
    kset = set(ks)
    bad = set()
    for v, (i, j) in enumerate(fc.pairs):
        try:
            br = l.product.get(i, j)
        except OutOfWindow:
            bad.add(v)
            continue
        for t, c in br.items():
            if t in kset:
                cols[t][v] = c
    if bad:
        raise AlgebraError("two_coboundaries: layout contains pairs with undefined brackets")
    return span([cols[k] for k in ks], fc.size, "B2(%s)" % l.name)


def h2(l: SuperAlgebra, coords: Optional[FormCoords] = None) -> CocycleReport:
    """dim Z2, dim B2 and dim H2 = dim Z2 - dim(Z2 ∩ B2).  Windowed input goes to ``windowed_h2``."""
    _require_lie(l, "h2")
    if coords is None and l.windowed():
        return windowed_h2(l)
    fc = coords or _default_coords(l)
    cz = two_cocycles(l, fc)
    cb = two_coboundaries(l, fc)
    if not is_subspace(cb, cz):
        raise AlgebraError("coboundaries are not cocycles on %s (bracket is not Lie?)" % l.name)
    d = quotient_dim(cb, cz)
    return CocycleReport(cz.dim, cb.dim, d, cz, cb, fc, estimate=l.windowed())


def is_cocycle(l: SuperAlgebra, fc: FormCoords, vec: Mapping[int, Scalar]) -> Tuple[bool, Optional[tuple]]:
    """Evaluate the cocycle identity directly; return (ok, witness triple)."""
    idx = fc.indices
    par = l.parities
    for x, a in enumerate(idx):
        for y in range(x, len(idx)):
            b = idx[y]
            for c in idx[y:]:
                if (par[a] + par[b] + par[c]) % 2:
                    continue
                try:
                    ab, bc, ca = l.product.get(a, b), l.product.get(b, c), l.product.get(c, a)
                except OutOfWindow:
                    continue
                tot = (fc.pair_value(vec, ab, {c: 1})
                       + sign(par[a] * (par[b] + par[c])) * fc.pair_value(vec, bc, {a: 1})
                       + sign(par[c] * (par[a] + par[b])) * fc.pair_value(vec, ca, {b: 1}))
                if tot:
                    names = l.basis.names
                    return False, (names[a], names[b], names[c])
    return True, None


# --- universal central extension -----------------------------------------

def is_perfect(l: SuperAlgebra) -> bool:
    ech = Echelon(l.dim)
    for (i, j), row in l.product.table.items():
        if ech.add(row) and ech.rank == l.dim:
            return True
    return ech.rank == l.dim


def uce_center_dim(l: SuperAlgebra) -> int:
    """Dimension of the center of the universal central extension.

    Works in the even part of ``L (x) L`` (ordered tensors of equal-parity
    basis elements): ``K`` is the kernel of ``x (x) y -> [x,y]`` and ``V`` is
    spanned by super-symmetric tensors and Jacobi tensors.  The answer is
    ``dim K - dim (K ∩ V)``.
    """
    _require_lie(l, "uce_center_dim")
    if l.windowed():
        raise AlgebraError("uce_center_dim needs a finite-dimensional algebra")
    if not is_perfect(l):
        raise AlgebraError("%s is not perfect ([L,L] != L)" % l.name)
    n = l.dim
    par = l.parities
    tens = [(i, j) for i in range(n) for j in range(n) if par[i] == par[j]]
    tidx = {p: k for k, p in enumerate(tens)}
    T = len(tens)
    # bracket map: rows = target basis, cols = tensors
    rows: Dict[int, Dict[int, Scalar]] = {}
    for k, (i, j) in enumerate(tens):
        for t, c in l.product.get(i, j).items():
            rows.setdefault(t, {})[k] = c
    K = kernel(SparseMatrix.from_rows(list(rows.values()), T), "K")
    gens: List[Dict[int, Scalar]] = []
    for i in range(n):
        for j in range(i, n):
            if par[i] != par[j]:
                continue
            v = {tidx[(i, j)]: 1}
            k2 = tidx[(j, i)]
            v[k2] = v.get(k2, 0) + sign(par[i] * par[j])
            gens.append({k: c for k, c in v.items() if c})

    def tensor(vec: Mapping[int, Scalar], other: int, s: int, out: Dict[int, Scalar]):
        for t, c in vec.items():
            key = tidx.get((t, other))
            if key is None:
                continue  # odd tensor; cannot occur for even total parity
            out[key] = out.get(key, 0) + s * c

    for a in range(n):
        for b in range(a, n):
            for c in range(b, n):
                if (par[a] + par[b] + par[c]) % 2:
                    continue
                out: Dict[int, Scalar] = {}
                tensor(l.product.get(a, b), c, 1, out)
                tensor(l.product.get(b, c), a, sign(par[a] * (par[b] + par[c])), out)
                tensor(l.product.get(c, a), b, sign(par[c] * (par[a] + par[b])), out)
                out = {k: v for k, v in out.items() if v}
                if out:
                    gens.append(out)
    V = span(gens, T, "V")
    return K.dim - subspace_intersect(K, V).dim


# --- extension from the -2,2 pairing -----------------------------------------------------

def _components(l: SuperAlgebra):
    degs = l.basis.degrees
    if degs is None:
        raise AlgebraError("eq1_extension needs a graded algebra (basis degrees)")
    comp = {d: [i for i, x in enumerate(degs) if x == d] for d in (-2, 0, 2)}
    if any(x not in (-2, 0, 2) for x in degs):
        raise AlgebraError("eq1_extension needs components only in degrees -2, 0, 2")
    return comp[-2], comp[0], comp[2]


def eq1_residual(l: SuperAlgebra, pairing: Mapping[Tuple[int, int], Scalar], a: int, b: int, c: int, d: int) -> Scalar:
    """LHS - RHS of the four-term identity for ``a, c`` of degree -2 and ``b, d`` of degree 2."""
    par = l.parities
    br = l.product.apply

    def P(x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Scalar:
        return sum(u * w * pairing.get((i, j), 0) for i, u in x.items() for j, w in y.items())

    A, B, C, D = {a: 1}, {b: 1}, {c: 1}, {d: 1}
    cd = br(C, D)
    ab = br(A, B)
    s = sign(par[b] * (par[c] + par[d]))
    lhs = P(br(A, cd), B) + s * P(A, br(B, cd))
    rhs = s * P(br(ab, C), D) + sign(par[a] * par[c] + par[b] * par[d]) * P(C, br(ab, D))
    return lhs - rhs


def eq1_extension(l: SuperAlgebra, pairing: Mapping[Tuple[int, int], Scalar],
                  coords: Optional[FormCoords] = None) -> Dict[int, Scalar]:
    """Extend a pairing on ``L_-2 x L_2`` to a 2-cocycle on ``L = L_-2 + L_0 + L_2``.

    ``pairing[(x, y)]`` is ``(e_x|e_y)`` for ``x`` of degree -2 and ``y`` of
    degree 2.  On ``L_0`` the extension is

        ([a,b]|rho) = (a|[b,rho]) + (-1)^{|b||rho|}([a,rho]|b),

    which is what the cocycle identity forces.  Components of degree sum
    nonzero are paired to zero.
    """
    _require_lie(l, "eq1_extension")
    lm, l0, lp = _components(l)
    par = l.parities
    pm, pp = set(lm), set(lp)
    for (x, y), v in pairing.items():
        if v and (x not in pm or y not in pp):
            raise AlgebraError("pairing must be supported on L_-2 x L_2")
        if v and par[x] != par[y]:
            raise AlgebraError("pairing is not even")
    for a in lm:
        for b in lp:
            for c in lm:
                for d in lp:
                    r = eq1_residual(l, pairing, a, b, c, d)
                    if r:
                        nm = l.basis.names
                        raise AlgebraError("pairing violates the four-term identity at (%s, %s, %s, %s), residual %s"
                                           % (nm[a], nm[b], nm[c], nm[d], qstr(r)))
    # express the L_0 basis through brackets [x, y], x in L_-2, y in L_2
    from .constructions import Coordinatizer
    ech = Echelon(l.dim)
    gens, vecs = [], []
    for x in lm:
        for y in lp:
            v = l.product.get(x, y)
            if v and ech.add(v):
                gens.append((x, y))
                vecs.append(v)
    if len(gens) != len(l0):
        raise AlgebraError("L_0 is not spanned by [L_-2, L_2]")
    coord = Coordinatizer(vecs, l.dim)
    br = l.product.apply

    def P(x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Scalar:
        return sum(u * w * pairing.get((i, j), 0) for i, u in x.items() for j, w in y.items())

    def psi_bracket(a: int, b: int, rho: int) -> Scalar:
        R = {rho: 1}
        s = sign(par[b] * par[rho])
        # ([a,rho]|b) with [a,rho] in L_-2 and b in L_2
        return P({a: 1}, br({b: 1}, R)) + s * P(br({a: 1}, R), {b: 1})

    values: Dict[Tuple[int, int], Scalar] = {}
    for (x, y), v in pairing.items():
        if v:
            values[(x, y)] = v
            values[(y, x)] = -sign(par[x] * par[y]) * v
    for k in l0:
        cs = coord.coords({k: 1})
        for r in l0:
            if par[k] != par[r]:
                continue
            tot = 0
            for g, c in cs.items():
                a, b = gens[g]
                tot += c * psi_bracket(a, b, r)
            if tot:
                values[(k, r)] = tot
    fc = coords or FormCoords.of(l)
    vec = fc.from_pairs(values)  # raises if the L_0 block is not super-skew
    ok, wit = is_cocycle(l, fc, vec)
    if not ok:
        raise AlgebraError("extension is not a 2-cocycle (witness %s)" % (wit,))
    return vec


def restrict_pairing(l: SuperAlgebra, fc: FormCoords, vec: Mapping[int, Scalar]) -> Dict[Tuple[int, int], Scalar]:
    lm, _, lp = _components(l)
    out = {}
    for x in lm:
        for y in lp:
            v = fc.value(vec, x, y)
            if v:
                out[(x, y)] = v
    return out


# --- graded solver ---------------------------------------------------------

def grading_degrees(l: SuperAlgebra, h: Optional[Mapping[int, Scalar]] = None) -> List[Optional[Scalar]]:
    """Eigenvalues of ``ad h`` on the basis; raises unless ``ad h`` is diagonal there.

    Boundary elements whose ``[h, x]`` leaves the window get ``None``.
    """
    h = h if h is not None else l.meta.get("grading_element")
    if not h:
        raise AlgebraError("%s has no designated grading element" % l.name)
    out = []
    for k in range(l.dim):
        try:
            img = l.product.apply(h, {k: 1})
        except OutOfWindow:
            out.append(None)
            continue
        if any(t != k for t in img):
            raise AlgebraError("ad h is not diagonal on %s" % l.basis.names[k])
        out.append(img.get(k, 0))
    return out


def stabilized(values: Sequence[int], run: int = 3) -> bool:
    return len(values) >= run and len(set(values[-run:])) == 1


def _invariance_rows(l: SuperAlgebra, fc: FormCoords, g: Mapping[int, Scalar]):
    """``([g,x]|y) + (x|[g,y]) = 0`` for an even element ``g``."""
    idx = fc.indices
    gx = {x: l.product.apply(g, {x: 1}) for x in idx}
    for a, x in enumerate(idx):
        for y in idx[a:]:
            row: Dict[int, Scalar] = {}
            fc.add_pairing(row, 1, gx[x], {y: 1})
            fc.add_pairing(row, 1, {x: 1}, gx[y])
            if row:
                yield row


def graded_two_cocycles(l: SuperAlgebra, d: int, invariance: Sequence[Mapping[int, Scalar]] = (),
                        h: Optional[Mapping[int, Scalar]] = None) -> Tuple[SolutionSpace, List[dict], CocycleReport]:
    """Degree-restricted 2-cocycles on growing sub-windows ``|deg| <= d'``, ``d' = 1..d``.

    Unknowns pair only complementary degrees (the degree-vanishing lemma
    for algebras with a grading element); optional even elements in
    ``invariance`` add ``ad g``-invariance constraints.  Returns the cocycle
    space for ``d' = d``, the per-window table, and the final report.
    """
    _require_lie(l, "graded_two_cocycles")
    degs = grading_degrees(l, h)
    present = sorted(set(x for x in degs if x is not None))
    if d < 1:
        raise AlgebraError("graded_two_cocycles needs d >= 1")
    if not present or -d < min(present) or d > max(present):
        raise AlgebraError("window too small for d=%d (degrees %s..%s)" % (d, min(present), max(present)))
    table = []
    report = None
    space = None
    for dd in range(1, d + 1):
        idx = [i for i, x in enumerate(degs) if x is not None and abs(x) <= dd]
        fc = FormCoords.of(l, indices=idx, allow=lambda i, j: degs[i] + degs[j] == 0)
        stats: dict = {}
        rows = list(cocycle_rows(l, fc, drop_unknown=False, stats=stats))
        for g in invariance:
            rows.extend(_invariance_rows(l, fc, g))
        C = _solve(rows, fc.size, "Z2_graded(%s, %d)" % (l.name, dd))
        zero_deg = [k for k in idx if degs[k] == 0 and not l.parity(k)]
        B = two_coboundaries(l, fc, zero_deg)
        B = subspace_intersect(B, C) if invariance else B
        if not is_subspace(B, C):
            raise AlgebraError("graded coboundaries are not cocycles at d=%d" % dd)
        for b in C.basis:
            for k in b:
                i, j = fc.pairs[k]
                if degs[i] + degs[j] != 0:
                    raise AlgebraError("graded solver produced a non-complementary pairing")
        hd = quotient_dim(B, C)
        table.append({"d": dd, "unknowns": fc.size, "dim_c2": C.dim, "dim_b2": B.dim, "dim_h2": hd,
                      "skipped": stats.get("skipped", 0)})
        space = C
        report = CocycleReport(C.dim, B.dim, hd, C, B, fc, window=dd, estimate=True)
    report.table = table
    report.stabilized = stabilized([r["dim_h2"] for r in table])
    return space, table, report


def windowed_h2(l: SuperAlgebra, radius: Optional[int] = None) -> CocycleReport:
    """H2 estimate with the full (ungraded) solver.

    Cocycles are solved over every pair of the window using safe triples,
    then projected to the pairs of the core; the estimate is
    ``dim pi(C) - dim(pi(C) ∩ B_core)``.
    """
    _require_lie(l, "windowed_h2")
    w = l.meta.get("window")
    if w is None or not l.windowed():
        return h2(l)
    r = w.radius if radius is None else radius
    full = FormCoords.of(l)
    stats: dict = {}
    C = _solve(cocycle_rows(l, full, stats=stats), full.size, "Z2(%s)" % l.name)
    cc = FormCoords.of(l, indices=w.core(r))
    pC = project(C, [full.index[p] for p in cc.pairs], "pi(Z2)")
    B = two_coboundaries(l, cc)
    if not is_subspace(B, pC):
        raise AlgebraError("core coboundaries are not projected cocycles")
    return CocycleReport(pC.dim, B.dim, quotient_dim(B, pC), pC, B, cc, window=r, estimate=True)


def h2_sweep(builder, params: Sequence[int], radius=None) -> List[dict]:
    """Windowed H2 estimates of ``builder(p)`` for each parameter."""
    rows = []
    for p in params:
        rep = windowed_h2(builder(p), radius)
        rows.append({"param": p, "dim_c2": rep.dim_cocycles, "dim_b2": rep.dim_coboundaries, "dim_h2": rep.dim_h2})
    return rows

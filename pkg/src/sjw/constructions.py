"""Factories for the algebras used throughout: Grassmann and Poisson
Grassmann algebras, tensor products, truncated and windowed Laurent
polynomials, windowed Hamiltonian algebras, vector-type / contact / Jordan
brackets with their Grassmann extensions, Kantor doubles and reduced TKK
Lie superalgebras.

Every factory verifies its advertised identities before tagging the result.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exactq import Echelon, Scalar, SparseMatrix, kernel
from .superalgebra import (
    AlgebraError, BasisElement, BilinearMap, LinearOperator, OutOfWindow, SuperAlgebra, SuperBasis,
    Vec, _triple_basis, check_contact, check_derivation, check_jordan_bracket, check_jordan_super,
    check_lie_super, sign, vadd, vscale, verify_and_tag,
)

Word = Tuple[int, ...]


# --- Grassmann words ------------------------------------------------------

def words(n: int) -> List[Word]:
    """All subsets of {1..n}, ordered by size then lexicographically."""
    out = []
    for k in range(n + 1):
        out.extend(itertools.combinations(range(1, n + 1), k))
    return out


def word_name(w: Word) -> str:
    return "".join("x%d" % i for i in w) if w else "1"


def word_mul(p: Word, t: Word) -> Tuple[int, Optional[Word]]:
    """``xi_p * xi_t = s * xi_{p u t}``; returns ``(0, None)`` on overlap."""
    if set(p) & set(t):
        return 0, None
    inv = sum(1 for x in p for y in t if x > y)
    return sign(inv), tuple(sorted(p + t))


def _wvmul(x: Dict[Word, Scalar], y: Dict[Word, Scalar]) -> Dict[Word, Scalar]:
    out: Dict[Word, Scalar] = {}
    for p, a in x.items():
        for t, b in y.items():
            s, w = word_mul(p, t)
            if s:
                nv = out.get(w, 0) + s * a * b
                if nv:
                    out[w] = nv
                else:
                    out.pop(w)
    return out


def _wvadd(x, y, c=1):
    out = dict(x)
    for k, v in y.items():
        nv = out.get(k, 0) + c * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


@lru_cache(maxsize=None)
def _gbr(x: Word, y: Word) -> Tuple[Tuple[Word, Scalar], ...]:
    """Poisson bracket on G(n) determined by ``[x_i, x_j] = delta_ij`` and Leibniz."""
    if not x or not y:
        return ()
    if len(x) == 1:
        if len(y) == 1:
            return (((), 1),) if x == y else ()
        # [x_i, Y] = -(-1)^{|Y|} [Y, x_i]
        r = dict(_gbr(y, x))
        s = -sign(len(y))
        return tuple(sorted((w, s * c) for w, c in r.items()))
    head, rest = (x[0],), x[1:]
    # [x_h x_r, Y] = x_h [x_r, Y] + (-1)^{|r||Y|} [x_h, Y] x_r
    t1 = _wvmul({head: 1}, dict(_gbr(rest, y)))
    t2 = _wvmul(dict(_gbr(head, y)), {rest: 1})
    out = _wvadd(t1, t2, sign(len(rest) * len(y)))
    return tuple(sorted(out.items()))


def grassmann_bracket(x: Word, y: Word) -> Dict[Word, Scalar]:
    return dict(_gbr(tuple(x), tuple(y)))


# --- derivations ----------------------------------------------------------

@dataclass(frozen=True)
class DerivationSpec:
    """An even derivation given by the images of basis vectors."""

    op: LinearOperator

    def apply(self, x: Vec) -> Vec:
        return self.op.apply(x)

    def verify(self, a: SuperAlgebra) -> None:
        par = a.parities
        for i, im in enumerate(self.op.images):
            if any(par[k] != par[i] for k in im):
                raise AlgebraError("derivation is not parity-even")
        rep = check_derivation(a, self.op, 0)
        if not rep.passed:
            raise AlgebraError("map fails the derivation law at %s" % (rep.witness,))


# --- basic algebras -------------------------------------------------------

def field_algebra() -> SuperAlgebra:
    return grassmann(0)


def grassmann(n: int) -> SuperAlgebra:
    if n < 0:
        raise AlgebraError("grassmann(n) needs n >= 0")
    ws = words(n)
    idx = {w: i for i, w in enumerate(ws)}
    basis = SuperBasis([BasisElement(word_name(w), len(w) % 2) for w in ws])
    table = {}
    for p in ws:
        for t in ws:
            s, w = word_mul(p, t)
            if s:
                table[(idx[p], idx[t])] = {idx[w]: s}
    alg = SuperAlgebra(basis, BilinearMap(len(ws), table), unit=0, name="grassmann(%d)" % n,
                       meta={"words": ws, "grassmann_n": n})
    return verify_and_tag(alg, "associative-commutative")


def poisson_grassmann(n: int) -> SuperAlgebra:
    g = grassmann(n)
    ws = g.meta["words"]
    idx = {w: i for i, w in enumerate(ws)}
    table = {}
    for p in ws:
        for t in ws:
            r = grassmann_bracket(p, t)
            if r:
                table[(idx[p], idx[t])] = {idx[w]: c for w, c in r.items()}
    alg = g.replace(bracket=BilinearMap(len(ws), table, which="bracket"), name="poisson_grassmann(%d)" % n,
                    kinds=g.kinds)
    return verify_and_tag(alg, "poisson")


def truncated_poly(n_max: int) -> SuperAlgebra:
    """F[t]/(t^n_max) carrying the Euler derivation t d/dt."""
    if n_max < 1:
        raise AlgebraError("truncated_poly needs n_max >= 1")
    names = ["1", "t"] + ["t^%d" % k for k in range(2, n_max)]
    basis = SuperBasis([BasisElement(names[k], 0) for k in range(n_max)])
    table = {(i, j): {i + j: 1} for i in range(n_max) for j in range(n_max) if i + j < n_max}
    d = DerivationSpec(LinearOperator(n_max, [{k: k} if k else {} for k in range(n_max)]))
    alg = SuperAlgebra(basis, BilinearMap(n_max, table), unit=0, name="truncated_poly(%d)" % n_max,
                       meta={"derivation": d})
    d.verify(alg)
    return verify_and_tag(alg, "associative-commutative")


def vector_type_bracket(a: SuperAlgebra, delta: Optional[DerivationSpec] = None) -> SuperAlgebra:
    """Install ``[x,y] = delta(x) y - x delta(y)``."""
    if delta is None:
        delta = a.meta.get("derivation")
        if delta is None:
            raise AlgebraError("vector_type needs an algebra carrying a derivation")
    if a.unit is None or "associative-commutative" not in a.kinds:
        raise AlgebraError("vector_type needs a unital associative supercommutative algebra")
    if a.windowed():
        raise AlgebraError("vector_type is not available on windowed algebras; use laurent_window")
    delta.verify(a)
    n = a.dim
    table = {}
    for i in range(n):
        di = delta.apply({i: 1})
        for j in range(n):
            dj = delta.apply({j: 1})
            r = vadd(a.mul(di, {j: 1}), a.mul({i: 1}, dj), -1)
            if r:
                table[(i, j)] = r
    meta = dict(a.meta)
    meta["derivation"] = delta
    out = SuperAlgebra(a.basis, a.product, unit=a.unit, bracket=BilinearMap(n, table, which="bracket"),
                       kinds=a.kinds, name="vector_type(%s)" % a.name, meta=meta)
    return verify_and_tag(out, "contact", "jordan-bracket")


# --- windows --------------------------------------------------------------

@dataclass(frozen=True)
class GradedWindow:
    """Truncation descriptor of a Z-graded model.

    ``degrees`` lists the degree of every basis element; products that
    would leave ``[min_degree, max_degree]`` are recorded as undefined pairs
    in the structure constants (never truncated to zero).
    """

    min_degree: int
    max_degree: int
    degrees: Tuple[int, ...]
    product_shift: int = 0
    bracket_shift: int = 0
    radius: int = 0
    symmetric: bool = True

    def component(self, deg: int) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d == deg]

    def core(self, radius: Optional[int] = None) -> List[int]:
        """Indices of the inner part of the window used for projected estimates."""
        r = self.radius if radius is None else radius
        if self.symmetric:
            return [i for i, d in enumerate(self.degrees) if abs(d) <= r]
        return [i for i, d in enumerate(self.degrees) if d <= r]

    def safe_pair(self, a: SuperAlgebra, i: int, j: int, which: str = "product") -> bool:
        m = a.product if which == "product" else a.bracket
        return m.defined(i, j)

    def to_dict(self):
        return {"min_degree": self.min_degree, "max_degree": self.max_degree, "radius": self.radius}


def laurent_window(d: int) -> SuperAlgebra:
    """Span of t^k, |k| <= d, with the vector-type bracket ``f'g - fg'``."""
    if d < 1:
        raise AlgebraError("laurent_window needs d >= 1")
    ks = list(range(-d, d + 1))
    idx = {k: i for i, k in enumerate(ks)}

    def nm(k):
        return "1" if k == 0 else ("t" if k == 1 else "t^%d" % k)

    basis = SuperBasis([BasisElement(nm(k), 0, k) for k in ks])
    n = len(ks)
    prod, pund, br, bund = {}, [], {}, []
    for a in ks:
        for b in ks:
            if abs(a + b) <= d:
                prod[(idx[a], idx[b])] = {idx[a + b]: 1}
            else:
                pund.append((idx[a], idx[b]))
            if a == b:
                continue
            if abs(a + b - 1) <= d:
                br[(idx[a], idx[b])] = {idx[a + b - 1]: a - b}
            else:
                bund.append((idx[a], idx[b]))
    win = GradedWindow(-d, d, tuple(ks), 0, -1, radius=d // 2)
    dspec = DerivationSpec(LinearOperator(n, [{idx[k - 1]: k} if (k and k - 1 >= -d) else {} for k in ks]))
    alg = SuperAlgebra(basis, BilinearMap(n, prod, pund), unit=idx[0],
                       bracket=BilinearMap(n, br, bund, which="bracket"), name="laurent_window(%d)" % d,
                       meta={"window": win, "product_shift": 0, "bracket_shift": -1,
                             "grading_element": {idx[1]: -1}, "derivation_window": dspec})
    return verify_and_tag(alg, "associative-commutative", "contact", "jordan-bracket")


def _monomials(n: int, N: int):
    out = []
    for deg in range(N + 1):
        for exps in itertools.product(range(deg + 1), repeat=2 * n):
            if sum(exps) == deg:
                out.append(exps)
    # stable order: by degree, then reverse lexicographic exponents
    out.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    return out


def _mono_name(e, n):
    parts = []
    for i in range(n):
        for sym, k in (("p%d" % (i + 1), e[i]), ("q%d" % (i + 1), e[n + i])):
            if k == 1:
                parts.append(sym)
            elif k > 1:
                parts.append("%s^%d" % (sym, k))
    return "*".join(parts) if parts else "1"


def hamiltonian_window(n: int, N: int) -> SuperAlgebra:
    """H_n = F[p, q] with ``[p_i, q_j] = delta_ij``, truncated to total degree <= N."""
    if n < 1 or N < 2:
        raise AlgebraError("hamiltonian_window needs n >= 1 and N >= 2")
    mons = _monomials(n, N)
    idx = {e: i for i, e in enumerate(mons)}
    dim = len(mons)
    basis = SuperBasis([BasisElement(_mono_name(e, n), 0, sum(e)) for e in mons])

    def add(e, f):
        return tuple(x + y for x, y in zip(e, f))

    prod, pund, br, bund = {}, [], {}, []
    for e in mons:
        for f in mons:
            i, j = idx[e], idx[f]
            g = add(e, f)
            if sum(g) <= N:
                prod[(i, j)] = {idx[g]: 1}
            else:
                pund.append((i, j))
            terms: Dict[int, Scalar] = {}
            out_of = False
            for k in range(n):
                # d f/dp_k * d g/dq_k - d f/dq_k * d g/dp_k
                for (u, v, s) in ((k, n + k, 1), (n + k, k, -1)):
                    if e[u] and f[v]:
                        h = list(g)
                        h[u] -= 1
                        h[v] -= 1
                        h = tuple(h)
                        if sum(h) > N:
                            out_of = True
                            continue
                        c = s * e[u] * f[v]
                        terms[idx[h]] = terms.get(idx[h], 0) + c
            if out_of:
                bund.append((i, j))
            else:
                terms = {k2: c for k2, c in terms.items() if c}
                if terms:
                    br[(i, j)] = terms
    win = GradedWindow(0, N, tuple(sum(e) for e in mons), 0, -2, radius=N // 2, symmetric=False)
    alg = SuperAlgebra(basis, BilinearMap(dim, prod, pund), unit=idx[tuple([0] * 2 * n)],
                       bracket=BilinearMap(dim, br, bund, which="bracket"),
                       name="hamiltonian_window(%d,%d)" % (n, N),
                       meta={"window": win, "product_shift": 0, "bracket_shift": -2})
    return verify_and_tag(alg, "associative-commutative", "poisson")


# --- tensor products ------------------------------------------------------

def _combined_window(a: SuperAlgebra, b: SuperAlgebra, pairs):
    wa, wb = a.meta.get("window"), b.meta.get("window")
    if wa is None and wb is None:
        return None
    da = wa.degrees if wa else (0,) * a.dim
    db = wb.degrees if wb else (0,) * b.dim
    degs = tuple(da[i] + db[j] for i, j in pairs)
    ref = wa or wb
    return GradedWindow(min(degs), max(degs), degs, ref.product_shift, ref.bracket_shift, ref.radius, ref.symmetric)


def tensor_poisson(a: SuperAlgebra, b: SuperAlgebra) -> SuperAlgebra:
    """Poisson structure on ``a (x) b``; basis ordered a-major."""
    for x in (a, b):
        if "poisson" not in x.kinds:
            raise AlgebraError("tensor needs Poisson inputs; %s is not tagged poisson" % x.name)
    pairs = [(i, j) for i in range(a.dim) for j in range(b.dim)]
    idx = {p: k for k, p in enumerate(pairs)}
    els = []
    for i, j in pairs:
        ea, eb = a.basis.elements[i], b.basis.elements[j]
        nm = ea.name if eb.name == "1" else (eb.name if ea.name == "1" else "%s⊗%s" % (ea.name, eb.name))
        if (eb.name == "1") and (ea.name == "1"):
            nm = "1"
        els.append((nm, (ea.parity + eb.parity) % 2))
    win = _combined_window(a, b, pairs)
    names = [e[0] for e in els]
    if len(set(names)) != len(names):
        names = ["%s⊗%s" % (a.basis.elements[i].name, b.basis.elements[j].name) for i, j in pairs]
    basis = SuperBasis([BasisElement(nm, p, win.degrees[k] if win else None)
                        for k, (nm, (_, p)) in enumerate(zip(names, els))])
    pa, pb = a.parities, b.parities
    prod, pund, br, bund = {}, [], {}, []

    def tens(x: Vec, y: Vec) -> Vec:
        return {idx[(i, j)]: c * d for i, c in x.items() for j, d in y.items()}

    for (i1, j1) in pairs:
        for (i2, j2) in pairs:
            k1, k2 = idx[(i1, j1)], idx[(i2, j2)]
            s = sign(pb[j1] * pa[i2])
            try:
                aa = a.product.get(i1, i2)
                bb = b.product.get(j1, j2)
                r = tens(aa, bb)
                if r:
                    prod[(k1, k2)] = vscale(r, s)
            except OutOfWindow:
                pund.append((k1, k2))
            try:
                r = vadd(tens(a.bracket.get(i1, i2), b.product.get(j1, j2)),
                         tens(a.product.get(i1, i2), b.bracket.get(j1, j2)))
                if r:
                    br[(k1, k2)] = vscale(r, s)
            except OutOfWindow:
                bund.append((k1, k2))
    unit = idx[(a.unit, b.unit)] if a.unit is not None and b.unit is not None else None
    meta = {}
    if win is not None:
        meta.update(window=win, product_shift=0)
    alg = SuperAlgebra(basis, BilinearMap(len(pairs), prod, pund), unit=unit,
                       bracket=BilinearMap(len(pairs), br, bund, which="bracket"),
                       name="tensor(%s,%s)" % (a.name, b.name),
                       meta=dict(meta, tensor_factors=(a, b)))
    return verify_and_tag(alg, "associative-commutative", "poisson")


# --- Grassmann extensions (Jordan / contact) ------------------------------

def _ext_coeff(kind: str) -> Callable[[int], Fraction]:
    if kind == "jordan":
        return lambda k: Fraction(k - 1)
    if kind == "contact":
        return lambda k: Fraction(k - 2, 2)
    raise AlgebraError("unknown extension kind %r" % kind)


def _grassmann_ext(a: SuperAlgebra, n: int, kind: str) -> SuperAlgebra:
    """A (x) G(n) with the bracket generated by the cross rule
    ``[xi_pi, a] = c_{|pi|} xi_pi a'`` and the Leibniz rule
    ``[xy, z] = x[y,z] + (-1)^{|y||z|}[x,z]y + xy z'``.
    """
    if a.unit is None or a.bracket is None:
        raise AlgebraError("Grassmann extension needs a unital algebra with bracket")
    c = _ext_coeff(kind)
    ws = words(n)
    pairs = [(i, w) for i in range(a.dim) for w in ws]
    idx = {p: k for k, p in enumerate(pairs)}
    N = len(pairs)
    pa = a.parities
    one = a.unit
    aw = a.meta.get("window")
    els = []
    for i, w in pairs:
        an = a.basis.elements[i].name
        if not w:
            nm = an
        elif i == one:
            nm = word_name(w)
        else:
            nm = "%s*%s" % (an, word_name(w))
        els.append(BasisElement(nm, (pa[i] + len(w)) % 2, aw.degrees[i] if aw else None))
    basis = SuperBasis(els)

    prod, pund = {}, []
    for (i, p) in pairs:
        for (j, t) in pairs:
            s, w = word_mul(p, t)
            k1, k2 = idx[(i, p)], idx[(j, t)]
            if not s:
                continue
            try:
                ab = a.product.get(i, j)
            except OutOfWindow:
                pund.append((k1, k2))
                continue
            s *= sign(len(p) * pa[j])
            if ab:
                prod[(k1, k2)] = {idx[(k, w)]: s * v for k, v in ab.items()}
    P = BilinearMap(N, prod, pund)
    mul = P.apply

    def E(v: Vec, w: Word) -> Vec:
        return {idx[(k, w)]: x for k, x in v.items()}

    def EW(wv: Dict[Word, Scalar]) -> Vec:
        return {idx[(one, w)]: x for w, x in wv.items()}

    dcache: Dict[int, Vec] = {}

    def dA(i: int) -> Vec:
        if i not in dcache:
            dcache[i] = a.bracket.get(i, one)
        return dcache[i]

    def bracket(i, p, j, t) -> Vec:
        kp, kt = len(p) % 2, len(t) % 2
        pai, pbj = pa[i], pa[j]
        ea, eb = E({i: 1}, ()), E({j: 1}, ())
        xp, xt = EW({p: 1}), EW({t: 1})
        # [b, xi_p] = -(-1)^{|b||p|} c_|p| xi_p b'
        cp = c(len(p))
        b_xp = vscale(mul(xp, E(dA(j), ())), -sign(pbj * kp) * cp) if cp else {}
        g = grassmann_bracket(t, p)
        t1 = vadd(mul(eb, EW(g)) if g else {}, mul(b_xp, xt) if b_xp else {}, sign(kt * kp))
        term1 = vscale(mul(ea, t1), -sign(kp * (pbj + kt)))
        # [b xi_t, a] = c_|t| b xi_t a' + (-1)^{|t||a|} [b,a] xi_t + b xi_t a'
        ct = c(len(t)) + 1
        yt = {}
        if ct:
            yt = vscale(mul(mul(eb, xt), E(dA(i), ())), ct)
        yt = vadd(yt, mul(E(a.bracket.get(j, i), ()), xt), sign(kt * pai))
        a_y = vscale(yt, -sign(pai * (pbj + kt)))
        term2 = vscale(mul(a_y, xp), sign(kp * (pbj + kt)))
        term3 = mul(mul(ea, xp), E(dA(j), t))
        return vadd(vadd(term1, term2), term3)

    br, bund = {}, []
    for (i, p) in pairs:
        for (j, t) in pairs:
            k1, k2 = idx[(i, p)], idx[(j, t)]
            try:
                r = bracket(i, p, j, t)
            except OutOfWindow:
                bund.append((k1, k2))
                continue
            if r:
                br[(k1, k2)] = r
    meta = {"grassmann_factor": {"base": a, "n": n, "pairs": pairs}, "product_shift": 0}
    if aw is not None:
        meta["window"] = GradedWindow(aw.min_degree, aw.max_degree, tuple(e.degree for e in els),
                                      aw.product_shift, aw.bracket_shift, aw.radius, aw.symmetric)
        if "grading_element" in a.meta:
            meta["grading_element"] = {idx[(k, ())]: v for k, v in a.meta["grading_element"].items()}
    return SuperAlgebra(basis, P, unit=idx[(one, ())], bracket=BilinearMap(N, br, bund, which="bracket"),
                        kinds={"associative-commutative"} & a.kinds,
                        name="%s_ext(%s,%d)" % (kind, a.name, n), meta=meta)


def jordan_ext(a: SuperAlgebra, n: int, verify: bool = True) -> SuperAlgebra:
    if n < 0:
        raise AlgebraError("n must be >= 0")
    if "jordan-bracket" not in a.kinds:
        rep = check_jordan_bracket(a)
        if not rep.passed:
            raise AlgebraError("jordan_ext needs a verified Jordan bracket; %s fails at %s" % (a.name, rep.witness))
        a = a.tagged("jordan-bracket")
    if n == 0:
        return a
    out = _grassmann_ext(a, n, "jordan")
    return verify_and_tag(out, "jordan-bracket") if verify else out


def contact_ext(a: SuperAlgebra, n: int, verify: bool = True) -> SuperAlgebra:
    if n < 0:
        raise AlgebraError("n must be >= 0")
    if "contact" not in a.kinds:
        rep = check_contact(a)
        if not rep.passed:
            raise AlgebraError("contact_ext needs a contact bracket; %s fails at %s" % (a.name, rep.witness))
        a = a.tagged("contact")
    if n == 0:
        return a
    out = _grassmann_ext(a, n, "contact")
    return verify_and_tag(out, "contact") if verify else out


def contact_to_jordan(a: SuperAlgebra, verify: bool = True) -> SuperAlgebra:
    """``<x,y> = [x,y] - 1/2 (D(x) y - x D(y))`` with ``D(x) = [x,1]``."""
    if "contact" not in a.kinds:
        rep = check_contact(a)
        if not rep.passed:
            raise AlgebraError("contact_to_jordan needs a contact bracket; fails at %s" % (rep.witness,))
    half = Fraction(1, 2)
    n = a.dim
    table, und = {}, []
    for i in range(n):
        for j in range(n):
            try:
                r = a.bracket.get(i, j)
                di, dj = a.deriv({i: 1}), a.deriv({j: 1})
                corr = vadd(a.mul(di, {j: 1}), a.mul({i: 1}, dj), -1)
            except OutOfWindow:
                und.append((i, j))
                continue
            r = vadd(r, corr, -half)
            if r:
                table[(i, j)] = r
    meta = dict(a.meta)
    meta["contact_source"] = a
    kinds = a.kinds - {"contact", "jordan-bracket", "poisson"}
    out = a.replace(bracket=BilinearMap(n, table, und, which="bracket"), kinds=kinds,
                    name="contact_to_jordan(%s)" % a.name, meta=meta)
    return verify_and_tag(out, "jordan-bracket") if verify else out


def jordan_to_contact(a: SuperAlgebra) -> SuperAlgebra:
    """Inverse shift: ``[x,y] = <x,y> + 1/2 (2<x,1> y - x 2<y,1>)``."""
    n = a.dim
    table, und = {}, []
    for i in range(n):
        for j in range(n):
            try:
                r = a.bracket.get(i, j)
                di, dj = vscale(a.deriv({i: 1}), 2), vscale(a.deriv({j: 1}), 2)
                corr = vadd(a.mul(di, {j: 1}), a.mul({i: 1}, dj), -1)
            except OutOfWindow:
                und.append((i, j))
                continue
            r = vadd(r, corr, Fraction(1, 2))
            if r:
                table[(i, j)] = r
    return a.replace(bracket=BilinearMap(n, table, und, which="bracket"), kinds=a.kinds - {"jordan-bracket"},
                     name="jordan_to_contact(%s)" % a.name)


# --- Kantor double --------------------------------------------------------

def kantor_double(a: SuperAlgebra, verify: bool = True, seed: int = 0) -> SuperAlgebra:
    """J = A + Av with a(bv) = abv, (bv)a = (-1)^{|a|} bav, (av)(bv) = (-1)^{|b|}[a,b]."""
    if a.bracket is None:
        raise AlgebraError("kantor needs a bracket-carrying algebra; %s has none" % (a.name or "?"))
    if a.unit is None:
        raise AlgebraError("kantor needs a unital algebra")
    n = a.dim
    pa = a.parities
    els = [BasisElement(e.name, e.parity, e.degree) for e in a.basis.elements]
    for i, e in enumerate(a.basis.elements):
        nm = "v" if i == a.unit else "%s*v" % e.name
        els.append(BasisElement(nm, (e.parity + 1) % 2, e.degree))
    basis = SuperBasis(els)
    table, und = {}, []

    def put(k1, k2, fn):
        try:
            r = fn()
        except OutOfWindow:
            und.append((k1, k2))
            return
        if r:
            table[(k1, k2)] = r

    for i in range(n):
        for j in range(n):
            put(i, j, lambda: dict(a.product.get(i, j)))
            put(i, n + j, lambda: {n + k: c for k, c in a.product.get(i, j).items()})
            # (a v) b = (-1)^{|b|} (ab) v
            put(n + i, j, lambda: {n + k: sign(pa[j]) * c for k, c in a.product.get(i, j).items()})
            put(n + i, n + j, lambda: {k: sign(pa[j]) * c for k, c in a.bracket.get(i, j).items()})
    meta = {"kantor_base": a, "half": n}
    if "window" in a.meta:
        w = a.meta["window"]
        meta["window"] = GradedWindow(w.min_degree, w.max_degree, tuple(e.degree for e in els), 0, 0,
                                      w.radius, w.symmetric)
    j = SuperAlgebra(basis, BilinearMap(2 * n, table, und), unit=a.unit, name="kantor(%s)" % a.name, meta=meta)
    if verify:
        rep = check_jordan_super(j, seed=seed)
        if not rep.passed:
            raise AlgebraError("Kantor double of %s is not Jordan: %s at %s" % (a.name, rep.clause, rep.witness))
        j = j.tagged("jordan")
    return j


# --- reduced TKK ----------------------------------------------------------

class Coordinatizer:
    """Coordinates with respect to a fixed independent (not necessarily echelon) family."""

    def __init__(self, vectors: Sequence[Vec], ambient: int):
        self.k = len(vectors)
        self.ambient = ambient
        self.ech = Echelon(ambient + self.k)
        for i, v in enumerate(vectors):
            row = dict(v)
            row[ambient + i] = 1
            if not self.ech.add(row):
                raise AlgebraError("Coordinatizer vectors are dependent")
        self.red = self.ech.reduced()

    def coords(self, v: Vec) -> Dict[int, Scalar]:
        rest = dict(v)
        aux: Dict[int, Scalar] = {}
        for lead in sorted(self.red):
            if lead >= self.ambient:
                break
            c = rest.get(lead, 0)
            if not c:
                continue
            for k, x in self.red[lead].items():
                if k < self.ambient:
                    nv = rest.get(k, 0) - c * x
                    if nv:
                        rest[k] = nv
                    else:
                        rest.pop(k, None)
                else:
                    aux[k] = aux.get(k, 0) - c * x
        if rest:
            raise AlgebraError("vector is outside the span")
        return {k - self.ambient: -x for k, x in aux.items() if x}


def rtkk(j: SuperAlgebra) -> SuperAlgebra:
    """Reduced Tits-Kantor-Koecher Lie superalgebra J- + delta(J-,J+) + J+.

    Basis order: J- (names ``a-``), middle (``D[a,b]`` = [a-, b+]), J+ (``a+``).
    Middle elements act on J- + J+ from the right: [x, M] = x M.
    """
    if "jordan" not in j.kinds:
        raise AlgebraError("rtkk needs a Jordan superalgebra (tagged jordan)")
    if j.unit is None:
        raise AlgebraError("rtkk needs a unital Jordan superalgebra")
    if j.windowed():
        raise AlgebraError("rtkk is only available for finite-dimensional algebras")
    n = j.dim
    par = j.parities
    T = {}
    for x in range(n):
        for y in range(n):
            for z in range(n):
                r = _triple_basis(j, x, y, z)
                if r:
                    T[(x, y, z)] = r
    D2 = 2 * n

    def delta_vec(a: int, b: int) -> Vec:
        """2 delta(a-, b+) as a flattened 2n x 2n image table (row = input)."""
        out = {}
        s = -sign(par[a] * par[b])
        for x in range(n):
            for k, c in T.get((x, b, a), {}).items():
                out[x * D2 + k] = 2 * s * c
            for k, c in T.get((x, a, b), {}).items():
                out[(n + x) * D2 + n + k] = 2 * c
        return out

    ech = Echelon(D2 * D2)
    chosen, vecs = [], []
    for a in range(n):
        for b in range(n):
            v = delta_vec(a, b)
            if v and ech.add(v):
                chosen.append((a, b))
                vecs.append(v)
    m = len(chosen)
    coord = Coordinatizer(vecs, D2 * D2)
    mpar = [(par[a] + par[b]) % 2 for a, b in chosen]
    ops = [LinearOperator.from_vector(D2, v) for v in vecs]

    total = 2 * n + m
    MID = lambda k: n + k  # noqa: E731
    PLUS = lambda i: n + m + i  # noqa: E731

    def jvec_to_l(v: Vec) -> Vec:
        return {(k if k < n else PLUS(k - n)): c for k, c in v.items()}

    lpar = list(par) + mpar + list(par)
    table: Dict[Tuple[int, int], Vec] = {}

    def put(i, k, v):
        if v:
            table[(i, k)] = v

    for a in range(n):
        for b in range(n):
            br = {MID(k): c for k, c in coord.coords(delta_vec(a, b)).items()}
            put(a, PLUS(b), br)
            put(PLUS(b), a, vscale(br, -sign(par[a] * par[b])))
    for k, op in enumerate(ops):
        for x in range(D2):
            img = jvec_to_l(op.images[x])
            lx = x if x < n else PLUS(x - n)
            put(lx, MID(k), img)
            put(MID(k), lx, vscale(img, -sign(lpar[lx] * mpar[k])))
    for k1, o1 in enumerate(ops):
        for k2, o2 in enumerate(ops):
            # right action: x [o1, o2] = (x o1) o2 - (-1)^{|o1||o2|} (x o2) o1
            s = sign(mpar[k1] * mpar[k2])
            comm = {}
            for x in range(D2):
                im = vadd(o2.apply(o1.images[x]), o1.apply(o2.images[x]), -s)
                for kk, c in im.items():
                    comm[x * D2 + kk] = c
            put(MID(k1), MID(k2), {MID(kk): c for kk, c in coord.coords(comm).items()})

    names = ([j.basis.elements[i].name + "-" for i in range(n)]
             + ["D[%s,%s]" % (j.basis.elements[a].name, j.basis.elements[b].name) for a, b in chosen]
             + [j.basis.elements[i].name + "+" for i in range(n)])
    degs = [-2] * n + [0] * m + [2] * n
    basis = SuperBasis([BasisElement(nm, p, d) for nm, p, d in zip(names, lpar, degs)])
    u = j.unit
    hcoords = coord.coords(delta_vec(u, u))
    meta = {
        "tkk": {"jordan": j, "n": n, "m": m, "middle_pairs": chosen},
        "product_shift": 0,
        # [1+, 1-] acts by +2 on J+ and -2 on J-
        "grading_element": {MID(k): -c for k, c in hcoords.items()},
    }
    l = SuperAlgebra(basis, BilinearMap(total, table), name="rtkk(%s)" % j.name, meta=meta)
    return verify_and_tag(l, "lie")


def sl2() -> SuperAlgebra:
    out = rtkk(field_algebra().tagged("jordan"))
    return out.replace(name="sl2")


def lie_view(a: SuperAlgebra) -> SuperAlgebra:
    """The Lie superalgebra (A, [,]) of a bracket-carrying algebra."""
    if "lie" in a.kinds and a.bracket is None:
        return a
    if a.bracket is None:
        if "lie" in a.kinds:
            return a
        raise AlgebraError("%s has no bracket" % a.name)
    meta = {k: v for k, v in a.meta.items() if k in ("window", "grading_element", "grassmann_factor")}
    meta["bracket_source"] = a
    l = SuperAlgebra(a.basis, BilinearMap(a.dim, a.bracket.table, a.bracket.undefined), name=a.name, meta=meta)
    rep = check_lie_super(l, "product")
    if not rep.passed:
        raise AlgebraError("bracket of %s is not Lie: %s at %s" % (a.name, rep.clause, rep.witness))
    return l.tagged("lie")


def center_dim(l: SuperAlgebra) -> int:
    """dim {x : [x, L] = 0} by a rank computation."""
    n = l.dim
    rows = []
    for y in range(n):
        # column x contributes [e_x, e_y]
        block: Dict[int, Dict[int, Scalar]] = {}
        for x in range(n):
            for k, c in l.product.get(x, y).items():
                block.setdefault(k, {})[x] = c
        rows.extend(block.values())
    return kernel(SparseMatrix.from_rows(rows, n)).dim


def algebra_window(a: SuperAlgebra) -> Optional[GradedWindow]:
    return a.meta.get("window")


def central_quotient(l: SuperAlgebra, central: Sequence[int]) -> SuperAlgebra:
    """``l`` modulo the span of central basis elements (checked wherever brackets are defined)."""
    if "lie" not in l.kinds:
        raise AlgebraError("central_quotient needs a Lie superalgebra")
    cset = set(central)
    if any(not isinstance(c, int) or not 0 <= c < l.dim for c in cset):
        raise AlgebraError("central_quotient: indices must lie in range(%d)" % l.dim)
    for c in cset:
        for x in range(l.dim):
            for pair in ((c, x), (x, c)):
                if l.product.defined(*pair) and l.product.get(*pair):
                    raise AlgebraError("%s is not central" % l.basis.names[c])
    keep = [i for i in range(l.dim) if i not in cset]
    pos = {k: i for i, k in enumerate(keep)}
    table, und = {}, []
    for x in keep:
        for y in keep:
            if not l.product.defined(x, y):
                und.append((pos[x], pos[y]))
                continue
            r = {pos[k]: v for k, v in l.product.get(x, y).items() if k in pos}
            if r:
                table[(pos[x], pos[y])] = r
    els = [l.basis.elements[i] for i in keep]
    meta = {}
    w = l.meta.get("window")
    if w is not None:
        meta["window"] = GradedWindow(w.min_degree, w.max_degree, tuple(w.degrees[i] for i in keep),
                                      w.product_shift, w.bracket_shift, w.radius, w.symmetric)
    if "grading_element" in l.meta and not set(l.meta["grading_element"]) & cset:
        meta["grading_element"] = {pos[k]: v for k, v in l.meta["grading_element"].items()}
    out = SuperAlgebra(SuperBasis(els), BilinearMap(len(keep), table, und), name="%s/Z" % l.name, meta=meta)
    return out.tagged("lie")

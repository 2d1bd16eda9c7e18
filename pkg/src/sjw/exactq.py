"""Exact rational scalars and linear algebra over Q.

Scalars are plain Python ``int`` (when integral) or ``fractions.Fraction``.
Elimination runs on integer rows (each rational row is cleared of
denominators first) with gcd content reduction after every step, so nothing
is ever rounded.

Canonical form of a subspace: the basis is reduced echelon with respect to
the *last* nonzero coordinate of each vector.  Every basis vector has a
pivot column ``p`` (its highest nonzero column) with entry 1 there, and all
other basis vectors vanish at ``p``.  This is exactly the shape of the
free-variable kernel basis, so kernels come out canonical for free.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

Scalar = Union[int, Fraction]
SparseVec = Dict[int, Scalar]

DENSE_FILL = 0.5


def q(x) -> Scalar:
    """Normalize ``x`` (int, Fraction, or "p/q" string) to an exact scalar."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        x = Fraction(x.strip())
    elif not isinstance(x, Fraction):
        if isinstance(x, float):
            raise TypeError("floating-point values are not exact scalars")
        x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return x


def qstr(x: Scalar) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _as_int_row(row: Mapping[int, Scalar]) -> Dict[int, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = _lcm(den, v.denominator)
    out = {}
    for k, v in row.items():
        if v:
            w = v * den
            out[k] = int(w)
    return _primitive(out)


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


class SparseMatrix:
    """Row-major sparse matrix of exact scalars.  Zeros are never stored."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: List[Dict[int, Scalar]] = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [{} for _ in range(rows)]
        if len(data) != rows:
            raise ValueError("row count mismatch")
        self._data = data

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[Tuple[int, int, Scalar]]):
        data = [{} for _ in range(rows)]
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, rows, cols))
            if c in data[r]:
                raise ValueError("duplicate entry (%d, %d)" % (r, c))
            v = q(v)
            if v:
                data[r][c] = v
        return cls(rows, cols, data)

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, Scalar]], cols: int):
        data = []
        for row in rows:
            d = {}
            for c, v in row.items():
                if not 0 <= c < cols:
                    raise IndexError("column %d outside width %d" % (c, cols))
                if v:
                    d[c] = v
            data.append(d)
        return cls(len(data), cols, data)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        cols = len(rows[0]) if rows else 0
        data = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged dense matrix")
            data.append({c: q(v) for c, v in enumerate(r) if v})
        return cls(len(data), cols, data)

    @property
    def entries(self) -> List[Tuple[int, int, Scalar]]:
        return [(r, c, v) for r, row in enumerate(self._data) for c, v in sorted(row.items())]

    def row(self, i: int) -> Dict[int, Scalar]:
        return self._data[i]

    def iter_rows(self):
        return iter(self._data)

    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    def to_dense(self) -> List[List[Scalar]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, row in enumerate(self._data):
            for c, v in row.items():
                out[r][c] = v
        return out

    def __repr__(self):
        return "SparseMatrix(%d, %d, nnz=%d)" % (self.rows, self.cols, self.nnz())


class Echelon:
    """Incremental integer row echelon form.

    ``last=False`` pivots on the lowest column of each row (forward
    elimination, used for kernels); ``last=True`` pivots on the highest
    column (used for canonical subspace bases).
    """

    def __init__(self, ncols: int, last: bool = False):
        self.ncols = ncols
        self.last = last
        self.piv: Dict[int, Dict[int, int]] = {}

    def _lead(self, r):
        return max(r) if self.last else min(r)

    def reduce(self, row: Dict[int, int]) -> Dict[int, int]:
        r = row
        piv = self.piv
        while r:
            lead = self._lead(r)
            p = piv.get(lead)
            if p is None:
                return r
            a = p[lead]
            b = r[lead]
            g = gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                new = {k: a * v for k, v in r.items()}
            else:
                new = dict(r)
            for k, v in p.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    del new[k]
            r = _primitive(new)
        return r

    def add(self, row: Mapping[int, Scalar]) -> bool:
        r = self.reduce(_as_int_row(row))
        if not r:
            return False
        lead = self._lead(r)
        if r[lead] < 0:
            r = {k: -v for k, v in r.items()}
        self.piv[lead] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.piv)

    def reduced(self) -> Dict[int, Dict[int, Scalar]]:
        """Fully reduced rows keyed by pivot column, pivot entries equal to 1."""
        order = sorted(self.piv, reverse=not self.last)
        done: Dict[int, Dict[int, int]] = {}
        for lead in order:
            r = dict(self.piv[lead])
            changed = True
            while changed:
                changed = False
                for c in list(r):
                    if c != lead and c in done and c in r:
                        p = done[c]
                        a = p[c]
                        b = r[c]
                        g = gcd(a, b)
                        a //= g
                        b //= g
                        new = {k: a * v for k, v in r.items()} if a != 1 else dict(r)
                        for k, v in p.items():
                            nv = new.get(k, 0) - b * v
                            if nv:
                                new[k] = nv
                            else:
                                del new[k]
                        r = _primitive(new)
                        changed = True
                        break
            if r[lead] < 0:
                r = {k: -v for k, v in r.items()}
            done[lead] = r
        out = {}
        for lead, r in done.items():
            d = r[lead]
            out[lead] = {k: q(Fraction(v, d)) for k, v in r.items()}
        return out


def _dense_echelon(rows: List[Dict[int, Scalar]], ncols: int) -> Dict[int, Dict[int, Scalar]]:
    """Reduced row echelon form (forward pivots) with dense integer lists."""
    mat = []
    for row in rows:
        ir = _as_int_row(row)
        if ir:
            dense = [0] * ncols
            for c, v in ir.items():
                dense[c] = v
            mat.append(dense)
    pivots = []
    r0 = 0
    for c in range(ncols):
        pr = None
        for i in range(r0, len(mat)):
            if mat[i][c]:
                pr = i
                break
        if pr is None:
            continue
        mat[r0], mat[pr] = mat[pr], mat[r0]
        prow = mat[r0]
        a = prow[c]
        for i in range(len(mat)):
            if i == r0 or not mat[i][c]:
                continue
            b = mat[i][c]
            g = gcd(a, b)
            ai, bi = a // g, b // g
            row = mat[i]
            new = [ai * x - bi * y for x, y in zip(row, prow)]
            g2 = reduce(gcd, new, 0)
            if g2 > 1:
                new = [x // g2 for x in new]
            mat[i] = new
        pivots.append(c)
        r0 += 1
    out = {}
    for i, c in enumerate(pivots):
        row = mat[i]
        d = row[c]
        out[c] = {k: q(Fraction(v, d)) for k, v in enumerate(row) if v}
    return out


def _forward_rref(m: SparseMatrix) -> Dict[int, Dict[int, Scalar]]:
    cells = m.rows * m.cols
    if cells and m.nnz() > DENSE_FILL * cells and m.rows * m.cols <= 4_000_000:
        return _dense_echelon(list(m.iter_rows()), m.cols)
    ech = Echelon(m.cols)
    for row in m.iter_rows():
        if row:
            ech.add(row)
    return ech.reduced()


@dataclass(frozen=True)
class SolutionSpace:
    """A subspace of Q^ambient_dim held by its canonical basis.

    ``basis`` entries are sparse dicts ``col -> scalar``.  See the module
    docstring for the echelon convention.
    """

    ambient_dim: int
    basis: Tuple[Dict[int, Scalar], ...] = ()
    label: str = field(default="", compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> List[int]:
        return [max(v) for v in self.basis]

    def vectors(self) -> List[List[Scalar]]:
        out = []
        for v in self.basis:
            dense = [0] * self.ambient_dim
            for c, x in v.items():
                dense[c] = x
            out.append(dense)
        return out

    def coordinates(self, vec: Mapping[int, Scalar]):
        """Coefficients of ``vec`` in the basis, or ``None`` if outside the span."""
        coeffs = []
        rest = {k: v for k, v in vec.items() if v}
        for b in self.basis:
            p = max(b)
            c = rest.get(p, 0)
            coeffs.append(c)
            if c:
                for k, v in b.items():
                    nv = rest.get(k, 0) - c * v
                    if nv:
                        rest[k] = nv
                    else:
                        rest.pop(k, None)
        if rest:
            return None
        return coeffs

    def contains(self, vec: Mapping[int, Scalar]) -> bool:
        return self.coordinates(vec) is not None

    def with_label(self, label: str) -> "SolutionSpace":
        return SolutionSpace(self.ambient_dim, self.basis, label)

    def __repr__(self):
        return "SolutionSpace(dim=%d, ambient=%d%s)" % (
            self.dim, self.ambient_dim, ", %r" % self.label if self.label else "")


def _canonical(ambient: int, vectors: Iterable[Mapping[int, Scalar]], label="") -> SolutionSpace:
    ech = Echelon(ambient, last=True)
    for v in vectors:
        if any(v.values()):
            ech.add(v)
    red = ech.reduced()
    basis = tuple(red[p] for p in sorted(red))
    return SolutionSpace(ambient, basis, label)


def span(vectors: Iterable, ambient_dim: int, label: str = "") -> SolutionSpace:
    """Canonical basis of the span of ``vectors`` (sparse dicts or dense lists)."""
    vs = []
    for v in vectors:
        if not isinstance(v, Mapping):
            if len(v) != ambient_dim:
                raise ValueError("vector length %d != ambient %d" % (len(v), ambient_dim))
            v = {i: q(x) for i, x in enumerate(v) if x}
        else:
            for k in v:
                if not 0 <= k < ambient_dim:
                    raise IndexError("coordinate %d outside ambient %d" % (k, ambient_dim))
        vs.append(v)
    return _canonical(ambient_dim, vs, label)


def zero_space(ambient_dim: int, label: str = "") -> SolutionSpace:
    return SolutionSpace(ambient_dim, (), label)


def full_space(ambient_dim: int, label: str = "") -> SolutionSpace:
    return SolutionSpace(ambient_dim, tuple({i: 1} for i in range(ambient_dim)), label)


def kernel(m: SparseMatrix, label: str = "") -> SolutionSpace:
    """Canonical basis of ``{x : m x = 0}``."""
    red = _forward_rref(m)
    free = [c for c in range(m.cols) if c not in red]
    col_rows: Dict[int, List[Tuple[int, Scalar]]] = {}
    for lead, row in red.items():
        for c, v in row.items():
            if c != lead:
                col_rows.setdefault(c, []).append((lead, v))
    basis = []
    for f in free:
        vec = {f: 1}
        for lead, v in col_rows.get(f, ()):
            vec[lead] = -v
        basis.append(vec)
    return SolutionSpace(m.cols, tuple(basis), label)


def rank(m: SparseMatrix) -> int:
    ech = Echelon(m.cols)
    for row in m.iter_rows():
        if row:
            ech.add(row)
    return ech.rank


def row_space(m: SparseMatrix, label: str = "") -> SolutionSpace:
    return _canonical(m.cols, m.iter_rows(), label)


def _check_ambient(u: SolutionSpace, w: SolutionSpace):
    if u.ambient_dim != w.ambient_dim:
        raise ValueError("ambient dimension mismatch: %d vs %d" % (u.ambient_dim, w.ambient_dim))


def subspace_sum(u: SolutionSpace, w: SolutionSpace, label: str = "") -> SolutionSpace:
    _check_ambient(u, w)
    return _canonical(u.ambient_dim, list(u.basis) + list(w.basis), label)


def subspace_intersect(u: SolutionSpace, w: SolutionSpace, label: str = "") -> SolutionSpace:
    _check_ambient(u, w)
    if not u.dim or not w.dim:
        return zero_space(u.ambient_dim, label)
    if u.dim > w.dim:
        u, w = w, u
    # x = sum a_i u_i lies in w iff its reduction modulo w's canonical basis vanishes;
    # the reduction is linear in a, so intersect = kernel of that map.
    residues = []
    for b in u.basis:
        rest = dict(b)
        for wb in w.basis:
            p = max(wb)
            c = rest.get(p, 0)
            if c:
                for k, v in wb.items():
                    nv = rest.get(k, 0) - c * v
                    if nv:
                        rest[k] = nv
                    else:
                        rest.pop(k, None)
        residues.append(rest)
    # columns = u basis index, rows = ambient coordinates
    rows: Dict[int, Dict[int, Scalar]] = {}
    for i, res in enumerate(residues):
        for k, v in res.items():
            rows.setdefault(k, {})[i] = v
    m = SparseMatrix.from_rows(list(rows.values()), u.dim)
    ker = kernel(m)
    vecs = []
    for coeffs in ker.basis:
        x: Dict[int, Scalar] = {}
        for i, a in coeffs.items():
            for k, v in u.basis[i].items():
                nv = x.get(k, 0) + a * v
                if nv:
                    x[k] = nv
                else:
                    x.pop(k, None)
        vecs.append(x)
    return _canonical(u.ambient_dim, vecs, label)


def subspace_sum_intersect(u: SolutionSpace, w: SolutionSpace) -> Tuple[SolutionSpace, SolutionSpace]:
    """Return ``(u + w, u ∩ w)``."""
    return subspace_sum(u, w), subspace_intersect(u, w)


def is_subspace(u: SolutionSpace, w: SolutionSpace) -> bool:
    """True when ``u ⊆ w``."""
    _check_ambient(u, w)
    return all(w.contains(b) for b in u.basis)


def quotient_dim(sub: SolutionSpace, total: SolutionSpace, strict: bool = False) -> int:
    """``dim total - dim(total ∩ sub)``; equals ``dim(total/sub)`` when ``sub ⊆ total``."""
    _check_ambient(sub, total)
    if not is_subspace(sub, total):
        if strict:
            raise ValueError("quotient_dim: sub is not contained in total")
        warnings.warn("quotient_dim: sub is not contained in total", RuntimeWarning, stacklevel=2)
    return total.dim - subspace_intersect(total, sub).dim


def project(space: SolutionSpace, coords: Sequence[int], label: str = "") -> SolutionSpace:
    """Image of ``space`` under restriction to ``coords`` (re-indexed 0..len-1)."""
    pos = {c: i for i, c in enumerate(coords)}
    vecs = []
    for b in space.basis:
        v = {pos[k]: x for k, x in b.items() if k in pos}
        if v:
            vecs.append(v)
    return _canonical(len(coords), vecs, label)


def lin_comb(terms: Iterable[Tuple[Scalar, Mapping[int, Scalar]]]) -> Dict[int, Scalar]:
    out: Dict[int, Scalar] = {}
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

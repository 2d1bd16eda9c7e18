"""Coordinates for even super-skew bilinear forms.

An even form pairs only basis elements of equal parity.  Super
skew-symmetry ``(a|b) = -(-1)^{|a||b|}(b|a)`` leaves one unknown per
unordered pair: ``i < j`` for equal parities, plus the diagonal ``(i, i)``
when ``e_i`` is odd (odd-odd pairs are symmetric).
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactq import Scalar, SolutionSpace, q, qstr
from .superalgebra import AlgebraError, SuperAlgebra, sign

Pair = Tuple[int, int]


class FormCoords:
    """Variable layout for even super-skew forms on a subset of the basis.

    ``allow(i, j)`` (called with ``i <= j``) can drop canonical pairs, which
    are then forced to vanish.  Lookups of dropped pairs return ``None``.
    """

    def __init__(self, parities: Sequence[int], indices: Optional[Iterable[int]] = None,
                 allow: Optional[Callable[[int, int], bool]] = None, names: Optional[Sequence[str]] = None):
        self.parities = tuple(parities)
        self.indices = sorted(set(range(len(parities)) if indices is None else indices))
        self.names = list(names) if names is not None else [str(i) for i in range(len(parities))]
        inside = set(self.indices)
        self._inside = inside
        pairs: List[Pair] = []
        for a, i in enumerate(self.indices):
            for j in self.indices[a:]:
                if self.parities[i] != self.parities[j]:
                    continue
                if i == j and not self.parities[i]:
                    continue
                if allow is not None and not allow(i, j):
                    continue
                pairs.append((i, j))
        self.pairs = pairs
        self.index = {p: k for k, p in enumerate(pairs)}

    @classmethod
    def of(cls, a: SuperAlgebra, **kw) -> "FormCoords":
        return cls(a.parities, names=a.basis.names, **kw)

    @property
    def size(self) -> int:
        return len(self.pairs)

    def lookup(self, i: int, j: int) -> Optional[Tuple[int, int]]:
        """``(variable, sign)`` with ``(e_i|e_j) = sign * x[variable]``, or None if forced zero."""
        if i <= j:
            k = self.index.get((i, j))
            return None if k is None else (k, 1)
        k = self.index.get((j, i))
        if k is None:
            return None
        return k, -sign(self.parities[i] * self.parities[j])

    def value(self, vec: Mapping[int, Scalar], i: int, j: int) -> Scalar:
        lk = self.lookup(i, j)
        if lk is None:
            return 0
        return lk[1] * vec.get(lk[0], 0)

    def pair_value(self, vec: Mapping[int, Scalar], x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Scalar:
        """``(x|y)`` for algebra vectors ``x``, ``y``."""
        tot = 0
        for i, a in x.items():
            for j, b in y.items():
                v = self.value(vec, i, j)
                if v:
                    tot += a * b * v
        return tot

    def add_term(self, row: Dict[int, Scalar], coef: Scalar, i: int, j: int) -> None:
        """Accumulate ``coef * (e_i|e_j)`` into a constraint row."""
        lk = self.lookup(i, j)
        if lk is None or not coef:
            return
        k, s = lk
        nv = row.get(k, 0) + s * coef
        if nv:
            row[k] = nv
        else:
            row.pop(k, None)

    def add_pairing(self, row: Dict[int, Scalar], coef: Scalar, x: Mapping[int, Scalar], y: Mapping[int, Scalar]):
        """Accumulate ``coef * (x|y)``."""
        if not coef:
            return
        for i, a in x.items():
            for j, b in y.items():
                self.add_term(row, coef * a * b, i, j)

    def from_pairs(self, values: Mapping[Pair, Scalar], check: bool = True) -> Dict[int, Scalar]:
        """Form coordinates from a table of ordered-pair values.

        With ``check`` the table must be super-skew, even, and supported
        on allowed pairs; otherwise AlgebraError is raised.
        """
        vec: Dict[int, Scalar] = {}
        for (i, j), v in values.items():
            v = q(v)
            if not v:
                continue
            lk = self.lookup(i, j)
            if lk is None:
                if check:
                    raise AlgebraError("form has a value on the excluded pair (%s, %s)" % (
                        self.names[i], self.names[j]))
                continue
            k, s = lk
            if k in vec and vec[k] != s * v:
                if check:
                    raise AlgebraError("form is not super-skew at (%s, %s)" % (self.names[i], self.names[j]))
            vec[k] = s * v
        if check:
            for (i, j), v in values.items():
                if q(v) and self.value(vec, j, i) != -sign(self.parities[i] * self.parities[j]) * q(v):
                    raise AlgebraError("form is not super-skew at (%s, %s)" % (self.names[i], self.names[j]))
        return {k: v for k, v in vec.items() if v}

    def to_pairs(self, vec: Mapping[int, Scalar]) -> Dict[Pair, Scalar]:
        """All nonzero ordered-pair values of a form."""
        out: Dict[Pair, Scalar] = {}
        for k, v in vec.items():
            if not v:
                continue
            i, j = self.pairs[k]
            out[(i, j)] = v
            if i != j:
                out[(j, i)] = -sign(self.parities[i] * self.parities[j]) * v
        return out

    def describe(self, vec: Mapping[int, Scalar]) -> Dict[str, str]:
        return {"(%s|%s)" % (self.names[self.pairs[k][0]], self.names[self.pairs[k][1]]): qstr(v)
                for k, v in sorted(vec.items()) if v}

    def describe_space(self, space: SolutionSpace) -> List[Dict[str, str]]:
        return [self.describe(b) for b in space.basis]


def restrict(coords: FormCoords, vec: Mapping[int, Scalar], target: FormCoords) -> Dict[int, Scalar]:
    """Re-express a form in another layout, dropping pairs the target excludes."""
    out: Dict[int, Scalar] = {}
    for (i, j), v in coords.to_pairs(vec).items():
        if i <= j:
            k = target.index.get((i, j))
            if k is not None:
                out[k] = v
    return out

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from sjw.exactq import (SparseMatrix, is_subspace, kernel, project, q, qstr, quotient_dim, rank, span,
                        subspace_intersect, subspace_sum, subspace_sum_intersect, zero_space)

small = st.integers(-4, 4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=0, max_size=max_rows).map(
            lambda rows: (rows, c)))


def mat(rows, cols):
    return SparseMatrix.from_rows([{j: x for j, x in enumerate(r) if x} for r in rows], cols)


def apply(rows, v):
    return [sum(Fraction(a) * v.get(j, 0) for j, a in enumerate(r)) for r in rows]


def test_scalar_canonical():
    assert q("6/4") == Fraction(3, 2)
    assert qstr(Fraction(-3, 1)) == "-3"
    assert qstr(Fraction(2, 6)) == "1/3"
    assert qstr(q(0)) == "0"


def test_kernel_examples():
    k = kernel(SparseMatrix.from_dense([[1, 2], [2, 4]]))
    assert k.dim == 1 and k.vectors() == [[-2, 1]]
    assert kernel(SparseMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])).dim == 0
    assert kernel(SparseMatrix.from_dense([[1, 1, 1]])).dim == 2
    assert kernel(SparseMatrix.from_rows([], 3)).dim == 3


def test_rank_examples():
    assert rank(SparseMatrix.from_dense([[1, 2], [2, 4], [3, 6]])) == 1
    assert rank(SparseMatrix.from_rows([], 4)) == 0
    assert rank(SparseMatrix.from_dense([[1 if i == j else 0 for j in range(5)] for i in range(5)])) == 5


def test_sum_intersect_examples():
    e1, e2 = span([[1, 0]], 2), span([[0, 1]], 2)
    s, i = subspace_sum_intersect(e1, e2)
    assert (s.dim, i.dim) == (2, 0)
    s, i = subspace_sum_intersect(e1, e1)
    assert s == e1 and i == e1
    u = span([[1, 1, 0]], 3)
    w = span([[1, 1, 0], [0, 0, 1]], 3)
    s, i = subspace_sum_intersect(u, w)
    assert (s.dim, i.dim) == (2, 1)
    with pytest.raises(ValueError):
        subspace_sum(u, span([[1, 0]], 2))


def test_quotient_dim_examples():
    t = span([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3)
    assert quotient_dim(zero_space(3), t) == 3
    assert quotient_dim(t, t) == 0
    t4 = span([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0]], 5)
    assert quotient_dim(span([[1, 1, 0, 0, 0]], 5), t4) == 3
    with pytest.warns(RuntimeWarning):
        quotient_dim(span([[0, 0, 0, 0, 1]], 5), t4)
    with pytest.raises(ValueError):
        quotient_dim(span([[0, 0, 0, 0, 1]], 5), t4, strict=True)


def test_project():
    s = span([[1, 2, 3], [0, 1, 1]], 3)
    p = project(s, [0, 2])
    assert p.ambient_dim == 2 and p.dim == 2


@given(matrices())
def test_rank_nullity_against_sympy(data):
    rows, cols = data
    m = mat(rows, cols)
    k = kernel(m)
    r = rank(m)
    assert r + k.dim == cols
    oracle = sympy.Matrix(rows) if rows else sympy.zeros(0, cols)
    assert r == (oracle.rank() if rows else 0)
    assert k.dim == (len(oracle.nullspace()) if rows else cols)
    for v in k.basis:
        assert all(x == 0 for x in apply(rows, v))


@given(matrices())
def test_kernel_depends_only_on_row_space(data):
    rows, cols = data
    m1 = mat(rows, cols)
    # add row combinations and shuffle: same row space
    extra = [[a + b for a, b in zip(rows[0], rows[-1])]] if rows else []
    m2 = mat(list(reversed(rows)) + extra + [[3 * x for x in r] for r in rows], cols)
    assert kernel(m1) == kernel(m2)


@given(matrices(4, 5), matrices(4, 5))
def test_dimension_formula(a, b):
    ra, ca = a
    rb, _ = b
    rb = [(r + [0] * ca)[:ca] for r in rb]
    u, w = span(ra, ca), span(rb, ca)
    s, i = subspace_sum(u, w), subspace_intersect(u, w)
    assert s.dim + i.dim == u.dim + w.dim
    assert is_subspace(i, u) and is_subspace(i, w)
    assert is_subspace(u, s) and is_subspace(w, s)


@given(st.lists(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=3, max_size=3),
                max_size=4))
def test_span_is_canonical(vecs):
    a = span(vecs, 3)
    b = span(list(reversed(vecs)) + [[x + y for x, y in zip(vecs[0], vecs[-1])]] if vecs else [], 3)
    assert a == b
    assert len(set(a.pivots())) == a.dim

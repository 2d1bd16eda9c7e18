import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from sjw import constructions as C
from sjw.superalgebra import (AlgebraError, LinearOperator, OutOfWindow, check_contact, check_jordan_bracket,
                              check_lie_super, check_poisson, check_supercommutative,
                              inner_derivation)

VT3 = C.vector_type_bracket(C.truncated_poly(3))
VT4 = C.vector_type_bracket(C.truncated_poly(4))


def test_grassmann():
    assert C.grassmann(0).basis.names == ["1"]
    g3 = C.grassmann(3)
    assert g3.dim == 8 and sum(g3.parities) == 4
    assert g3.mul(g3.e("x1"), g3.e("x1")) == {}


@given(st.integers(0, 4))
def test_grassmann_parity_split(n):
    g = C.grassmann(n)
    assert g.dim == 2 ** n
    assert sum(g.parities) == (2 ** (n - 1) if n else 0)


def test_poisson_grassmann_values():
    pg = C.poisson_grassmann(2)
    x1, x2, x12 = pg.e("x1"), pg.e("x2"), pg.e("x1x2")
    assert pg.br(x1, x1) == pg.one()
    assert pg.br(x1, x2) == {}
    # Leibniz oracle: [x1 x2, x2] = x1 [x2, x2] + (-1)^{1*1} [x1, x2] x2 = x1
    assert pg.br(x12, x2) == x1
    for i in range(pg.dim):
        assert pg.br(pg.one(), pg.e(i)) == {}


def test_tensor_poisson():
    pg1, pg2 = C.poisson_grassmann(1), C.poisson_grassmann(2)
    t = C.tensor_poisson(pg1, pg2)
    assert t.dim == 8 and check_poisson(t).passed
    assert t.br(t.e("x1⊗1"), t.e("x1⊗1")) == t.e("1⊗1")
    triv = C.tensor_poisson(pg2, C.poisson_grassmann(0))
    assert triv.dim == 4 and triv.product == pg2.product and triv.bracket == pg2.bracket
    with pytest.raises(AlgebraError):
        C.tensor_poisson(C.grassmann(1), pg1)


def test_truncated_poly():
    assert C.truncated_poly(1).dim == 1
    tp = C.truncated_poly(4)
    assert tp.meta["derivation"].apply(tp.e("t^2")) == {2: 2}
    assert tp.mul(tp.e("t^2"), tp.e("t^3")) == {}


def test_vector_type():
    tp = C.truncated_poly(4)
    zero = C.vector_type_bracket(tp, C.DerivationSpec(LinearOperator.zero(4)))
    assert all(zero.br(zero.e(i), zero.e(j)) == {} for i in range(4) for j in range(4))
    assert VT4.br(VT4.e("t"), VT4.e("t^2")) == {3: -1}
    for i in range(4):
        assert VT4.deriv(VT4.e(i)) == tp.meta["derivation"].apply(tp.e(i))
    bad = C.DerivationSpec(LinearOperator(4, [{}, {0: 1}, {}, {}]))  # t -> 1 is not a derivation mod t^4 with t^2 -> 0
    with pytest.raises(AlgebraError):
        C.vector_type_bracket(tp, bad)


def test_laurent_window():
    lw = C.laurent_window(3)
    t, tm = lw.e("t"), lw.e("t^-1")
    assert lw.br(t, tm) == {lw.basis.index("t^-1"): 2}
    assert lw.deriv(lw.one()) == {}
    with pytest.raises(OutOfWindow):
        lw.mul(lw.e("t^3"), t)
    w = lw.meta["window"]
    assert (w.product_shift, w.bracket_shift) == (0, -1)
    deg = lw.basis.degrees
    for (i, j), row in lw.bracket.table.items():
        assert all(deg[k] == deg[i] + deg[j] - 1 for k in row)
    for (i, j), row in lw.product.table.items():
        assert all(deg[k] == deg[i] + deg[j] for k in row)


def test_jordan_ext_cross_rule():
    je = C.jordan_ext(VT4, 2)
    t = je.e("t")
    assert je.br(je.e("x1"), t) == {}
    # [x1 x2, a] = x1 x2 a' with a = t, a' = t
    assert je.br(je.e("x1x2"), t) == je.e("t*x1x2")
    assert C.jordan_ext(VT4, 0).structurally_equal(VT4)


def test_contact_ext_cross_rule():
    ce = C.contact_ext(VT4, 2)
    t = ce.e("t")
    assert ce.br(ce.e("x1x2"), t) == {}
    assert ce.br(ce.e("x1"), t) == {ce.basis.index("t*x1"): Fraction(-1, 2)}
    assert C.contact_ext(VT4, 0).structurally_equal(VT4)


@pytest.mark.parametrize("N,n", [(N, n) for N in (2, 3, 4) for n in (1, 2, 3)])
def test_extensions_pass_checkers(N, n):
    base = C.vector_type_bracket(C.truncated_poly(N))
    assert check_jordan_bracket(C.jordan_ext(base, n)).passed
    assert check_contact(C.contact_ext(base, n)).passed


def test_contact_to_jordan():
    pg = C.poisson_grassmann(2)
    assert C.contact_to_jordan(pg).bracket == pg.bracket
    for a in (VT4, C.contact_ext(VT3, 2)):
        j = C.contact_to_jordan(a)
        assert check_jordan_bracket(j).passed
        for i in range(a.dim):
            half = {k: v / 2 for k, v in a.deriv(a.e(i)).items()}
            assert j.deriv(j.e(i)) == half
        back = C.jordan_to_contact(j)
        assert back.bracket == a.bracket
    lj = C.contact_to_jordan(C.laurent_window(3))
    assert lj.br(lj.e("t"), lj.e("t")) == {}


def test_kantor_double():
    pg2 = C.poisson_grassmann(2)
    k = C.kantor_double(pg2)
    assert k.dim == 8 and "jordan" in k.kinds
    v = k.e("v")
    assert k.mul(v, v) == {}
    assert k.mul(k.e("x1*v"), v) == {}
    for i, name in enumerate(pg2.basis.names):
        assert k.parity(k.basis.index("v" if name == "1" else name + "*v")) == (pg2.parity(i) + 1) % 2
    assert check_supercommutative(k).passed
    with pytest.raises(AlgebraError):
        C.kantor_double(C.grassmann(2))


def _sl2_relations(l, e, f, h):
    assert l.mul(e, f) == h
    assert l.mul(h, e) == {k: 2 * c for k, c in e.items()}
    assert l.mul(h, f) == {k: -2 * c for k, c in f.items()}


def test_rtkk_of_field_is_sl2():
    r = C.rtkk(C.field_algebra().tagged("jordan"))
    assert r.dim == 3 and check_lie_super(r).passed
    e, f = r.e("1-"), r.e("1+")
    _sl2_relations(r, e, f, r.mul(e, f))
    s = C.sl2()
    assert s.product == r.product


@pytest.mark.parametrize("j", [C.kantor_double(C.poisson_grassmann(1)), C.kantor_double(C.poisson_grassmann(2))])
def test_rtkk_structure(j):
    r = C.rtkk(j)
    assert check_lie_super(r).passed
    # middle dimension: rank of the stacked operators D(a,b) + R-parts acting on J- + J+
    deg = r.basis.degrees
    mid = [i for i in range(r.dim) if deg[i] == 0]
    pairs = list(itertools.product(range(j.dim), repeat=2))
    rows = []
    for a, b in pairs:
        vec = r.mul({a: 1}, {r.basis.index(j.basis.names[b] + "+"): 1})
        rows.append([vec.get(i, 0) for i in mid])
    assert len(mid) == sympy.Matrix(rows).rank()
    assert r.dim == 2 * j.dim + len(mid)
    lo = [i for i in range(r.dim) if deg[i] == -2]
    hi = [i for i in range(r.dim) if deg[i] == 2]
    for block in (lo, hi):
        assert all(r.mul({x: 1}, {y: 1}) == {} for x in block for y in block)
    assert C.center_dim(r) == 0


def test_kantor_of_poisson_has_trivial_A_derivations():
    k = C.kantor_double(C.poisson_grassmann(2))
    base = k.meta["kantor_base"]
    assert all(inner_derivation(k, a, b).is_zero() for a in range(base.dim) for b in range(base.dim))


def test_hamiltonian_window_and_central_quotient():
    hw = C.hamiltonian_window(1, 3)
    assert hw.windowed() and "poisson" in hw.kinds
    assert hw.br(hw.e("p1"), hw.e("q1")) in ({0: 1}, {0: -1})
    a = C.tensor_poisson(hw, C.poisson_grassmann(1))
    l = C.lie_view(a)
    z = C.central_quotient(l, [a.unit])
    assert z.dim == l.dim - 1 and "lie" in z.kinds
    with pytest.raises(AlgebraError):
        C.central_quotient(l, [l.basis.index("p1⊗1")])

import json

import pytest
from hypothesis import given, strategies as st

from sjw import constructions as C
from sjw.dsl import Call, DSLError, Int, canonical, evaluate, evaluate_text, expand_template, parse, to_text
from sjw.superalgebra import check_poisson, to_json


def test_parse_examples():
    e = parse("kantor(poisson_grassmann(2))")
    assert e == Call("kantor", (Call("poisson_grassmann", (Int(2),)),))
    nested = parse("rtkk(kantor(jordan_ext(vector_type(truncated_poly(3)),1)))")
    assert to_text(nested) == "rtkk(kantor(jordan_ext(vector_type(truncated_poly(3)),1)))"


def test_whitespace_insensitive():
    assert canonical(" kantor (\n  poisson_grassmann( 2 ) )") == "kantor(poisson_grassmann(2))"


@pytest.mark.parametrize("src,line,col,msg", [
    ("kantor(poisson_grassmann(2)", 1, 28, "end of input"),
    ("foo(1)", 1, 1, "unknown identifier"),
    ("tensor(\n  grassmann(1))", 1, 1, "takes 2 argument"),
    ("grassmann(2) x", 1, 14, "trailing"),
    ("grassmann(#)", 1, 11, "unexpected character"),
    ("kantor(\n   grassmann(1), 2)", 1, 1, "takes 1 argument"),
])
def test_syntax_errors_have_positions(src, line, col, msg):
    with pytest.raises(DSLError) as ei:
        evaluate_text(src)
    assert (ei.value.line, ei.value.col) == (line, col)
    assert msg in str(ei.value)


def test_error_position_on_later_line():
    with pytest.raises(DSLError) as ei:
        parse("tensor(\n  poisson_grassmann(1),\n  bogus(2))")
    assert (ei.value.line, ei.value.col) == (3, 3)


def test_evaluation_errors():
    with pytest.raises(DSLError) as ei:
        evaluate_text("kantor(grassmann(2))")
    assert "bracket" in str(ei.value) and ei.value.path == "kantor"
    with pytest.raises(DSLError):
        evaluate_text("grassmann(poisson_grassmann(1))")
    with pytest.raises(DSLError):
        evaluate_text("laurent_window(1..3)")
    with pytest.raises(DSLError):
        evaluate_text('file("/nonexistent/alg.json")')


def test_evaluate_examples():
    assert evaluate_text("grassmann(3)").dim == 8
    t = evaluate_text("tensor(poisson_grassmann(1),poisson_grassmann(1))")
    assert t.dim == 4 and check_poisson(t).passed


def test_deterministic():
    a = to_json(evaluate(parse("kantor(poisson_grassmann(2))")))
    from sjw import dsl
    dsl._CACHE.clear()
    b = to_json(evaluate(parse("kantor( poisson_grassmann(2) )")))
    assert a == b


def test_file_expression(tmp_path):
    p = tmp_path / "pg2.json"
    p.write_text(to_json(C.poisson_grassmann(2)))
    a = evaluate_text('file(%s)' % json.dumps(str(p)))
    assert a.structurally_equal(C.poisson_grassmann(2))


def test_templates():
    cells = expand_template("kantor(laurent_window(3..5))")
    assert [v for v, _ in cells] == [3, 4, 5]
    assert to_text(cells[0][1]) == "kantor(laurent_window(3))"
    assert expand_template("laurent_window(5..3)") == []
    with pytest.raises(DSLError):
        expand_template("tensor(poisson_grassmann(1..2),poisson_grassmann(1..2))")
    with pytest.raises(DSLError):
        expand_template("grassmann(2)")


LEAVES = ["grassmann", "poisson_grassmann", "truncated_poly", "laurent_window"]
UNARY = ["kantor", "vector_type", "rtkk", "lie", "jordan", "contact_to_jordan"]


def exprs():
    leaf = st.builds(lambda n, k: Call(n, (Int(k),)), st.sampled_from(LEAVES), st.integers(0, 99))
    return st.recursive(leaf, lambda inner: st.one_of(
        st.builds(lambda n, a: Call(n, (a,)), st.sampled_from(UNARY), inner),
        st.builds(lambda a, b: Call("tensor", (a, b)), inner, inner),
        st.builds(lambda a, k: Call("jordan_ext", (a, Int(k))), inner, st.integers(0, 5))), max_leaves=6)


@given(exprs(), st.sampled_from(["", " ", "\n", "  \t"]))
def test_print_parse_fixpoint(e, ws):
    text = to_text(e)
    assert parse(text) == e
    spaced = text.replace(",", "," + ws).replace("(", ws + "(" + ws)
    assert parse(spaced) == e
    assert to_text(parse(to_text(parse(text)))) == text

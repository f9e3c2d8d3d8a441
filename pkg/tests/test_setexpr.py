import pytest
from hypothesis import given
from hypothesis import strategies as st

from fplab.errors import FormatError, UnboundVariable
from fplab.oracles import eval_expr_naive
from fplab.setalg import FpSet
from fplab.setexpr import BinOp, Dilate, Fold, Var, eval_expr, expr_to_str, parse_expr

from conftest import get_field

EXPRS = [
    "A",
    "A + B",
    "A - A",
    "2A - 2A",
    "3·A + B",
    "-1·A",
    "(A - A)^2",
    "(2A - 2A) / (A - A)",
    "((A - A) / (A - A))^2 * (A - A)",
    "A * B / A",
    "2A + 3·B - A",
]


def test_parse_shapes():
    assert parse_expr("A") == Var("A")
    assert parse_expr("A+B") == BinOp("+", Var("A"), Var("B"))
    assert parse_expr("2A") == Fold(2, "+", Var("A"))
    assert parse_expr("2·A") == Dilate(2, Var("A"))
    assert parse_expr("2.A") == Dilate(2, Var("A"))
    assert parse_expr("-1·A") == Dilate(-1, Var("A"))
    assert parse_expr("(A-A)^3") == Fold(3, "*", BinOp("-", Var("A"), Var("A")))
    assert parse_expr("(A-A)^{3}") == parse_expr("(A-A)^3")
    assert parse_expr("A − B") == BinOp("-", Var("A"), Var("B"))  # unicode minus


def test_precedence():
    # '*' binds tighter than '-'; prefix count binds tighter than both
    assert parse_expr("A - B * C") == BinOp("-", Var("A"), BinOp("*", Var("B"), Var("C")))
    assert parse_expr("2A + B") == BinOp("+", Fold(2, "+", Var("A")), Var("B"))
    assert parse_expr("2A^2") == Fold(2, "+", Fold(2, "*", Var("A")))


def test_fold_vs_dilate_semantics():
    f = get_field(11)
    env = {"A": FpSet.from_iterable(f, [0, 1, 5])}
    assert eval_expr("2A", env).elements() == [0, 1, 2, 5, 6, 10]
    assert eval_expr("2·A", env).elements() == [0, 2, 10]


def test_frozen_triple_product():
    # A = {0,1} over F_5: (A-A)^3 = {0,1,4}
    f = get_field(5)
    env = {"A": FpSet.from_iterable(f, [0, 1])}
    assert eval_expr("(A-A)^3", env).elements() == [0, 1, 4]


@pytest.mark.parametrize("text", EXPRS)
def test_roundtrip_through_text(text):
    tree = parse_expr(text)
    assert parse_expr(expr_to_str(tree)) == tree


@given(
    ea=st.sets(st.integers(min_value=0, max_value=10), min_size=1, max_size=6),
    eb=st.sets(st.integers(min_value=0, max_value=10), min_size=1, max_size=6),
    text=st.sampled_from(EXPRS),
)
def test_eval_matches_naive(ea, eb, text):
    p = 11
    f = get_field(p)
    env = {"A": FpSet.from_iterable(f, ea), "B": FpSet.from_iterable(f, eb)}
    got = set(eval_expr(text, env).elements())
    assert got == eval_expr_naive(text, {"A": ea, "B": eb}, p)


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        eval_expr("A + C", {"A": FpSet.from_iterable(get_field(7), [1])})


@pytest.mark.parametrize(
    "text",
    ["", "A +", "(A", "A)", "^2", "A ^ B", "0A", "A^0", "(A-A)^{2", "A $ B", "2·", "A B"],
)
def test_malformed_expressions(text):
    with pytest.raises(FormatError):
        parse_expr(text)


def test_eval_accepts_tree_or_text():
    f = get_field(7)
    env = {"A": FpSet.from_iterable(f, [1, 2])}
    assert eval_expr(parse_expr("A+A"), env) == eval_expr("2A", env)

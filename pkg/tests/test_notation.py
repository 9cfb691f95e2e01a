import json
from importlib import resources
from itertools import product

import pytest
from hypothesis import given, strategies as st

from superbethe.notation import (
    Binding,
    Call,
    Div,
    ExprSyntaxError,
    Mul,
    PartSpec,
    PartitionSpec,
    UnboundName,
    UnsatisfiableSpec,
    enumerate_partitions,
    evaluate,
    parse,
    print_expr,
)
from superbethe.rational import rat


def test_parse_structure():
    ast = parse("f(uII,uI)*g(vI,vII)/f(vII,uI)")
    assert isinstance(ast, Div)
    assert isinstance(ast.left, Mul)
    assert ast.right == Call("f", ("vII", "uI"))
    assert parse("K(vI|uI)") == Call("K", ("vI", "uI"))


def test_parse_error_offset():
    with pytest.raises(ExprSyntaxError) as err:
        parse("f(uII,uI")
    assert err.value.offset == 9


def test_roundtrip_on_package_formula_tables():
    raw = json.loads(resources.files("superbethe").joinpath("data/action_formulas.json").read_text())
    exprs = [t["coefficient"] for el, terms in raw.items() if not el.startswith("_") for t in terms]
    from superbethe import composite, gl12

    exprs += [composite.KET_COEFF, composite.BRA_COEFF, gl12.TILDE_KET_COEFF, gl12.TILDE_BRA_COEFF]
    exprs += [spec[1] for spec in composite._A_TERMS.values()]
    exprs += [spec[1] for spec in composite._C_TERMS.values()]
    assert len(exprs) > 30
    for text in exprs:
        ast = parse(text)
        assert parse(print_expr(ast)) == ast


names = st.sampled_from(["uI", "uII", "vI", "vII", "z"])
calls = st.one_of(
    st.builds(Call, st.sampled_from(["f", "g", "h"]), st.tuples(names, names)),
    st.builds(Call, st.just("K"), st.tuples(names, names)),
)
exprs = st.recursive(calls, lambda inner: st.builds(Mul, inner, inner) | st.builds(Div, inner, calls), max_leaves=8)


@given(exprs)
def test_roundtrip_generated(ast):
    assert parse(print_expr(ast)) == ast


def test_evaluate_worked_example():
    b = Binding({"uI": (1,), "uII": (3,), "vI": (5,), "vII": (7,)}, c=1)
    assert evaluate("f(uII,uI)*g(vI,vII)/f(vII,uI)", b) == rat(-9, 14)
    assert evaluate("g(vI,vII)", Binding({"vI": (), "vII": (7,)}, c=1)) == 1
    assert evaluate("K(vI|uI)", Binding({"vI": (2,), "uI": (1,)}, c=1)) == 1


def test_evaluate_literals_and_powers():
    b = Binding({})
    assert evaluate("3*2/4", b) == rat(3, 2)
    assert evaluate("-(2)^3", b) == -8
    assert evaluate("(-1)^2", b) == 1


def test_unbound_name():
    with pytest.raises(UnboundName):
        evaluate("f(uI,uII)", Binding({"uI": (1,)}, c=1))
    with pytest.raises(UnboundName):
        evaluate("r9(uI)", Binding({"uI": (1,)}, c=1))


def test_eval_is_order_insensitive():
    b1 = Binding({"uI": (1, 4, 9), "vI": (2, 7)}, c=1)
    b2 = Binding({"uI": (9, 1, 4), "vI": (7, 2)}, c=1)
    for text in ("f(uI,vI)", "g(vI,uI)", "h(uI,uI)"):
        assert evaluate(text, b1) == evaluate(text, b2)


def test_partition_counts():
    free2 = PartitionSpec("u", (PartSpec("a"), PartSpec("b")))
    assert len(enumerate_partitions(free2, (1, 2))) == 4
    single = PartitionSpec("u", (PartSpec("u0", 1), PartSpec("rest")))
    assert len(enumerate_partitions(single, (1, 2, 3))) == 3
    constrained = PartitionSpec("v", (PartSpec("vI", 0), PartSpec("vII")))
    out = enumerate_partitions(constrained, (1,))
    assert len(out) == 1 and out[0].sets["vII"] == (1,)


def test_partitions_exhaustive_and_duplicate_free():
    for n in range(5):
        universe = tuple(range(10, 10 + n))
        spec = PartitionSpec("u", (PartSpec("a"), PartSpec("b")))
        got = {(b.sets["a"], b.sets["b"]) for b in enumerate_partitions(spec, universe)}
        brute = set()
        for mask in product((0, 1), repeat=n):
            a = tuple(universe[i] for i in range(n) if mask[i] == 0)
            b = tuple(universe[i] for i in range(n) if mask[i] == 1)
            brute.add((a, b))
        assert got == brute
        assert len(enumerate_partitions(spec, universe)) == 2 ** n


def test_ordered_singleton_pairs():
    spec = PartitionSpec("u", (PartSpec("u0", 1), PartSpec("u1", 1), PartSpec("rest")))
    out = enumerate_partitions(spec, (5, 6))
    assert {(b.sets["u0"], b.sets["u1"]) for b in out} == {((5,), (6,)), ((6,), (5,))}


def test_empty_family_vs_unsatisfiable():
    single = PartitionSpec("u", (PartSpec("u0", 1), PartSpec("rest")))
    assert enumerate_partitions(single, ()) == []
    dup = PartitionSpec("u", (PartSpec("x"), PartSpec("x")))
    with pytest.raises(UnsatisfiableSpec):
        enumerate_partitions(dup, (1,))


def test_binding_rejects_rebinds():
    b = Binding({"u": (1,)})
    with pytest.raises(ValueError):
        b.with_sets({"u": (2,)})

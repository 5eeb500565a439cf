import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dholt import terms as T
from dholt.checker import DholTypeError
from dholt.corpus.build import build_corpus
from dholt.syntax import ParseError
from dholt.tptp import (
    Axiom, BaseType, ConstDecl, parse_formula, parse_problem, print_problem, print_szs, print_term,
)
from oracles import LIST_SIGNATURE, SIMPLE_SIGNATURE, random_dependent_formula, random_simple_formula

CORPUS = build_corpus()


def _same_problem(left, right):
    assert left.decl_names() == right.decl_names()
    for a, b in zip(left.decls, right.decls):
        if isinstance(a, Axiom):
            assert a.formula is b.formula
        elif isinstance(a, ConstDecl):
            assert a.type is b.type
        else:
            assert a.kind is b.kind
    if left.conjecture is not None:
        assert left.conjecture.formula is right.conjecture.formula


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
@pytest.mark.parametrize("explicit", [False, True])
def test_corpus_print_parse_round_trip(entry, explicit):
    first = parse_problem(entry.text(), entry.name)
    again = parse_problem(print_problem(first, explicit_eq=explicit), entry.name)
    _same_problem(first, again)


def test_declaration_kinds():
    p = parse_problem(LIST_SIGNATURE + "thf(ax,axiom,![N:nat]: ((plus @ zero @ N) = N)).", "p")
    kinds = {d.name: type(d) for d in p.decls}
    assert kinds["lst"] is BaseType and kinds["cons"] is ConstDecl and kinds["ax"] is Axiom
    assert p.decls[2].arity == 1
    assert p.conjecture is None


def test_explicit_annotation_is_kept():
    sig = parse_problem(LIST_SIGNATURE, "p").signature
    f = parse_formula("![N:nat, X:lst @ N]: ((app @ zero @ N @ nil @ X) ={lst @ N} X)", sig)
    default = parse_formula("![N:nat, X:lst @ N]: ((app @ zero @ N @ nil @ X) = X)", sig)
    assert f is not default
    assert "={(lst @ N)}" in print_term(f, explicit_eq=True)
    assert "={(lst @ (plus @ zero @ N))}" in print_term(default, explicit_eq=True)


def test_connectives_desugar_to_core():
    sig = parse_problem("thf(a,type,a: $o). thf(b,type,b: $o).", "p").signature
    a, b = T.const("a"), T.const("b")
    assert parse_formula("a | b", sig) is T.imp(T.neg(a), b)
    assert parse_formula("~ ~ a", sig) is T.neg(T.neg(a))
    assert parse_formula("$true", sig) is T.neg(T.Bot)


@pytest.mark.parametrize("text", [
    "thf(a,axiom,(p).",
    "thf(a axiom p).",
    "thf(a,axiom,![X]: p).",
    "fof(a,axiom,p).",
    "thf(a,axiom,undeclared).",
    "thf(nat_type,type,nat: $tType). thf(t,type,t: nat @ nat).",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_problem(text, "bad")


@pytest.mark.parametrize("text", [
    LIST_SIGNATURE + "thf(a,axiom,(cons @ zero @ zero @ nil) = nil).",
    LIST_SIGNATURE + "thf(a,axiom,s @ zero).",
])
def test_type_errors(text):
    with pytest.raises(DholTypeError):
        parse_problem(text, "bad")


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_simple_formula_round_trip(seed):
    sig = parse_problem(SIMPLE_SIGNATURE, "s").signature
    f = T.intern(random_simple_formula(random.Random(seed)))
    assert parse_formula(print_term(f, explicit_eq=True), sig) is f


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_dependent_formula_round_trip(seed):
    sig = parse_problem(LIST_SIGNATURE, "l").signature
    f = T.intern(random_dependent_formula(random.Random(seed)))
    assert parse_formula(print_term(f, explicit_eq=True), sig) is f


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_problem("thf(a,type,a: $o).\nthf(b,axiom,a & nope).", "bad")
    assert (info.value.line, info.value.col) == (2, 17)


def test_szs_line():
    assert print_szs("Theorem", "x") == "% SZS status Theorem for x"
    assert print_szs("GaveUp", "x", "why") == "% SZS status GaveUp for x : why"
    with pytest.raises(ValueError):
        print_szs("CounterSatisfiable", "x")

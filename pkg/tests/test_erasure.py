import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dholt import terms as T
from dholt.checker import skeleton
from dholt.erasure import Eraser, erase_problem, erase_type, per_name_map, phi, phi_counted
from dholt.tptp import parse_formula, parse_problem, print_problem, print_term
from oracles import LIST_SIGNATURE, SIMPLE_SIGNATURE, random_dependent_formula, random_simple_formula

seeds = st.integers(min_value=0, max_value=2**32 - 1)
SIMPLE = parse_problem(SIMPLE_SIGNATURE, "simple")
LISTS = parse_problem(LIST_SIGNATURE, "lists")


def test_erase_type_is_the_skeleton():
    cons = LISTS.signature.consts["cons"]
    assert erase_type(cons) is skeleton(cons)
    assert erase_type(T.Bool) is T.Bool


def test_relation_names_avoid_clashes():
    text = LIST_SIGNATURE + "thf(taken,type,lst_star: nat)."
    names = per_name_map(parse_problem(text, "clash").signature)
    assert names["lst"] == "lst_star2" and names["nat"] == "nat_star"


def test_example_three_golden(data_dir):
    source = parse_problem((data_dir / "golden" / "ex3-source.p").read_text(), "ex3")
    axiom = source.axioms[-1]
    assert axiom.name == "s_app"
    eraser = Eraser(source.signature)
    got = eraser.formula(axiom.formula)
    expected_text = (data_dir / "golden" / "ex3-erased.txt").read_text().strip()
    assert print_term(got) == expected_text
    erased_sig = erase_problem(source).signature
    assert got is parse_formula(expected_text, erased_sig)


def test_erased_problem_is_simply_typed_and_parses():
    text = LIST_SIGNATURE + "thf(g,conjecture,![N:nat, X:lst @ N]: ((app @ zero @ N @ nil @ X) = X))."
    erased = erase_problem(parse_problem(text, "g"))
    for ty in list(erased.signature.consts.values()):
        assert T.is_simple_type(ty)
    again = parse_problem(print_problem(erased), "again")
    assert again.conjecture.formula is erased.conjecture.formula


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_simply_typed_formulas_erase_to_their_phi_normal_form(seed):
    f = T.normalize(T.intern(random_simple_formula(random.Random(seed))))
    eraser = Eraser(SIMPLE.signature)
    assert eraser.formula(f) is T.normalize(phi(f, eraser.simple_pers))


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_phi_normal_simple_formulas_erase_to_themselves(seed):
    f = T.normalize(T.intern(random_simple_formula(random.Random(seed))))
    eraser = Eraser(SIMPLE.signature)
    if phi(f, eraser.simple_pers) is f:
        assert eraser.formula(f) is f


def test_user_written_guard_is_removed_too():
    # exhaustive rewriting cannot tell the erasure's guard from the user's
    f = parse_formula("![P:$o]: ((P = P) => (c = c))", SIMPLE.signature)
    got = Eraser(SIMPLE.signature).formula(f)
    assert got is parse_formula("![P:$o]: (c = c)", SIMPLE.signature)
    assert got is not f


def _erased(seed):
    eraser = Eraser(LISTS.signature)
    f = T.intern(random_dependent_formula(random.Random(seed)))
    return T.normalize(eraser.term(f)), eraser.simple_pers


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_phi_is_idempotent(seed):
    term, pers = _erased(seed)
    once = phi(term, pers)
    assert phi(once, pers) is once


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_phi_strategies_agree(seed):
    term, pers = _erased(seed)
    results = {phi_counted(term, pers, s)[0].id for s in ("bottom-up", "leftmost", "rightmost")}
    assert len(results) == 1


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_phi_steps_bounded_by_size(seed):
    term, pers = _erased(seed)
    for strategy in ("bottom-up", "leftmost", "rightmost"):
        assert phi_counted(term, pers, strategy)[1] <= term.size


def test_phi_turns_simple_relations_into_equality():
    pers = {"nat_star": "nat"}
    n = T.const("zero")
    rel = T.app(T.const("nat_star"), n, n)
    assert phi(rel, pers) is T.eq(T.base("nat"), n, n)
    with pytest.raises(ValueError):
        phi_counted(rel, pers, "outermost")


def test_function_relation_collapses_to_equality():
    # per at nat > nat between s and s becomes s = s
    eraser = Eraser(LISTS.signature)
    fn = T.arrow(T.base("nat"), T.base("nat"))
    f = T.eq(fn, T.const("s"), T.const("s"))
    assert eraser.formula(f) is f


def test_dependent_guards_survive():
    eraser = Eraser(LISTS.signature)
    f = parse_formula("![N:nat, X:lst @ N]: (X = X)", LISTS.signature)
    text = print_term(eraser.formula(f))
    assert "lst_star @ N @ X @ X" in text

import pytest

from dholt import terms as T
from dholt.checker import (
    GuardContext, SkeletonMismatch, TheoryError, check_theory, generate_tccs, skeleton, tcc_problem,
    typecheck, write_tccs,
)
from dholt.corpus.problems import TYPECHECK_FILES
from dholt.tptp import Axiom, parse_problem, print_term
from oracles import LIST_SIGNATURE

EX1 = parse_problem(TYPECHECK_FILES["ex1-typecheck"], "ex1")


def lines(path):
    return [ln for ln in path.read_text().splitlines() if ln.strip()]


def test_skeleton_drops_indices_and_dependencies():
    sig = EX1.signature
    assert skeleton(sig.consts["nil"]) is T.base("lst")
    cons = skeleton(sig.consts["cons"])
    assert cons is T.arrows(T.base("nat"), T.base("elem"), T.base("lst"), T.base("lst"))
    assert skeleton(T.Bool) is T.Bool


def test_example_one_is_skeleton_well_typed():
    check_theory(EX1)


def test_skeleton_mismatch_is_reported():
    # cons gets an index list instead of an element: the skeletons clash
    sig = parse_problem(LIST_SIGNATURE, "l").signature
    bad = T.app(T.const("cons"), T.const("zero"), T.const("nil"), T.const("nil"))
    from dholt.checker import Typer
    with pytest.raises(SkeletonMismatch):
        Typer(sig).type_of(bad)


def test_forward_reference_is_a_theory_error():
    text = (
        "thf(nat_type,type,nat: $tType).\n"
        "thf(early,axiom,![N:nat]: ((s @ N) = N)).\n"
        "thf(s_decl,type,s: nat > nat).\n"
    )
    with pytest.raises(TheoryError):
        check_theory(parse_problem(text, "order"))


def test_app_tccs_match_golden(data_dir):
    got = [print_term(t.formula, explicit_eq=True) for t in generate_tccs(EX1) if t.source in ("app_nil", "app_cons")]
    assert got == lines(data_dir / "golden" / "ex1-app-tccs.txt")


def test_conjecture_tcc_keeps_its_guard(data_dir):
    got = [print_term(t.formula, explicit_eq=True) for t in generate_tccs(EX1) if t.source == "app_self"]
    assert got == lines(data_dir / "golden" / "ex1-conjecture-tcc.txt")


def test_tccs_are_deduplicated():
    text = TYPECHECK_FILES["ex1-typecheck"].replace(
        "thf(app_self",
        "thf(app_nil_again,axiom,![N:nat, X:lst @ N]: (app @ zero @ N @ nil @ X) = X).\nthf(app_self",
    )
    sources = [t.source for t in generate_tccs(parse_problem(text, "dup"))]
    assert sources.count("app_nil") == 1 and "app_nil_again" not in sources


def test_tcc_premises_follow_declaration_order():
    positions = {d.name: i for i, d in enumerate(EX1.decls)}
    for tcc in generate_tccs(EX1):
        if tcc.source == "app_self":
            assert tcc.premises == len(EX1.decls)
        else:
            assert tcc.premises == positions[tcc.source]
            sub = tcc_problem(EX1, tcc)
            assert all(positions[a.name] < positions[tcc.source] for a in sub.axioms)


def test_guard_context_drops_unused_trailing_binders():
    nat = T.base("nat")
    ctx = GuardContext().bind("n", nat).bind("m", nat)
    closed = ctx.close(T.eq(nat, T.var("n"), T.const("zero")))
    assert closed is T.forall_named("n", nat, T.eq(nat, T.var("n"), T.const("zero")))
    guarded = GuardContext().bind("n", nat).guard(T.const("q")).bind("m", nat)
    out = guarded.close(T.eq(nat, T.var("n"), T.var("n")))
    assert out is T.forall_named("n", nat, T.imp(T.const("q"), T.eq(nat, T.var("n"), T.var("n"))))


def test_typecheck_modes():
    assert typecheck(EX1, "skeleton").status == "InexactTypecheck"
    exact = typecheck(EX1, "exact-only", 30)
    assert exact.status == "TypeCheck"
    assert len(exact.outcomes) == 3 and all(o.status == "Refuted" for o in exact.outcomes)
    assert typecheck(EX1, "exact", 30).budget_left > 0
    with pytest.raises(ValueError):
        typecheck(EX1, "loose")


def test_unprovable_tcc_fails_exact_check():
    text = LIST_SIGNATURE + "thf(bad,axiom,![N:nat, X:lst @ N]: ((app @ N @ N @ X @ X) = X))."
    result = typecheck(parse_problem(text, "bad"), "exact-only", 3)
    assert result.status in ("GaveUp", "Timeout")
    assert "bad" in result.message


def test_written_tccs_parse_back(tmp_path):
    tccs = generate_tccs(EX1)
    paths = write_tccs(EX1, tccs, tmp_path)
    assert len(paths) == 3
    for path, tcc in zip(paths, tccs):
        problem = parse_problem(path.read_text(), path.stem)
        assert problem.conjecture.formula is tcc.formula
        assert all(isinstance(d, Axiom) is False or d.name in EX1.decl_names() for d in problem.decls)

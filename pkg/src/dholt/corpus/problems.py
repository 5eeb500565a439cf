"""The case-study problems: one row per prover problem.

Each induction proof is split into an induction file (the library axiom
plus the base and step cases as lemmas), base-case files and step-case
files.  Lemma statements are written once here and reused verbatim
wherever a later file assumes them.

Equations are typed by their left-hand side, and the native rules only
chain equations at syntactically identical types.  Lemmas are therefore
oriented so that each chain of rewrites stays at one type.  Arithmetic
facts come first in every file so the type-correctness conditions of the
later axioms can use them.
"""

ZERO = "zero"
ONE = "(s @ zero)"


def S(a):
    return f"(s @ {a})"


def P(a, b):
    return f"(plus @ {a} @ {b})"


def APP(n, m, x, y):
    return f"(app @ {n} @ {m} @ {x} @ {y})"


def REV(n, x):
    return f"(rev @ {n} @ {x})"


def CONS(n, e, x):
    return f"(cons @ {n} @ {e} @ {x})"


def EQ(a, b):
    return f"({a} = {b})"


def ALL(binders, body):
    return f"(![{', '.join(binders)}]: {body})"


def IMP(a, b):
    return f"({a} => {b})"


def lst(n):
    return f"lst @ {n}"


def _ax(name, formula, uses=("app_decl", "nil_decl", "cons_decl", "rev_decl")):
    return (name, formula, set(uses))


NIL = "nil"
SINGLE = CONS(ZERO, "E", NIL)  # the one-element list [E]

# -- app-nil -------------------------------------------------------------------------
APP_NIL_R = ALL(["N:nat", f"X:{lst('N')}"], EQ(APP("N", ZERO, "X", NIL), "X"))
APP_NIL_BASE = EQ(APP(ZERO, ZERO, NIL, NIL), NIL)
APP_NIL_STEP = ALL(["N:nat", "E:elem", f"Y:{lst('N')}"],
                   IMP(EQ(APP("N", ZERO, "Y", NIL), "Y"),
                       EQ(APP(S("N"), ZERO, CONS("N", "E", "Y"), NIL), CONS("N", "E", "Y"))))
APP_NIL_UNFOLD = ALL(["N:nat", "E:elem", f"Y:{lst('N')}"],
                     EQ(APP(S("N"), ZERO, CONS("N", "E", "Y"), NIL),
                        CONS(P("N", ZERO), "E", APP("N", ZERO, "Y", NIL))))

# -- app-assoc -------------------------------------------------------------------------
AA_REST = ["N2:nat", f"X2:{lst('N2')}", "N3:nat", f"X3:{lst('N3')}"]


def AA_BODY(n1, x1):
    return EQ(APP(n1, P("N2", "N3"), x1, APP("N2", "N3", "X2", "X3")),
              APP(P(n1, "N2"), "N3", APP(n1, "N2", x1, "X2"), "X3"))


def AA(n1, x1):
    return ALL(AA_REST, AA_BODY(n1, x1))


APP_ASSOC = ALL(["N1:nat", f"X1:{lst('N1')}"], AA("N1", "X1"))
AA_STEP_BINDERS = ["N:nat", "E:elem", f"Y:{lst('N')}"]
AA_BASE = AA(ZERO, NIL)
AA_BASE_LHS = ALL(AA_REST, EQ(APP(ZERO, P("N2", "N3"), NIL, APP("N2", "N3", "X2", "X3")),
                               APP("N2", "N3", "X2", "X3")))
AA_BASE_RHS = ALL(AA_REST, EQ(APP(P(ZERO, "N2"), "N3", APP(ZERO, "N2", NIL, "X2"), "X3"),
                               APP("N2", "N3", "X2", "X3")))
AA_STEP = ALL(AA_STEP_BINDERS, IMP(AA("N", "Y"), AA(S("N"), CONS("N", "E", "Y"))))
AA_C1 = CONS(P("N", P("N2", "N3")), "E", APP("N", P("N2", "N3"), "Y", APP("N2", "N3", "X2", "X3")))
AA_C2 = CONS(P(P("N", "N2"), "N3"), "E", APP(P("N", "N2"), "N3", APP("N", "N2", "Y", "X2"), "X3"))
AA_STEP_LHS = ALL(AA_STEP_BINDERS + AA_REST,
                  EQ(APP(S("N"), P("N2", "N3"), CONS("N", "E", "Y"), APP("N2", "N3", "X2", "X3")), AA_C1))
AA_STEP_RHS = ALL(AA_STEP_BINDERS + AA_REST,
                  EQ(APP(P(S("N"), "N2"), "N3", APP(S("N"), "N2", CONS("N", "E", "Y"), "X2"), "X3"), AA_C2))
AA_STEP_CONS = ALL(AA_STEP_BINDERS, IMP(AA("N", "Y"), ALL(AA_REST, EQ(AA_C1, AA_C2))))

# -- app-assoc-m1 --------------------------------------------------------------------------
M1_REST = ["E:elem", "M:nat", f"Z:{lst('M')}"]


def M1_BODY(n, x):
    return EQ(APP(P(n, ONE), "M", APP(n, ONE, x, SINGLE), "Z"), APP(n, S("M"), x, CONS("M", "E", "Z")))


def M1(n, x):
    return ALL(M1_REST, M1_BODY(n, x))


APP_ASSOC_M1 = ALL(["N:nat", f"X:{lst('N')}"], M1("N", "X"))
M1_STEP_BINDERS = ["N:nat", "D:elem", f"W:{lst('N')}"]
M1_BASE = M1(ZERO, NIL)
M1_BASE_MID = APP(ONE, "M", SINGLE, "Z")
M1_BASE_LHS = ALL(M1_REST, EQ(APP(P(ZERO, ONE), "M", APP(ZERO, ONE, NIL, SINGLE), "Z"), M1_BASE_MID))
M1_STEP = ALL(M1_STEP_BINDERS, IMP(M1("N", "W"), M1(S("N"), CONS("N", "D", "W"))))
M1_STEP_LHS = ALL(M1_STEP_BINDERS + M1_REST,
                  EQ(APP(P(S("N"), ONE), "M", APP(S("N"), ONE, CONS("N", "D", "W"), SINGLE), "Z"),
                     CONS(P(P("N", ONE), "M"), "D", APP(P("N", ONE), "M", APP("N", ONE, "W", SINGLE), "Z"))))

# -- rev-invol-lem -------------------------------------------------------------------------
RL_REST = ["M:nat", f"Y:{lst('M')}"]


def RL_BODY(n, x):
    return EQ(REV(P(n, "M"), APP(n, "M", REV(n, x), "Y")), APP("M", n, REV("M", "Y"), x))


def RL(n, x):
    return ALL(RL_REST, RL_BODY(n, x))


REV_INVOL_LEM = ALL(["N:nat", f"X:{lst('N')}"], RL("N", "X"))
RL_STEP_BINDERS = ["N:nat", "E:elem", f"W:{lst('N')}"]
RL_BASE = RL(ZERO, NIL)
RL_BASE_INNER = ALL(RL_REST, EQ(APP(ZERO, "M", REV(ZERO, NIL), "Y"), "Y"))
RL_BASE_LHS = ALL(RL_REST, EQ(REV(P(ZERO, "M"), APP(ZERO, "M", REV(ZERO, NIL), "Y")), REV("M", "Y")))
RL_STEP = ALL(RL_STEP_BINDERS, IMP(RL("N", "W"), RL(S("N"), CONS("N", "E", "W"))))
# the chain  L = rev (s n + m) A0,  A0 = A1 = A2,  rev (n + s m) A2 = B1 = B1p = R
_A0 = APP(S("N"), "M", REV(S("N"), CONS("N", "E", "W")), "Y")
_RC = APP("N", ONE, REV("N", "W"), CONS(ZERO, "E", NIL))
_A1 = APP(S("N"), "M", _RC, "Y")
_A2 = APP("N", S("M"), REV("N", "W"), CONS("M", "E", "Y"))
_B1 = APP(S("M"), "N", REV(S("M"), CONS("M", "E", "Y")), "W")
_B1P = APP(S("M"), "N", APP("M", ONE, REV("M", "Y"), CONS(ZERO, "E", NIL)), "W")
_R = APP("M", S("N"), REV("M", "Y"), CONS("N", "E", "W"))
_L = REV(P(S("N"), "M"), _A0)
RL_ALL = RL_STEP_BINDERS + RL_REST
RL_STEP_A = ALL(RL_ALL, EQ(_A0, _A1))
RL_STEP_B = ALL(RL_ALL, EQ(_A1, _A2))
RL_STEP_C = ALL(RL_ALL, EQ(_L, REV(P("N", S("M")), _A2)))
RL_STEP_D = ALL(RL_ALL, EQ(_B1, _B1P))
RL_STEP_E = ALL(RL_ALL, EQ(_B1P, _R))
RL_STEP_IH = ALL(RL_STEP_BINDERS, IMP(RL("N", "W"), ALL(RL_REST, EQ(_L, _B1))))
RL_STEP_F = ALL(RL_ALL, EQ(_B1, _R))

# -- rev-invol -------------------------------------------------------------------------------
RI_BINDERS = ["N:nat", f"X:{lst('N')}"]
REV_INVOL = ALL(RI_BINDERS, EQ(REV("N", REV("N", "X")), "X"))
_RI_M1 = REV(P("N", ZERO), APP("N", ZERO, REV("N", "X"), NIL))
_RI_M2 = APP(ZERO, "N", REV(ZERO, NIL), "X")
RI_LHS = ALL(RI_BINDERS, EQ(REV("N", REV("N", "X")), _RI_M1))
RI_MID = ALL(RI_BINDERS, EQ(REV("N", REV("N", "X")), _RI_M2))
RI_RHS_A = ALL(RI_BINDERS, EQ(_RI_M2, APP(ZERO, "N", NIL, "X")))
RI_RHS = ALL(RI_BINDERS, EQ("X", _RI_M2))


def _p(name, group, axioms, conjecture, uses=("app_decl", "nil_decl", "cons_decl", "rev_decl"), comment=""):
    return dict(name=name, group=group, axioms=axioms, conjecture=conjecture, uses=set(uses), comment=comment)


LISTS = ("app_decl", "nil_decl", "cons_decl")

PROBLEMS = [
    # app-nil
    _p("app-nil-induct", "app-nil",
       ["plus_n_zero", "lst_induct",
        _ax("app_nil_base", APP_NIL_BASE, LISTS), _ax("app_nil_step", APP_NIL_STEP, LISTS)],
       APP_NIL_R, LISTS, "induction instance for app-nil"),
    _p("app-nil-base", "app-nil", ["plus_zero", "app_nil"], APP_NIL_BASE, LISTS, "base case"),
    _p("app-nil-unfold", "app-nil", ["plus_succ", "app_cons"], APP_NIL_UNFOLD, LISTS,
       "step case, unfolding app on a cons cell"),
    _p("app-nil-step", "app-nil",
       ["plus_n_zero", _ax("app_nil_unfold", APP_NIL_UNFOLD, LISTS)], APP_NIL_STEP, LISTS,
       "step case"),
    # app-assoc
    _p("app-assoc-induct", "app-assoc",
       ["plus_assoc", "lst_induct",
        _ax("app_assoc_base", AA_BASE, LISTS), _ax("app_assoc_step", AA_STEP, LISTS)],
       APP_ASSOC, LISTS, "induction instance for app-assoc"),
    _p("app-assoc-base-lhs", "app-assoc", ["plus_zero", "app_nil"], AA_BASE_LHS, LISTS,
       "base case, left side"),
    _p("app-assoc-base-rhs", "app-assoc", ["plus_zero", "app_nil"], AA_BASE_RHS, LISTS,
       "base case, right side"),
    _p("app-assoc-base", "app-assoc",
       ["plus_zero", _ax("app_assoc_base_lhs", AA_BASE_LHS, LISTS),
        _ax("app_assoc_base_rhs", AA_BASE_RHS, LISTS)],
       AA_BASE, LISTS, "base case"),
    _p("app-assoc-step-lhs", "app-assoc", ["plus_succ", "app_cons"], AA_STEP_LHS, LISTS,
       "step case, unfolding the left side"),
    _p("app-assoc-step-rhs", "app-assoc", ["plus_succ", "app_cons"], AA_STEP_RHS, LISTS,
       "step case, unfolding the right side"),
    _p("app-assoc-step-cons", "app-assoc", ["plus_assoc"], AA_STEP_CONS, LISTS,
       "step case, the induction hypothesis under cons"),
    _p("app-assoc-step", "app-assoc",
       ["plus_succ", _ax("app_assoc_step_lhs", AA_STEP_LHS, LISTS), _ax("app_assoc_step_rhs", AA_STEP_RHS, LISTS),
        "plus_assoc", _ax("app_assoc_step_cons", AA_STEP_CONS, LISTS)],
       AA_STEP, LISTS, "step case"),
    # app-assoc-m1
    _p("app-assoc-m1-induct", "app-assoc-m1",
       ["plus_one_shift", "lst_induct",
        _ax("app_assoc_m1_base", M1_BASE, LISTS), _ax("app_assoc_m1_step", M1_STEP, LISTS)],
       APP_ASSOC_M1, LISTS, "induction instance for app-assoc-m1"),
    _p("app-assoc-m1-base-lhs", "app-assoc-m1", ["plus_zero", "app_nil"], M1_BASE_LHS, LISTS,
       "base case, left side"),
    _p("app-assoc-m1-base", "app-assoc-m1",
       ["plus_zero", "plus_succ", "plus_one_shift", "app_nil", "app_cons",
        _ax("app_assoc_m1_base_lhs", M1_BASE_LHS, LISTS)],
       M1_BASE, LISTS, "base case"),
    _p("app-assoc-m1-step-lhs", "app-assoc-m1", ["plus_succ", "app_cons"], M1_STEP_LHS, LISTS,
       "step case, unfolding the left side"),
    _p("app-assoc-m1-step", "app-assoc-m1",
       ["plus_succ", "plus_one_shift", "app_cons", _ax("app_assoc_m1_step_lhs", M1_STEP_LHS, LISTS)],
       M1_STEP, LISTS, "step case"),
    # rev-invol-lem
    _p("rev-invol-lem-induct", "rev-invol-lem",
       ["plus_comm", "lst_induct",
        _ax("rev_invol_lem_base", RL_BASE), _ax("rev_invol_lem_step", RL_STEP)],
       REV_INVOL_LEM, comment="induction instance for rev-invol-lem"),
    _p("rev-invol-lem-base-inner", "rev-invol-lem", ["plus_zero", "rev_nil", "app_nil"], RL_BASE_INNER,
       comment="base case, the appended empty reversal"),
    _p("rev-invol-lem-base-lhs", "rev-invol-lem",
       ["plus_zero", _ax("rev_invol_lem_base_inner", RL_BASE_INNER)], RL_BASE_LHS,
       comment="base case, left side"),
    _p("rev-invol-lem-base", "rev-invol-lem",
       ["plus_n_zero", "plus_comm", _ax("app_nil_r", APP_NIL_R, LISTS),
        _ax("rev_invol_lem_base_lhs", RL_BASE_LHS)], RL_BASE, comment="base case"),
    _p("rev-invol-lem-step-a", "rev-invol-lem", ["succ_plus_one", "rev_cons"], RL_STEP_A,
       comment="step case, unfolding rev on a cons cell"),
    _p("rev-invol-lem-step-b", "rev-invol-lem",
       ["succ_plus_one", "plus_one_shift",
        _ax("app_assoc_m1", APP_ASSOC_M1, LISTS)], RL_STEP_B,
       comment="step case, moving the singleton across app"),
    _p("rev-invol-lem-step-c", "rev-invol-lem",
       ["succ_plus_one", "plus_succ_shift", _ax("rev_invol_lem_step_a", RL_STEP_A),
        _ax("rev_invol_lem_step_b", RL_STEP_B)], RL_STEP_C,
       comment="step case, left side"),
    _p("rev-invol-lem-step-d", "rev-invol-lem", ["succ_plus_one", "rev_cons"], RL_STEP_D,
       comment="step case, unfolding rev on the other cons cell"),
    _p("rev-invol-lem-step-e", "rev-invol-lem",
       ["succ_plus_one", "plus_succ_shift",
        _ax("app_assoc_m1", APP_ASSOC_M1, LISTS)], RL_STEP_E,
       comment="step case, right side"),
    _p("rev-invol-lem-step-ih", "rev-invol-lem",
       ["plus_comm", "plus_succ_comm", _ax("rev_invol_lem_step_c", RL_STEP_C)],
       RL_STEP_IH, comment="step case, applying the induction hypothesis"),
    _p("rev-invol-lem-step-f", "rev-invol-lem",
       ["succ_plus_one", "plus_succ_shift", _ax("rev_invol_lem_step_d", RL_STEP_D),
        _ax("rev_invol_lem_step_e", RL_STEP_E)], RL_STEP_F,
       comment="step case, joining the right side"),
    _p("rev-invol-lem-step", "rev-invol-lem",
       ["plus_comm", "plus_succ_comm",
        _ax("rev_invol_lem_step_ih", RL_STEP_IH), _ax("rev_invol_lem_step_f", RL_STEP_F)], RL_STEP,
       comment="step case"),
    # rev-invol
    _p("rev-invol-lhs", "rev-invol", ["plus_n_zero", _ax("app_nil_r", APP_NIL_R, LISTS)], RI_LHS,
       comment="padding the inner reversal with an empty list"),
    _p("rev-invol-mid", "rev-invol",
       ["plus_n_zero", "plus_comm", _ax("rev_invol_lem", REV_INVOL_LEM),
        _ax("rev_invol_lhs", RI_LHS)], RI_MID, comment="applying rev-invol-lem"),
    _p("rev-invol-rhs-a", "rev-invol", ["rev_nil"], RI_RHS_A,
       comment="reversing the empty list"),
    _p("rev-invol-rhs", "rev-invol", ["plus_zero", "app_nil", _ax("rev_invol_rhs_a", RI_RHS_A)], RI_RHS,
       comment="appending to the empty list"),
    _p("rev-invol", "rev-invol",
       ["plus_zero", _ax("rev_invol_mid", RI_MID), _ax("rev_invol_rhs", RI_RHS)], REV_INVOL,
       comment="rev-invol from the lemmas"),
]

# Typecheck-only entries: the list signature with the defining equations of
# plus and app, and a disjunction whose left disjunct guards the right one.
EX1_TYPECHECK = """% ex1-typecheck
thf(nat_type,type,nat: $tType).
thf(elem_type,type,elem: $tType).
thf(lst_type,type,lst: !>[N:nat]: $tType).
thf(zero_decl,type,zero: nat).
thf(s_decl,type,s: nat > nat).
thf(nil_decl,type,nil: lst @ zero).
thf(cons_decl,type,cons: !>[N:nat]: (elem > (lst @ N) > (lst @ (s @ N)))).
thf(plus_decl,type,plus: nat > nat > nat).
thf(app_decl,type,app: !>[N:nat, M:nat]: ((lst @ N) > (lst @ M) > (lst @ (plus @ N @ M)))).
thf(plus_zero,axiom,![N:nat]: (plus @ zero @ N) = N).
thf(plus_succ,axiom,![N:nat, M:nat]: (plus @ (s @ N) @ M) = (s @ (plus @ N @ M))).
thf(app_nil,axiom,![N:nat, X:lst @ N]: (app @ zero @ N @ nil @ X) = X).
thf(app_cons,axiom,![N:nat, M:nat, Z:elem, X:lst @ N, Y:lst @ M]: (app @ (s @ N) @ M @ (cons @ N @ Z @ X) @ Y) = (cons @ (plus @ N @ M) @ Z @ (app @ N @ M @ X @ Y))).
thf(app_self,conjecture,![N:nat, X:lst @ N]: ((N = zero) => ((app @ N @ N @ X @ X) = X))).
"""

EX1_GUARD = """% ex1-guard
thf(nat_type,type,nat: $tType).
thf(lst_type,type,lst: !>[N:nat]: $tType).
thf(guard_first,conjecture,![N:nat, M:nat, X:lst @ N, Y:lst @ M]: ((M != N) | (X = Y))).
"""

TYPECHECK_FILES = {"ex1-typecheck": EX1_TYPECHECK, "ex1-guard": EX1_GUARD}

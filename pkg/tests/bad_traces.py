"""Hand-written traces that break one side condition each.

Every case is ``(label, problem text, trace text, expected violation fragment)``.
The honest counterparts in ``GOOD`` must be accepted, which shows the
rejection comes from the broken condition and not from a typo.
"""

LISTS = """\
thf(nat_type,type,nat: $tType).
thf(elem_type,type,elem: $tType).
thf(lst_type,type,lst: !>[N:nat]: $tType).
thf(zero_decl,type,zero: nat).
thf(one_decl,type,one: nat).
thf(e_decl,type,e: elem).
thf(a_decl,type,a: lst @ zero).
thf(b_decl,type,b: lst @ one).
thf(p_decl,type,p: nat > $o).
thf(q_decl,type,q: $o).
"""

# declaration positions in LISTS: 0..9
CON_PROBLEM = LISTS + """\
thf(a_refl,axiom,a = a).
thf(b_irrefl,axiom,b != b).
"""

CON_BAD = """\
trace con mode native-only
step 1 at root rule con side d premises T10 T11
add 1.1 e1 formula (a !={(lst @ zero)} b)
add 1.1 e2 formula (a !={(lst @ zero)} b)
add 1.2 e3 formula (a !={(lst @ zero)} b)
add 1.2 e4 formula (a !={(lst @ zero)} b)
"""

CON_GOOD = """\
trace con mode native-only
step 1 at root rule neq side d premises T11
add 1.1 e1 formula $false
"""

FORALL_PROBLEM = LISTS + """\
thf(all_p,axiom,![N:nat]: (p @ N)).
thf(not_p,conjecture,p @ zero).
"""

FORALL_BAD = """\
trace forall mode native-only
step 1 at root rule forall side d premises T10 with e
add 1.1 e1 formula (p @ e)
"""

FORALL_GOOD = """\
trace forall mode native-only
step 1 at root rule forall side d premises T10 with zero
add 1.1 e1 formula (p @ zero)
step 2 at 1.1 rule neg side d premises e1 G0
add 2.1 e2 formula $false
"""

FRESH_PROBLEM = LISTS + """\
thf(some_p,conjecture,![N:nat]: ((p @ N) => (p @ N))).
"""

FRESH_BAD = """\
trace fresh mode native-only
step 1 at root rule nforall side d premises G0
add 1.1 e1 decl zero nat
add 1.1 e2 formula ~ ((p @ zero) => (p @ zero))
"""

FRESH_GOOD = """\
trace fresh mode native-only
step 1 at root rule nforall side d premises G0
add 1.1 e1 decl n_1 nat
add 1.1 e2 formula ~ ((p @ n_1) => (p @ n_1))
step 2 at 1.1 rule nimp side d premises e2
add 2.1 e3 formula (p @ n_1)
add 2.1 e4 formula ~ (p @ n_1)
step 3 at 2.1 rule neg side d premises e3 e4
add 3.1 e5 formula $false
"""

MAT_PROBLEM = LISTS + """\
thf(q_holds,axiom,q).
thf(q_fails,axiom,~ q).
"""

MAT_BAD = """\
trace mat mode native-only
step 1 at root rule mat side d premises T10 T11
"""

MAT_GOOD = """\
trace mat mode native-only
step 1 at root rule neg side d premises T10 T11
add 1.1 e1 formula $false
"""

DEC_PROBLEM = LISTS + """\
thf(zero_neq,axiom,zero != zero).
"""

DEC_BAD = """\
trace dec mode native-only
step 1 at root rule dec side d premises T10
"""

DEC_GOOD = """\
trace dec mode native-only
step 1 at root rule neq side d premises T10
add 1.1 e1 formula $false
"""

ERASE_PROBLEM = FRESH_PROBLEM

ERASE_BAD = """\
trace erase mode unstaged
step 1 at root rule nforall side d premises G0
add 1.1 e1 decl n_1 nat
add 1.1 e2 formula ~ ((p @ n_1) => (p @ n_1))
step 2 at 1.1 rule er1 side d premises e2
add 2.1 e3 formula ~ ((p @ n_1) => (p @ n_1))
"""

ERASE_GOOD = """\
trace erase mode unstaged
step 1 at root rule nforall side d premises G0
add 1.1 e1 decl n_1 nat
add 1.1 e2 formula ~ ((p @ n_1) => (p @ n_1))
step 2 at 1.1 rule er2 side d premises e1
add 2.1 e3 decl n_1 nat
add 2.1 e4 formula (n_1 ={nat} n_1)
step 3 at 2.1 rule er1 side d premises e2
add 3.1 e5 formula ~ ((p @ n_1) => (p @ n_1))
step 4 at 3.1 rule nimp side h premises e5
add 4.1 e6 formula (p @ n_1)
add 4.1 e7 formula ~ (p @ n_1)
step 5 at 4.1 rule neg side h premises e6 e7
add 5.1 e8 formula $false
"""

BAD = [
    ("con-type-identity", CON_PROBLEM, CON_BAD, "mismatched types"),
    ("forall-type-identity", FORALL_PROBLEM, FORALL_BAD, "binder type"),
    ("nforall-freshness", FRESH_PROBLEM, FRESH_BAD, "not fresh"),
    ("mat-arity", MAT_PROBLEM, MAT_BAD, "n >= 1"),
    ("dec-arity", DEC_PROBLEM, DEC_BAD, "n >= 1"),
    ("er1-after-er2", ERASE_PROBLEM, ERASE_BAD, "er1 before"),
]

GOOD = [
    ("con-type-identity", CON_PROBLEM, CON_GOOD),
    ("forall-type-identity", FORALL_PROBLEM, FORALL_GOOD),
    ("nforall-freshness", FRESH_PROBLEM, FRESH_GOOD),
    ("mat-arity", MAT_PROBLEM, MAT_GOOD),
    ("dec-arity", DEC_PROBLEM, DEC_GOOD),
    ("er1-after-er2", ERASE_PROBLEM, ERASE_GOOD),
]

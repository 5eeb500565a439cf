"""THF building blocks for the list case study.

Lists are indexed by their length.  Every problem shares the signature
below; each file picks the axioms its proof needs.  Equations carry no
explicit type, so each is typed by its left-hand side.
"""

SIGNATURE = [
    ("nat_type", "nat: $tType"),
    ("elem_type", "elem: $tType"),
    ("lst_type", "lst: !>[N:nat]: $tType"),
    ("zero_decl", "zero: nat"),
    ("s_decl", "s: nat > nat"),
    ("plus_decl", "plus: nat > nat > nat"),
    ("nil_decl", "nil: lst @ zero"),
    ("cons_decl", "cons: !>[N:nat]: (elem > (lst @ N) > (lst @ (s @ N)))"),
    ("app_decl", "app: !>[N:nat, M:nat]: ((lst @ N) > (lst @ M) > (lst @ (plus @ N @ M)))"),
    ("rev_decl", "rev: !>[N:nat]: ((lst @ N) > (lst @ N))"),
]

# symbols each declaration mentions, so unused ones can be left out
SIGNATURE_USES = {
    "nat_type": set(),
    "elem_type": set(),
    "lst_type": {"nat_type"},
    "zero_decl": {"nat_type"},
    "s_decl": {"nat_type"},
    "plus_decl": {"nat_type"},
    "nil_decl": {"lst_type", "zero_decl"},
    "cons_decl": {"lst_type", "elem_type", "s_decl"},
    "app_decl": {"lst_type", "plus_decl"},
    "rev_decl": {"lst_type"},
}

ONE = "(s @ zero)"

AXIOMS = {
    # Peano
    "s_inj": ("![N:nat, M:nat]: (((s @ N) = (s @ M)) => (N = M))", {"s_decl"}),
    "s_not_zero": ("![N:nat]: ((s @ N) != zero)", {"s_decl", "zero_decl"}),
    "nat_induct": (
        "![P:nat > $o]: (((P @ zero) & (![N:nat]: ((P @ N) => (P @ (s @ N))))) => (![N:nat]: (P @ N)))",
        {"s_decl", "zero_decl"},
    ),
    # defining equations of plus
    "plus_zero": ("![N:nat]: ((plus @ zero @ N) = N)", {"plus_decl", "zero_decl"}),
    "plus_succ": ("![N:nat, M:nat]: ((plus @ (s @ N) @ M) = (s @ (plus @ N @ M)))", {"plus_decl", "s_decl"}),
    # arithmetic facts
    "plus_n_zero": ("![N:nat]: ((plus @ N @ zero) = N)", {"plus_decl", "zero_decl"}),
    "plus_n_succ": ("![N:nat, M:nat]: ((plus @ N @ (s @ M)) = (s @ (plus @ N @ M)))", {"plus_decl", "s_decl"}),
    "plus_n_one": (f"![N:nat]: ((plus @ N @ {ONE}) = (s @ N))", {"plus_decl", "s_decl", "zero_decl"}),
    "plus_assoc": (
        "![N:nat, M:nat, K:nat]: ((plus @ N @ (plus @ M @ K)) = (plus @ (plus @ N @ M) @ K))",
        {"plus_decl"},
    ),
    "plus_assoc_rev": (
        "![N:nat, M:nat, K:nat]: ((plus @ (plus @ N @ M) @ K) = (plus @ N @ (plus @ M @ K)))",
        {"plus_decl"},
    ),
    "plus_comm": ("![N:nat, M:nat]: ((plus @ N @ M) = (plus @ M @ N))", {"plus_decl"}),
    "succ_plus_one": (f"![N:nat]: ((s @ N) = (plus @ N @ {ONE}))", {"plus_decl", "s_decl", "zero_decl"}),
    "plus_one_shift": (
        f"![N:nat, M:nat]: ((plus @ (plus @ N @ {ONE}) @ M) = (plus @ N @ (s @ M)))",
        {"plus_decl", "s_decl", "zero_decl"},
    ),
    "plus_succ_shift": ("![N:nat, M:nat]: ((plus @ (s @ N) @ M) = (plus @ N @ (s @ M)))", {"plus_decl", "s_decl"}),
    "plus_succ_comm": ("![N:nat, M:nat]: ((plus @ (s @ N) @ M) = (plus @ (s @ M) @ N))", {"plus_decl", "s_decl"}),
    # defining equations of app and rev
    "app_nil": ("![N:nat, X:lst @ N]: ((app @ zero @ N @ nil @ X) = X)", {"app_decl", "nil_decl"}),
    "app_cons": (
        "![N:nat, M:nat, Z:elem, X:lst @ N, Y:lst @ M]: "
        "((app @ (s @ N) @ M @ (cons @ N @ Z @ X) @ Y) = (cons @ (plus @ N @ M) @ Z @ (app @ N @ M @ X @ Y)))",
        {"app_decl", "cons_decl"},
    ),
    "rev_nil": ("((rev @ zero @ nil) = nil)", {"rev_decl", "nil_decl"}),
    "rev_cons": (
        "![N:nat, X:elem, Y:lst @ N]: "
        f"((rev @ (s @ N) @ (cons @ N @ X @ Y)) = (app @ N @ {ONE} @ (rev @ N @ Y) @ (cons @ zero @ X @ nil)))",
        {"rev_decl", "app_decl", "cons_decl", "nil_decl"},
    ),
    # list induction
    "lst_induct": (
        "![P:!>[N:nat]: ((lst @ N) > $o)]: "
        "(((P @ zero @ nil) & (![N:nat, X:elem, Y:lst @ N]: ((P @ N @ Y) => (P @ (s @ N) @ (cons @ N @ X @ Y))))) "
        "=> (![N:nat, X:lst @ N]: (P @ N @ X)))",
        {"nil_decl", "cons_decl"},
    ),
}

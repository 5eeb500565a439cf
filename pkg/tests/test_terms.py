import json
import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dholt import kernel
from dholt import terms as T
from oracles import (
    GOLDEN, SimpleGenerator, _SMALL_TYPES, alpha_equal, beta_eta, free_names, tuplify,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def random_term(seed, depth=4):
    rng = random.Random(seed)
    return SimpleGenerator(rng).term(rng.choice(_SMALL_TYPES), {}, depth)


def test_hash_consing_shares_nodes():
    a = T.app(T.const("f"), T.var("x"))
    b = T.app(T.const("f"), T.var("x"))
    assert a is b
    assert T.lam(T.base("i"), T.bvar(0)) is T.lam(T.base("i"), T.bvar(0), hint="y")


def test_alpha_variants_intern_to_one_node():
    i = ("base", "i")
    left = T.intern(("lam", "x", i, ("lam", "y", i, ("app", ("var", "x"), ("var", "y")))))
    right = T.intern(("lam", "u", i, ("lam", "v", i, ("app", ("var", "u"), ("var", "v")))))
    assert left is right


def test_loose_index_bound():
    assert T.bvar(3).loose == 4
    assert T.lam(T.base("i"), T.bvar(0)).loose == 0
    assert T.lam(T.base("i"), T.bvar(2)).loose == 2


def test_named_binders_are_capture_free():
    i = T.base("i")
    body = T.app(T.var("f"), T.var("x"))
    closed = T.lam_named("x", i, body)
    assert "x" not in T.free_vars(closed)
    # substituting the bound name's twin does not capture
    out = T.subst(T.lam_named("y", i, T.app(T.var("f"), T.var("y"))), {"f": T.var("y")})
    tree = T.to_tree(out)
    assert tree[3][1] == ("var", "y") and tree[3][2] != ("var", "y")


def test_frozen_normal_forms():
    cases = json.loads((GOLDEN / "normal_forms.json").read_text())
    assert len(cases) == 300
    for case in cases:
        got = T.normalize(T.intern(tuplify(case["input"])))
        assert got is T.intern(tuplify(case["normal"]))


@pytest.mark.parametrize("pure", ["1", ""])
def test_backends_agree_on_frozen_normal_forms(pure):
    script = (
        "import json\n"
        "from dholt import terms as T, kernel\n"
        "from oracles import GOLDEN, tuplify\n"
        "cases = json.loads((GOLDEN / 'normal_forms.json').read_text())\n"
        "ok = sum(T.normalize(T.intern(tuplify(c['input']))) is T.intern(tuplify(c['normal'])) for c in cases)\n"
        "print(kernel.BACKEND, ok)\n"
    )
    env = dict(os.environ, DHOLT_PURE_PYTHON=pure, PYTHONPATH=os.path.dirname(__file__))
    out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
    backend, ok = out.stdout.split()
    if pure:
        assert backend == "python"
    assert ok == "300"


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_normalize_matches_named_oracle(seed):
    tree = random_term(seed)
    got = T.to_tree(T.normalize(T.intern(tree)))
    assert alpha_equal(got, beta_eta(tree))


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_normalize_idempotent(seed):
    nf = T.normalize(T.intern(random_term(seed)))
    assert T.normalize(nf) is nf


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_tree_round_trip(seed):
    t = T.intern(random_term(seed))
    assert T.intern(T.to_tree(t)) is t


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_free_vars_match_oracle(seed):
    rng = random.Random(seed)
    ctx = {"Fx": ("base", "i"), "Fy": ("pi", "_", ("base", "i"), ("base", "i"))}
    tree = SimpleGenerator(rng).term(("o",), ctx, 4)
    assert set(T.free_vars(T.intern(tree))) == free_names(tree)


@settings(max_examples=200, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=3))
def test_shift_round_trip(seed, cutoff):
    # bodies of the generated lambdas carry loose indices
    t = T.intern(random_term(seed))
    while t.kind == T.LAM:
        t = t.kids[1]
    assert T.shift(T.shift(t, 2, cutoff), -2, cutoff) is t
    assert T.subst_bvar(T.shift(t, 1, 0), 0, T.var("probe")) is t


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_abstract_then_instantiate(seed):
    rng = random.Random(seed)
    tree = SimpleGenerator(rng).term(("o",), {"Fx": ("base", "i")}, 3)
    t = T.intern(tree)
    body = kernel.abstract(t, "Fx")
    assert kernel.instantiate(body, T.var("Fx")) is t
    assert not kernel.has_loose(body, 0) or "Fx" in T.free_vars(t)


def test_eta_contraction():
    i = T.base("i")
    f = T.const("f")
    assert T.normalize(T.lam(i, T.app(f, T.bvar(0)))) is f
    # not contractible: the bound variable also occurs in the head
    g = T.lam(i, T.app(T.app(T.const("g"), T.bvar(0)), T.bvar(0)))
    assert T.normalize(g) is g

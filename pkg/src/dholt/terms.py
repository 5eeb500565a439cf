"""DHOL terms and types over the interned kernel.

Terms and types share one node store.  Binder bodies are nameless; the
helpers here convert between named (locally nameless) and nameless forms.
A display name for each binder is remembered as a hint, keyed by node, and
only used when printing.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from dholt.kernel import (  # noqa: F401  (re-exported)
    APP, BOT, BVAR, CONST, EQ, FORALL, IMP, LAM, NEG, TBASE, TBOOL, TPI, TTYPE, VAR,
    KIND_NAMES, Term, abstract, free_vars, has_loose, instantiate, mk, normalize, shift,
    store_size, subst_bvar,
)

Bot = mk(BOT)
Bool = mk(TBOOL)
Kind = mk(TTYPE)

_hints: dict[int, str] = {}
_fresh = itertools.count(1)


def var(name: str) -> Term:
    return mk(VAR, name)


def const(name: str) -> Term:
    return mk(CONST, name)


def bvar(i: int) -> Term:
    return mk(BVAR, i)


def app(f: Term, *args: Term) -> Term:
    for a in args:
        f = mk(APP, None, (f, a))
    return f


def neg(a: Term) -> Term:
    return mk(NEG, None, (a,))


def imp(a: Term, b: Term) -> Term:
    return mk(IMP, None, (a, b))


def eq(ty: Term, a: Term, b: Term) -> Term:
    return mk(EQ, None, (ty, a, b))


def neq(ty: Term, a: Term, b: Term) -> Term:
    return neg(eq(ty, a, b))


def base(name: str, args=()) -> Term:
    return mk(TBASE, name, tuple(args))


def lam(ty: Term, body: Term, hint: str | None = None) -> Term:
    return _binder(LAM, ty, body, hint)


def forall(ty: Term, body: Term, hint: str | None = None) -> Term:
    return _binder(FORALL, ty, body, hint)


def pi(dom: Term, cod: Term, hint: str | None = None) -> Term:
    return _binder(TPI, dom, cod, hint)


def arrow(dom: Term, cod: Term) -> Term:
    """Non-dependent function type ``dom -> cod``."""
    return mk(TPI, None, (dom, shift(cod, 1)))


def arrows(*tys: Term) -> Term:
    out = tys[-1]
    for t in reversed(tys[:-1]):
        out = arrow(t, out)
    return out


def _binder(kind, ty, body, hint):
    t = mk(kind, None, (ty, body))
    if hint and not hint.startswith("_") and t.id not in _hints:
        _hints[t.id] = hint
    return t


def set_hint(t: Term, name: str) -> None:
    """Set the display name of a binder node (first writer wins)."""
    _hints.setdefault(t.id, name)


def hint(t: Term) -> str | None:
    return _hints.get(t.id)


def carry_hints(old: Term, new: Term) -> Term:
    """Copy binder hints from ``old`` onto the rebuilt ``new``.

    Walks both terms in parallel while their shapes agree; substitution and
    abstraction only change leaves, so their results keep every hint.
    """
    stack = [(old, new)]
    seen = set()
    while stack:
        a, b = stack.pop()
        if a is b or b.id in seen or a.kind != b.kind or len(a.kids) != len(b.kids):
            continue
        seen.add(b.id)
        if a.kind in (LAM, FORALL, TPI) and b.id not in _hints and a.id in _hints:
            _hints[b.id] = _hints[a.id]
        stack.extend(zip(a.kids, b.kids))
    return new


# -- locally nameless helpers -------------------------------------------------

def fresh_name(prefix: str = "_v") -> str:
    return f"{prefix}{next(_fresh)}"


def _abstract(body, name):
    return carry_hints(body, abstract(body, name))


def lam_named(name: str, ty: Term, body: Term) -> Term:
    return lam(ty, _abstract(body, name), name)


def forall_named(name: str, ty: Term, body: Term) -> Term:
    return forall(ty, _abstract(body, name), name)


def pi_named(name: str, dom: Term, cod: Term) -> Term:
    return pi(dom, _abstract(cod, name), name)


def forall_all(binders, body: Term) -> Term:
    """Close ``body`` under ``[(name, type), ...]`` from the inside out."""
    for name, ty in reversed(binders):
        body = forall_named(name, ty, body)
    return body


def open_binder(t: Term, name: str | None = None) -> tuple[str, Term, Term]:
    """Open a LAM/FORALL/TPI with a fresh free variable.

    Returns ``(name, binder_type, body)``.
    """
    assert t.kind in (LAM, FORALL, TPI), t
    if name is None:
        name = fresh_name()
    return name, t.kids[0], carry_hints(t.kids[1], instantiate(t.kids[1], var(name)))


def is_binder(t: Term) -> bool:
    return t.kind in (LAM, FORALL, TPI)


# -- operations ---------------------------------------------------------------

def subst(s: Term, bindings: dict[str, Term]) -> Term:
    """Simultaneous substitution of free variables.

    Replacements must be locally closed; capture cannot happen because bound
    variables are nameless.
    """
    if not bindings:
        return s
    names = frozenset(bindings)
    memo: dict[int, Term] = {}

    def go(t):
        if not (free_vars(t) & names):
            return t
        r = memo.get(t.id)
        if r is None:
            if t.kind == VAR:
                r = bindings[t.data]
            else:
                r = mk(t.kind, t.data, [go(k) for k in t.kids])
            memo[t.id] = r
        return r

    return carry_hints(s, go(s))


def constants(t: Term) -> set[str]:
    """Names of constants and base types occurring in ``t``."""
    out: set[str] = set()
    seen: set[int] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if u.id in seen:
            continue
        seen.add(u.id)
        if u.kind in (CONST, TBASE):
            out.add(u.data)
        stack.extend(u.kids)
    return out


def subterms(t: Term):
    """All distinct subterms (types included), each once, parents first."""
    seen: set[int] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if u.id in seen:
            continue
        seen.add(u.id)
        yield u
        stack.extend(reversed(u.kids))


@dataclass(frozen=True)
class Spine:
    head: Term
    args: tuple

    def rebuild(self) -> Term:
        return app(self.head, *self.args)


def decompose_spine(s: Term) -> Spine:
    args = []
    while s.kind == APP:
        args.append(s.kids[1])
        s = s.kids[0]
    args.reverse()
    return Spine(s, tuple(args))


def is_type(t: Term) -> bool:
    return t.kind in (TBOOL, TBASE, TPI, TTYPE)


def is_simple_type(ty: Term) -> bool:
    """No base type carries arguments and no Pi is dependent."""
    if ty.kind == TBOOL:
        return True
    if ty.kind == TBASE:
        return not ty.kids
    if ty.kind == TPI:
        return ty.kids[1].loose == 0 and is_simple_type(ty.kids[0]) and is_simple_type(ty.kids[1])
    return False


def is_neq(t: Term) -> bool:
    return t.kind == NEG and t.kids[0].kind == EQ


def complement(t: Term) -> Term:
    return t.kids[0] if t.kind == NEG else neg(t)


# -- named trees ----------------------------------------------------------------
# ('var', x) ('const', c) ('lam', x, ty, body) ('app', f, a) ('bot',) ('neg', a)
# ('imp', a, b) ('eq', ty, a, b) ('forall', x, ty, body) ('o',) ('base', a, *args)
# ('pi', x, dom, cod).  A 'var' bound by an enclosing binder becomes an index.

def intern(tree) -> Term:
    """Intern a named tree; alpha-variants map to the same node."""
    return _intern(tree, ())


def _intern(tree, scope):
    tag = tree[0]
    if tag == "var":
        for i, n in enumerate(scope):
            if n == tree[1]:
                return bvar(i)
        return var(tree[1])
    if tag == "const":
        return const(tree[1])
    if tag in ("lam", "forall", "pi"):
        _, x, ty, body = tree
        kind = {"lam": LAM, "forall": FORALL, "pi": TPI}[tag]
        return _binder(kind, _intern(ty, scope), _intern(body, (x,) + scope), x)
    if tag == "app":
        return app(_intern(tree[1], scope), _intern(tree[2], scope))
    if tag == "bot":
        return Bot
    if tag == "neg":
        return neg(_intern(tree[1], scope))
    if tag == "imp":
        return imp(_intern(tree[1], scope), _intern(tree[2], scope))
    if tag == "eq":
        return eq(*(_intern(x, scope) for x in tree[1:]))
    if tag == "o":
        return Bool
    if tag == "base":
        return base(tree[1], [_intern(x, scope) for x in tree[2:]])
    raise ValueError(f"bad tree tag {tag!r}")


def to_tree(t: Term, names=None):
    """Inverse of :func:`intern` with generated binder names ``x0, x1, ...``."""
    return _to_tree(t, (), names or itertools.count())


def _to_tree(t, scope, counter):
    k = t.kind
    if k == BVAR:
        return ("var", scope[t.data])
    if k == VAR:
        return ("var", t.data)
    if k == CONST:
        return ("const", t.data)
    if k in (LAM, FORALL, TPI):
        x = f"x{next(counter)}"
        tag = {LAM: "lam", FORALL: "forall", TPI: "pi"}[k]
        return (tag, x, _to_tree(t.kids[0], scope, counter), _to_tree(t.kids[1], (x,) + scope, counter))
    if k == APP:
        return ("app", _to_tree(t.kids[0], scope, counter), _to_tree(t.kids[1], scope, counter))
    if k == BOT:
        return ("bot",)
    if k == NEG:
        return ("neg", _to_tree(t.kids[0], scope, counter))
    if k == IMP:
        return ("imp",) + tuple(_to_tree(c, scope, counter) for c in t.kids)
    if k == EQ:
        return ("eq",) + tuple(_to_tree(c, scope, counter) for c in t.kids)
    if k == TBOOL:
        return ("o",)
    if k == TBASE:
        return ("base", t.data) + tuple(_to_tree(c, scope, counter) for c in t.kids)
    raise ValueError(f"cannot export {KIND_NAMES[k]}")

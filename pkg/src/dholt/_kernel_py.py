"""Hash-consed term store with de Bruijn operations (pure-Python backend).

Every node is interned: two structurally equal trees are the same object, so
alpha-equivalent terms compare with ``is``.  Binders are nameless; the second
child of LAM, FORALL and TPI lives under one extra binder.

This module must stay API-compatible with ``_kernel_c.pyx``.
"""
from __future__ import annotations

BVAR, VAR, CONST, LAM, APP, BOT, NEG, IMP, EQ, FORALL, TBOOL, TBASE, TPI, TTYPE = range(14)

KIND_NAMES = (
    "bvar", "var", "const", "lam", "app", "bot", "neg", "imp", "eq",
    "forall", "tbool", "tbase", "tpi", "ttype",
)

BACKEND = "python"


class Term:
    __slots__ = ("kind", "data", "kids", "id", "loose", "size", "_fv", "_nf")

    def __init__(self, kind, data, kids, ident, loose, size):
        self.kind = kind
        self.data = data
        self.kids = kids
        self.id = ident
        self.loose = loose
        self.size = size
        self._fv = None
        self._nf = None

    def __repr__(self):
        return f"<{KIND_NAMES[self.kind]}#{self.id}>"

    def __reduce__(self):
        raise TypeError("interned terms cannot be pickled")


_table: dict = {}
_count = 0


def _binds(kind):
    return kind == LAM or kind == FORALL or kind == TPI


def mk(kind, data=None, kids=()):
    """Intern the node ``(kind, data, kids)``."""
    global _count
    key = (kind, data, tuple([k.id for k in kids]))
    t = _table.get(key)
    if t is not None:
        return t
    if kind == BVAR:
        loose = data + 1
    else:
        loose = 0
        binds = _binds(kind)
        for i, k in enumerate(kids):
            lv = k.loose - 1 if (binds and i == 1) else k.loose
            if lv > loose:
                loose = lv
    size = 1
    for k in kids:
        size += k.size
    _count += 1
    t = Term(kind, data, tuple(kids), _count, loose, size)
    _table[key] = t
    return t


def store_size():
    return len(_table)


def shift(t, d, cutoff=0):
    """Add ``d`` to every loose bound index ``>= cutoff``."""
    if d == 0 or t.loose <= cutoff:
        return t
    return _shift(t, d, cutoff, {})


def _shift(t, d, c, memo):
    if t.loose <= c:
        return t
    key = (t.id, c)
    r = memo.get(key)
    if r is not None:
        return r
    if t.kind == BVAR:
        r = mk(BVAR, t.data + d) if t.data >= c else t
    else:
        binds = _binds(t.kind)
        kids = t.kids
        new = [_shift(k, d, c + 1 if (binds and i == 1) else c, memo) for i, k in enumerate(kids)]
        r = mk(t.kind, t.data, new)
    memo[key] = r
    return r


def subst_bvar(t, k, u):
    """Replace loose index ``k`` by ``u`` and close the gap above it.

    ``u`` is interpreted outside of ``t``; it is shifted when pushed under
    binders.
    """
    if t.loose <= k:
        return t
    return _subst(t, k, u, {})


def _subst(t, k, u, memo):
    if t.loose <= k:
        return t
    r = memo.get((t.id, k))
    if r is not None:
        return r
    if t.kind == BVAR:
        i = t.data
        if i == k:
            r = shift(u, k)
        elif i > k:
            r = mk(BVAR, i - 1)
        else:
            r = t
    else:
        binds = _binds(t.kind)
        new = [_subst(c, k + 1 if (binds and i == 1) else k, u, memo) for i, c in enumerate(t.kids)]
        r = mk(t.kind, t.data, new)
    memo[(t.id, k)] = r
    return r


def instantiate(body, u):
    """Beta-substitute ``u`` for the outermost bound variable of ``body``."""
    return subst_bvar(body, 0, u)


def abstract(t, name):
    """Turn free ``VAR name`` into index 0, making ``t`` a binder body."""
    if name not in free_vars(t):
        return shift(t, 1) if t.loose else t
    return _abstract(t, name, 0, {})


def _abstract(t, name, k, memo):
    if t.loose <= k and name not in free_vars(t):
        return t
    r = memo.get((t.id, k))
    if r is not None:
        return r
    kind = t.kind
    if kind == VAR:
        r = mk(BVAR, k) if t.data == name else t
    elif kind == BVAR:
        r = mk(BVAR, t.data + 1) if t.data >= k else t
    else:
        binds = _binds(kind)
        new = [_abstract(c, name, k + 1 if (binds and i == 1) else k, memo) for i, c in enumerate(t.kids)]
        r = mk(kind, t.data, new)
    memo[(t.id, k)] = r
    return r


def has_loose(t, k):
    """True iff bound index ``k`` occurs loose in ``t``."""
    if t.loose <= k:
        return False
    if t.kind == BVAR:
        return t.data == k
    binds = _binds(t.kind)
    for i, c in enumerate(t.kids):
        if has_loose(c, k + 1 if (binds and i == 1) else k):
            return True
    return False


_EMPTY = frozenset()


def free_vars(t):
    fv = t._fv
    if fv is None:
        if t.kind == VAR:
            fv = frozenset((t.data,))
        elif not t.kids:
            fv = _EMPTY
        else:
            fv = _EMPTY
            for c in t.kids:
                cf = free_vars(c)
                if cf:
                    fv = fv | cf if fv else cf
        t._fv = fv
    return fv


def normalize(t):
    """Beta-eta normal form (eta as contraction)."""
    nf = t._nf
    if nf is not None:
        return nf
    kind = t.kind
    if kind == APP:
        f = normalize(t.kids[0])
        a = normalize(t.kids[1])
        if f.kind == LAM:
            r = normalize(instantiate(f.kids[1], a))
        else:
            r = mk(APP, None, (f, a))
    elif kind == LAM:
        ty = normalize(t.kids[0])
        b = normalize(t.kids[1])
        if (b.kind == APP and b.kids[1].kind == BVAR and b.kids[1].data == 0
                and not has_loose(b.kids[0], 0)):
            r = shift(b.kids[0], -1)
        else:
            r = mk(LAM, None, (ty, b))
    elif not t.kids:
        r = t
    else:
        r = mk(kind, t.data, [normalize(c) for c in t.kids])
    t._nf = r
    r._nf = r
    return r

# cython: language_level=3, boundscheck=False, wraparound=False
"""Hash-consed term store with de Bruijn operations (compiled backend).

Same API and node numbering rules as ``_kernel_py``; node fields are typed
and the recursive walkers are C functions.
"""

BVAR, VAR, CONST, LAM, APP, BOT, NEG, IMP, EQ, FORALL, TBOOL, TBASE, TPI, TTYPE = range(14)

KIND_NAMES = (
    "bvar", "var", "const", "lam", "app", "bot", "neg", "imp", "eq",
    "forall", "tbool", "tbase", "tpi", "ttype",
)

BACKEND = "cython"

cdef enum:
    K_BVAR = 0
    K_VAR = 1
    K_LAM = 3
    K_APP = 4
    K_FORALL = 9
    K_TPI = 12


cdef class Term:
    cdef public int kind
    cdef public object data
    cdef public tuple kids
    cdef public long id
    cdef public int loose
    cdef public long size
    cdef public object _fv
    cdef public object _nf

    def __repr__(self):
        return f"<{KIND_NAMES[self.kind]}#{self.id}>"

    def __reduce__(self):
        raise TypeError("interned terms cannot be pickled")


cdef dict _table = {}
cdef long _count = 0


cdef inline bint _binds(int kind):
    return kind == K_LAM or kind == K_FORALL or kind == K_TPI


cpdef Term mk(int kind, object data=None, kids=()):
    """Intern the node ``(kind, data, kids)``."""
    global _count
    cdef tuple ks = tuple(kids)
    cdef Term k, t
    cdef int loose, lv, i
    cdef long size
    key = (kind, data, tuple([(<Term>k).id for k in ks]))
    found = _table.get(key)
    if found is not None:
        return <Term>found
    if kind == K_BVAR:
        loose = <int>data + 1
    else:
        loose = 0
        for i in range(len(ks)):
            k = <Term>ks[i]
            lv = k.loose - 1 if (_binds(kind) and i == 1) else k.loose
            if lv > loose:
                loose = lv
    size = 1
    for k in ks:
        size += k.size
    _count += 1
    t = Term.__new__(Term)
    t.kind = kind
    t.data = data
    t.kids = ks
    t.id = _count
    t.loose = loose
    t.size = size
    t._fv = None
    t._nf = None
    _table[key] = t
    return t


def store_size():
    return len(_table)


cpdef Term shift(Term t, int d, int cutoff=0):
    """Add ``d`` to every loose bound index ``>= cutoff``."""
    if d == 0 or t.loose <= cutoff:
        return t
    return _shift(t, d, cutoff, {})


cdef Term _shift(Term t, int d, int c, dict memo):
    cdef Term r
    cdef int i
    if t.loose <= c:
        return t
    key = (t.id, c)
    found = memo.get(key)
    if found is not None:
        return <Term>found
    if t.kind == K_BVAR:
        r = mk(K_BVAR, <int>t.data + d) if <int>t.data >= c else t
    else:
        new = [_shift(<Term>t.kids[i], d, c + 1 if (_binds(t.kind) and i == 1) else c, memo)
               for i in range(len(t.kids))]
        r = mk(t.kind, t.data, new)
    memo[key] = r
    return r


cpdef Term subst_bvar(Term t, int k, Term u):
    """Replace loose index ``k`` by ``u`` and close the gap above it."""
    if t.loose <= k:
        return t
    return _subst(t, k, u, {})


cdef Term _subst(Term t, int k, Term u, dict memo):
    cdef Term r
    cdef int i, idx
    if t.loose <= k:
        return t
    key = (t.id, k)
    found = memo.get(key)
    if found is not None:
        return <Term>found
    if t.kind == K_BVAR:
        idx = <int>t.data
        if idx == k:
            r = shift(u, k)
        elif idx > k:
            r = mk(K_BVAR, idx - 1)
        else:
            r = t
    else:
        new = [_subst(<Term>t.kids[i], k + 1 if (_binds(t.kind) and i == 1) else k, u, memo)
               for i in range(len(t.kids))]
        r = mk(t.kind, t.data, new)
    memo[key] = r
    return r


cpdef Term instantiate(Term body, Term u):
    """Beta-substitute ``u`` for the outermost bound variable of ``body``."""
    return subst_bvar(body, 0, u)


cpdef Term abstract(Term t, name):
    """Turn free ``VAR name`` into index 0, making ``t`` a binder body."""
    if name not in free_vars(t):
        return shift(t, 1) if t.loose else t
    return _abstract(t, name, 0, {})


cdef Term _abstract(Term t, name, int k, dict memo):
    cdef Term r
    cdef int i
    if t.loose <= k and name not in free_vars(t):
        return t
    key = (t.id, k)
    found = memo.get(key)
    if found is not None:
        return <Term>found
    if t.kind == K_VAR:
        r = mk(K_BVAR, k) if t.data == name else t
    elif t.kind == K_BVAR:
        r = mk(K_BVAR, <int>t.data + 1) if <int>t.data >= k else t
    else:
        new = [_abstract(<Term>t.kids[i], name, k + 1 if (_binds(t.kind) and i == 1) else k, memo)
               for i in range(len(t.kids))]
        r = mk(t.kind, t.data, new)
    memo[key] = r
    return r


cpdef bint has_loose(Term t, int k):
    """True iff bound index ``k`` occurs loose in ``t``."""
    cdef int i
    if t.loose <= k:
        return False
    if t.kind == K_BVAR:
        return <int>t.data == k
    for i in range(len(t.kids)):
        if has_loose(<Term>t.kids[i], k + 1 if (_binds(t.kind) and i == 1) else k):
            return True
    return False


cdef object _EMPTY = frozenset()


cpdef object free_vars(Term t):
    fv = t._fv
    if fv is None:
        if t.kind == K_VAR:
            fv = frozenset((t.data,))
        elif not t.kids:
            fv = _EMPTY
        else:
            fv = _EMPTY
            for c in t.kids:
                cf = free_vars(<Term>c)
                if cf:
                    fv = fv | cf if fv else cf
        t._fv = fv
    return fv


cpdef Term normalize(Term t):
    """Beta-eta normal form (eta as contraction)."""
    cdef Term f, a, b, ty, r
    if t._nf is not None:
        return <Term>t._nf
    if t.kind == K_APP:
        f = normalize(<Term>t.kids[0])
        a = normalize(<Term>t.kids[1])
        if f.kind == K_LAM:
            r = normalize(instantiate(<Term>f.kids[1], a))
        else:
            r = mk(K_APP, None, (f, a))
    elif t.kind == K_LAM:
        ty = normalize(<Term>t.kids[0])
        b = normalize(<Term>t.kids[1])
        if (b.kind == K_APP and (<Term>b.kids[1]).kind == K_BVAR and (<Term>b.kids[1]).data == 0
                and not has_loose(<Term>b.kids[0], 0)):
            r = shift(<Term>b.kids[0], -1)
        else:
            r = mk(K_LAM, None, (ty, b))
    elif not t.kids:
        r = t
    else:
        r = mk(t.kind, t.data, [normalize(<Term>c) for c in t.kids])
    t._nf = r
    r._nf = r
    return r

"""Translation of DHOL into simply-typed HOL.

Every base type ``a`` gets a relation constant ``a*`` (named ``a_star``)
that holds between erased terms denoting equal inhabitants.  Equations and
quantifiers are rewritten to use these relations; :func:`phi` then turns
relations at simple types back into plain equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from dholt import terms as T
from dholt.checker import Signature, skeleton
from dholt.terms import (
    APP, BVAR, CONST, EQ, FORALL, IMP, LAM, NEG, TBASE, TBOOL, TPI, Term,
)


def erase_type(ty: Term) -> Term:
    """``o`` stays, ``a t...`` becomes ``a``, ``Pi x:A. B`` becomes ``A -> B``."""
    return skeleton(ty)


def per_name_map(sig: Signature) -> dict[str, str]:
    taken = sig.names()
    out = {}
    for a in sig.types:
        name = f"{a}_star"
        i = 1
        while name in taken:
            i += 1
            name = f"{a}_star{i}"
        taken.add(name)
        out[a] = name
    return out


class Eraser:
    """Erasure relative to one DHOL signature."""

    def __init__(self, sig: Signature, per_names: dict[str, str] | None = None):
        self.sig = sig
        self.per_names = per_names or per_name_map(sig)
        self.simple_pers = {
            self.per_names[a]: a for a in sig.types if sig.arity(a) == 0
        }
        self._memo: dict[int, Term] = {}

    def per(self, ty: Term, s: Term, t: Term) -> Term:
        """The relation of type ``ty`` applied to erased terms ``s`` and ``t``."""
        k = ty.kind
        if k == TBOOL:
            return T.eq(T.Bool, s, t)
        if k == TBASE:
            args = [self.term(a) for a in ty.kids]
            return T.app(T.const(self.per_names[ty.data]), *args, s, t)
        if k == TPI:
            h = T.hint(ty) or "x"
            x, dom, cod = T.open_binder(ty)
            y = T.fresh_name()
            ed = erase_type(dom)
            body = T.imp(
                self.per(dom, T.var(x), T.var(y)),
                self.per(cod, T.app(s, T.var(x)), T.app(t, T.var(y))),
            )
            inner = T.forall_named(y, ed, body)
            T.set_hint(inner, _prime(h))
            out = T.forall_named(x, ed, inner)
            T.set_hint(out, h)
            return out
        raise ValueError(f"not a type: {T.KIND_NAMES[k]}")

    def term(self, s: Term) -> Term:
        """Erase a locally closed term (free variables keep their names)."""
        r = self._memo.get(s.id)
        if r is None:
            r = self._erase(s)
            self._memo[s.id] = r
        return r

    def _erase(self, s):
        k = s.kind
        if k == EQ:
            ty, a, b = s.kids
            return self.per(ty, self.term(a), self.term(b))
        if k == FORALL:
            h = T.hint(s)
            x, ty, body = T.open_binder(s)
            out = T.forall_named(x, erase_type(ty), T.imp(self.per(ty, T.var(x), T.var(x)), self.term(body)))
            if h:
                T.set_hint(out, h)
            return out
        if k == LAM:
            h = T.hint(s)
            x, ty, body = T.open_binder(s)
            out = T.lam_named(x, erase_type(ty), self.term(body))
            if h:
                T.set_hint(out, h)
            return out
        if not s.kids:
            return s
        return T.mk(k, s.data, [self.term(c) for c in s.kids])

    def formula(self, s: Term) -> Term:
        """Post-processed, normalized erasure of a formula."""
        return T.normalize(phi(T.normalize(self.term(s)), self.simple_pers))

    def context_entry(self, name: str, ty: Term) -> tuple[Term, Term]:
        """``x:A`` becomes ``x`` of the erased type plus the guard ``A* x x``."""
        g = T.normalize(phi(self.per(ty, T.var(name), T.var(name)), self.simple_pers))
        return erase_type(ty), g


def _prime(h: str) -> str:
    return h + "1"


# -- Phi ---------------------------------------------------------------------------

class PhiRewriter:
    """Rewrites at simple types: relation to equality, and guard removal.

    ``steps`` counts rule applications.
    """

    def __init__(self, simple_pers: dict[str, str]):
        self.simple_pers = simple_pers
        self.steps = 0
        self._memo: dict[int, Term] = {}

    def rewrite_root(self, t: Term) -> Term | None:
        """One rule application at the root, or ``None``."""
        if t.kind == APP:
            sp = T.decompose_spine(t)
            if (sp.head.kind == CONST and sp.head.data in self.simple_pers and len(sp.args) == 2):
                return T.eq(T.base(self.simple_pers[sp.head.data]), sp.args[0], sp.args[1])
            return None
        if t.kind != FORALL:
            return None
        a, body = t.kids
        if not T.is_simple_type(a):
            return None
        # forall x,y:A. x = y => L = R   ~>   (^x. L) = (^y. R)
        if body.kind == FORALL and body.kids[0] is T.shift(a, 1):
            inner = body.kids[1]
            if inner.kind == IMP:
                g, c = inner.kids
                if (g.kind == EQ and g.kids[1] is T.bvar(1) and g.kids[2] is T.bvar(0)
                        and g.kids[0] is T.shift(a, 2) and c.kind == EQ):
                    b_ty, lhs, rhs = c.kids
                    if (b_ty.loose == 0 and T.is_simple_type(b_ty)
                            and not T.has_loose(lhs, 0) and not T.has_loose(rhs, 1)):
                        f = T.normalize(T.lam(a, T.shift(lhs, -1)))
                        g_ = T.normalize(T.lam(a, T.subst_bvar(rhs, 1, T.Bot)))
                        return T.eq(T.arrow(a, b_ty), f, g_)
        # forall x:A. x = x => F x   ~>   forall x:A. F x
        if body.kind == IMP:
            g, c = body.kids
            if (g.kind == EQ and g.kids[1] is T.bvar(0) and g.kids[2] is T.bvar(0)
                    and g.kids[0] is T.shift(a, 1)):
                out = T.forall(a, c)
                h = T.hint(t)
                if h:
                    T.set_hint(out, h)
                return out
        return None

    def bottom_up(self, t: Term) -> Term:
        r = self._memo.get(t.id)
        if r is not None:
            return r
        if t.kids and t.kind not in (TBASE, TPI, TBOOL):
            kids = [c if (i == 0 and t.kind in (LAM, FORALL, EQ)) else self.bottom_up(c)
                    for i, c in enumerate(t.kids)]
            u = T.carry_hints(t, T.mk(t.kind, t.data, kids))
        else:
            u = t
        while True:
            v = self.rewrite_root(u)
            if v is None:
                break
            self.steps += 1
            # a rewrite only rebuilds around normal subterms; the new root
            # may enable another rule there and nowhere else
            u = v
        self._memo[t.id] = u
        return u

    def innermost(self, t: Term, rightmost: bool = False) -> Term:
        """Reference strategy: rewrite one innermost redex at a time."""
        while True:
            u = self._step_innermost(t, rightmost)
            if u is None:
                return t
            self.steps += 1
            t = u

    def _step_innermost(self, t, rightmost):
        if t.kids and t.kind not in (TBASE, TPI, TBOOL):
            order = range(len(t.kids))
            if rightmost:
                order = reversed(order)
            for i in order:
                c = t.kids[i]
                if i == 0 and t.kind in (LAM, FORALL, EQ):
                    continue
                r = self._step_innermost(c, rightmost)
                if r is not None:
                    kids = list(t.kids)
                    kids[i] = r
                    return T.carry_hints(t, T.mk(t.kind, t.data, kids))
        return self.rewrite_root(t)


def phi(s: Term, simple_pers: dict[str, str]) -> Term:
    """Exhaustive bottom-up application of the three simplification rules."""
    return PhiRewriter(simple_pers).bottom_up(s)


def phi_counted(s: Term, simple_pers: dict[str, str], strategy: str = "bottom-up") -> tuple[Term, int]:
    """``phi`` under a chosen strategy, with the number of rewrite steps.

    Strategies: ``bottom-up`` (the default), ``leftmost`` and ``rightmost``
    (innermost, one redex at a time).
    """
    rw = PhiRewriter(simple_pers)
    if strategy == "bottom-up":
        out = rw.bottom_up(s)
    elif strategy in ("leftmost", "rightmost"):
        out = rw.innermost(s, rightmost=strategy == "rightmost")
    else:
        raise ValueError(f"unknown strategy {strategy}")
    return out, rw.steps


# -- theories ------------------------------------------------------------------------

@dataclass
class ErasedTheory:
    decls: list = field(default_factory=list)
    per_names: dict = field(default_factory=dict)
    signature: Signature = field(default_factory=Signature)
    # declaration name -> names of the erased entries it produced
    origin: dict = field(default_factory=dict)


def erase_theory(problem, eraser: Eraser | None = None) -> ErasedTheory:
    """Erase every declaration in order; formulas are post-processed by phi."""
    from dholt.tptp import Axiom, BaseType, ConstDecl

    sig = problem.signature
    er = eraser or Eraser(sig)
    out = ErasedTheory(per_names=dict(er.per_names))
    hs = out.signature
    bool_ = T.Bool
    for d in problem.decls:
        made = []
        if isinstance(d, BaseType):
            hs.types[d.name] = T.Kind
            tel = [erase_type(ty) for _, ty in d.telescope]
            star = er.per_names[d.name]
            a = T.base(d.name)
            hs.consts[star] = T.arrows(*tel, a, a, bool_)
            xs = [T.fresh_name() for _ in tel]
            u, v = T.fresh_name(), T.fresh_name()
            ax = T.imp(T.app(T.const(star), *map(T.var, xs), T.var(u), T.var(v)), T.eq(a, T.var(u), T.var(v)))
            ax = T.forall_all(list(zip(xs, tel)) + [(u, a), (v, a)], ax)
            out.decls += [BaseType(d.name, T.Kind), ConstDecl(star, hs.consts[star])]
            made = [d.name, star]
            ax = T.normalize(phi(ax, er.simple_pers))
            if not _trivial(ax):
                out.decls.append(Axiom(f"{d.name}_per", ax))
                made.append(f"{d.name}_per")
        elif isinstance(d, ConstDecl):
            hs.consts[d.name] = erase_type(d.type)
            out.decls.append(ConstDecl(d.name, hs.consts[d.name]))
            made = [d.name]
            g = T.normalize(phi(er.per(d.type, T.const(d.name), T.const(d.name)), er.simple_pers))
            if not _trivial(g):
                out.decls.append(Axiom(f"{d.name}_typing", g))
                made.append(f"{d.name}_typing")
        else:
            f = er.formula(d.formula)
            out.decls.append(Axiom(d.name, f, d.role))
            made = [d.name]
        out.origin[d.name] = made
    return out


def _trivial(f: Term) -> bool:
    return f.kind == EQ and f.kids[1] is f.kids[2]


def erase_problem(problem):
    """The erased problem (theory plus erased conjecture) as a :class:`Problem`."""
    from dholt.tptp import Axiom, Problem

    er = Eraser(problem.signature)
    th = erase_theory(problem, er)
    conj = None
    if problem.conjecture is not None:
        conj = Axiom(problem.conjecture.name, er.formula(problem.conjecture.formula), "conjecture")
    return Problem(problem.name, list(th.decls), conj)

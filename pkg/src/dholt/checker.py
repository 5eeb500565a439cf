"""Type inference, skeleton checking and type-correctness conditions.

Type checking against the simply-typed skeleton is decidable and is what
:class:`Typer` does.  Exact DHOL type checking additionally needs the
argument equations produced by :func:`types_equal`; :func:`generate_tccs`
collects them, closed under their binders and guards, as proof obligations.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from dholt import terms as T
from dholt.terms import (
    APP, BOT, BVAR, CONST, EQ, FORALL, IMP, LAM, NEG, TBASE, TBOOL, TPI, TTYPE, VAR, Term,
)

log = logging.getLogger(__name__)


class DholTypeError(Exception):
    pass


class SkeletonMismatch(DholTypeError):
    pass


class TheoryError(DholTypeError):
    """An ill-formed theory: bad ordering, non-boolean axiom, bad telescope."""


@dataclass
class Signature:
    """Base types (name -> kind, a Pi chain ending in ``Kind``) and constants."""

    types: dict = field(default_factory=dict)
    consts: dict = field(default_factory=dict)

    def copy(self) -> "Signature":
        return Signature(dict(self.types), dict(self.consts))

    def arity(self, name: str) -> int:
        k, n = self.types[name], 0
        while k.kind == TPI:
            k, n = k.kids[1], n + 1
        return n

    def names(self) -> set:
        return set(self.types) | set(self.consts)

    def is_simple_base(self, name: str) -> bool:
        return self.types[name].kind == TTYPE


_skel: dict[int, Term] = {}


def skeleton(ty: Term) -> Term:
    """Drop base-type arguments and Pi dependencies."""
    r = _skel.get(ty.id)
    if r is None:
        if ty.kind == TBASE:
            r = T.base(ty.data) if ty.kids else ty
        elif ty.kind == TPI:
            r = T.arrow(skeleton(ty.kids[0]), skeleton(ty.kids[1]))
        elif ty.kind in (TBOOL, TTYPE):
            r = ty
        else:
            raise DholTypeError(f"not a type: {T.KIND_NAMES[ty.kind]}")
        _skel[ty.id] = r
    return r


def pi_domains(ty: Term, args) -> list[Term]:
    """Domain types of a (dependent) function type for the given arguments.

    The i-th domain is instantiated with the first i-1 arguments.
    """
    out = []
    for a in args:
        if ty.kind != TPI:
            raise DholTypeError("too many arguments")
        out.append(T.normalize(ty.kids[0]))
        ty = T.instantiate(ty.kids[1], a)
    return out


class Typer:
    """Representative-type inference over a signature and a variable context.

    Inference doubles as the skeleton check: a term whose skeleton types do
    not fit raises :class:`SkeletonMismatch`.  Results are memoized per node;
    this is sound because context variable names are never re-declared with
    a different type.
    """

    def __init__(self, sig: Signature, ctx: dict | None = None):
        self.sig = sig
        self.ctx = dict(ctx or {})
        self._memo: dict[int, Term] = {}

    def declare(self, name: str, ty: Term) -> None:
        self.ctx[name] = ty

    def fork(self) -> "Typer":
        t = Typer(self.sig, self.ctx)
        t._memo = self._memo
        return t

    def type_of(self, t: Term) -> Term:
        r = self._memo.get(t.id)
        if r is None:
            r = self._infer(t)
            self._memo[t.id] = r
        return r

    def _infer(self, t: Term) -> Term:
        k = t.kind
        if k == VAR:
            try:
                return self.ctx[t.data]
            except KeyError:
                raise DholTypeError(f"undeclared variable {t.data}") from None
        if k == CONST:
            try:
                return self.sig.consts[t.data]
            except KeyError:
                raise DholTypeError(f"undeclared constant {t.data}") from None
        if k == APP:
            f, a = t.kids
            ft = self.type_of(f)
            if ft.kind != TPI:
                raise SkeletonMismatch("application of a non-function")
            at = self.type_of(a)
            if skeleton(at) is not skeleton(ft.kids[0]):
                raise SkeletonMismatch("argument skeleton does not match domain")
            return T.normalize(T.instantiate(ft.kids[1], a))
        if k == LAM:
            self.check_type(t.kids[0])
            x, ty, body = T.open_binder(t)
            self.declare(x, ty)
            return T.pi_named(x, ty, self.type_of(body))
        if k == BOT:
            return T.Bool
        if k == NEG:
            self.expect_bool(t.kids[0])
            return T.Bool
        if k == IMP:
            self.expect_bool(t.kids[0])
            self.expect_bool(t.kids[1])
            return T.Bool
        if k == EQ:
            ty, a, b = t.kids
            self.check_type(ty)
            sk = skeleton(ty)
            if skeleton(self.type_of(a)) is not sk or skeleton(self.type_of(b)) is not sk:
                raise SkeletonMismatch("equation sides do not match the annotation")
            return T.Bool
        if k == FORALL:
            self.check_type(t.kids[0])
            x, ty, body = T.open_binder(t)
            self.declare(x, ty)
            self.expect_bool(body)
            return T.Bool
        if k == BVAR:
            raise DholTypeError("loose bound variable")
        raise DholTypeError(f"a type is not a term: {T.KIND_NAMES[k]}")

    def expect_bool(self, t: Term) -> None:
        if self.type_of(t).kind != TBOOL:
            raise SkeletonMismatch("expected a formula")

    def check_type(self, ty: Term) -> None:
        """Well-formedness of a type, up to the skeleton of base arguments."""
        k = ty.kind
        if k == TBOOL:
            return
        if k == TBASE:
            if ty.data not in self.sig.types:
                raise DholTypeError(f"undeclared base type {ty.data}")
            if self.sig.arity(ty.data) != len(ty.kids):
                raise DholTypeError(f"base type {ty.data} expects {self.sig.arity(ty.data)} arguments")
            doms = pi_domains(self.sig.types[ty.data], ty.kids)
            for d, a in zip(doms, ty.kids):
                if skeleton(self.type_of(a)) is not skeleton(d):
                    raise SkeletonMismatch(f"argument of {ty.data} has the wrong skeleton")
            return
        if k == TPI:
            self.check_type(ty.kids[0])
            x, dom, cod = T.open_binder(ty)
            self.declare(x, dom)
            self.check_type(cod)
            return
        raise DholTypeError(f"not a type: {T.KIND_NAMES[k]}")


def types_equal(typer: Typer, a: Term, b: Term) -> list[Term]:
    """Equations whose provability makes ``a`` and ``b`` equal types.

    Returns ``[]`` when the types are syntactically identical and raises
    :class:`SkeletonMismatch` when their skeletons differ.  Each equation is
    annotated with the telescope type instantiated by the arguments of ``a``.
    """
    if a is b:
        return []
    if skeleton(a) is not skeleton(b):
        raise SkeletonMismatch("types have different skeletons")
    out: list[Term] = []
    _teq(typer, a, b, out)
    return out


def _teq(typer, a, b, out):
    if a is b:
        return
    if a.kind == TBASE:
        doms = pi_domains(typer.sig.types[a.data], a.kids)
        for d, s, t in zip(doms, a.kids, b.kids):
            if s is not t:
                out.append(T.eq(d, s, t))
    elif a.kind == TPI:
        _teq(typer, a.kids[0], b.kids[0], out)
        x, dom, cod_a = T.open_binder(a)
        cod_b = T.instantiate(b.kids[1], T.var(x))
        typer.declare(x, dom)
        inner: list[Term] = []
        _teq(typer, T.normalize(cod_a), T.normalize(cod_b), inner)
        out.extend(T.forall_named(x, dom, c) for c in inner)


# -- theories -------------------------------------------------------------------

def check_theory(problem) -> None:
    """Check each declaration against the declarations before it.

    Raises :class:`TheoryError` on use-before-declaration, an ill-formed
    type or telescope, or a non-boolean axiom; :class:`SkeletonMismatch`
    for skeleton type errors.
    """
    from dholt.tptp import Axiom, BaseType

    sig = Signature()
    for d in problem.decls:
        body = d.kind if isinstance(d, BaseType) else d.formula if isinstance(d, Axiom) else d.type
        _check_declared(sig, body, d.name)
        typer = Typer(sig)
        if isinstance(d, BaseType):
            k = d.kind
            while k.kind == TPI:
                typer.check_type(k.kids[0])
                x, dom, k = T.open_binder(k)
                typer.declare(x, dom)
            if k.kind != TTYPE:
                raise TheoryError(f"{d.name}: malformed kind")
            sig.types[d.name] = d.kind
        elif isinstance(d, Axiom):
            if typer.type_of(d.formula).kind != TBOOL:
                raise TheoryError(f"{d.name}: axiom not boolean")
        else:
            typer.check_type(d.type)
            sig.consts[d.name] = d.type
    if problem.conjecture is not None:
        c = problem.conjecture
        _check_declared(sig, c.formula, c.name)
        if Typer(sig).type_of(c.formula).kind != TBOOL:
            raise TheoryError(f"{c.name}: conjecture not boolean")


def _check_declared(sig, t, where):
    missing = T.constants(t) - sig.names()
    if missing:
        raise TheoryError(f"{where}: use before declaration of {', '.join(sorted(missing))}")


# -- type-correctness conditions ----------------------------------------------------

@dataclass(frozen=True)
class Tcc:
    """A proof obligation; ``premises`` counts the leading declarations usable."""

    formula: Term
    source: str
    premises: int


@dataclass
class GuardContext:
    """Binders and implication guards enclosing the current position."""

    items: list = field(default_factory=list)  # ("bind", name, type) | ("guard", formula)

    def bind(self, name, ty, hint=None) -> "GuardContext":
        return GuardContext(self.items + [("bind", name, ty, hint)])

    def guard(self, g) -> "GuardContext":
        return GuardContext(self.items + [("guard", g)])

    @property
    def binders(self):
        return [(i[1], i[2]) for i in self.items if i[0] == "bind"]

    @property
    def guards(self):
        return [i[1] for i in self.items if i[0] == "guard"]

    def close(self, constraint: Term) -> Term:
        """Quantify and guard ``constraint``.

        Binders after the last guard that the constraint does not mention
        (directly or through a kept binder's type) are dropped.
        """
        items = self.items
        last_guard = max((i for i, it in enumerate(items) if it[0] == "guard"), default=-1)
        needed = set(T.free_vars(constraint))
        tail = []
        for it in reversed(items[last_guard + 1:]):
            if it[1] in needed:
                tail.append(it)
                needed |= T.free_vars(it[2])
        kept = items[: last_guard + 1] + tail[::-1]
        out = constraint
        for it in reversed(kept):
            if it[0] == "bind":
                out = T.forall_named(it[1], it[2], out)
                if it[3]:
                    T.set_hint(out, it[3])
            else:
                out = T.imp(it[1], out)
        return out


class _TccCollector:
    def __init__(self, sig: Signature):
        self.typer = Typer(sig)
        self.found: list[Term] = []

    def emit(self, ctx: GuardContext, constraints):
        for c in constraints:
            self.found.append(T.normalize(ctx.close(c)))

    def type_(self, ty: Term, ctx: GuardContext):
        k = ty.kind
        if k == TBASE:
            for a in ty.kids:
                self.term(a, ctx)
            doms = pi_domains(self.typer.sig.types[ty.data], ty.kids)
            for d, a in zip(doms, ty.kids):
                self.emit(ctx, types_equal(self.typer, d, self.typer.type_of(a)))
        elif k == TPI:
            self.type_(ty.kids[0], ctx)
            x, dom, cod = T.open_binder(ty)
            self.typer.declare(x, dom)
            self.type_(cod, ctx.bind(x, dom, T.hint(ty)))

    def term(self, t: Term, ctx: GuardContext):
        k = t.kind
        if k == APP:
            f, a = t.kids
            self.term(f, ctx)
            self.term(a, ctx)
            ft = self.typer.type_of(f)
            self.emit(ctx, types_equal(self.typer, ft.kids[0], self.typer.type_of(a)))
        elif k in (LAM, FORALL):
            self.type_(t.kids[0], ctx)
            x, ty, body = T.open_binder(t)
            self.typer.declare(x, ty)
            self.term(body, ctx.bind(x, ty, T.hint(t)))
        elif k == IMP:
            self.term(t.kids[0], ctx)
            self.term(t.kids[1], ctx.guard(t.kids[0]))
        elif k == NEG:
            self.term(t.kids[0], ctx)
        elif k == EQ:
            ty, a, b = t.kids
            self.type_(ty, ctx)
            self.term(a, ctx)
            self.term(b, ctx)
            self.emit(ctx, types_equal(self.typer, ty, self.typer.type_of(a)))
            self.emit(ctx, types_equal(self.typer, ty, self.typer.type_of(b)))


def generate_tccs(problem) -> list[Tcc]:
    """Type-correctness conditions of all declarations and the conjecture.

    Each condition may be proved from the axioms declared before its source;
    conditions of the conjecture may use every axiom.  Identical conditions
    (after normalization) are reported once, at their first source.
    """
    from dholt.tptp import Axiom, BaseType

    sig = problem.signature
    out: list[Tcc] = []
    seen: set[int] = set()

    def collect(term, source, premises, is_type):
        col = _TccCollector(sig)
        if is_type:
            col.type_(term, GuardContext())
        else:
            col.term(term, GuardContext())
        for f in col.found:
            if f.id not in seen:
                seen.add(f.id)
                out.append(Tcc(f, source, premises))

    for i, d in enumerate(problem.decls):
        if isinstance(d, BaseType):
            k = d.kind
            ctx = GuardContext()
            col = _TccCollector(sig)
            while k.kind == TPI:
                col.type_(k.kids[0], ctx)
                h = T.hint(k)
                x, dom, k = T.open_binder(k)
                col.typer.declare(x, dom)
                ctx = ctx.bind(x, dom, h)
            for f in col.found:
                if f.id not in seen:
                    seen.add(f.id)
                    out.append(Tcc(f, d.name, i))
        elif isinstance(d, Axiom):
            collect(d.formula, d.name, i, False)
        else:
            collect(d.type, d.name, i, True)
    if problem.conjecture is not None:
        collect(problem.conjecture.formula, problem.conjecture.name, len(problem.decls), False)
    return out


def tcc_problem(problem, tcc: Tcc, index: int = 0):
    """A standalone problem whose conjecture is ``tcc``.

    All type and constant declarations are kept; axioms are limited to the
    ones the condition may use.
    """
    from dholt.tptp import Axiom, Problem

    decls = [d for j, d in enumerate(problem.decls) if not isinstance(d, Axiom) or j < tcc.premises]
    return Problem(f"{problem.name}_tcc{index}", decls, Axiom(f"tcc_{tcc.source}", tcc.formula, "conjecture"))


def write_tccs(problem, tccs, directory) -> list:
    """Write one THF file per condition; returns the paths."""
    from pathlib import Path

    from dholt.tptp import print_problem

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, tcc in enumerate(tccs):
        p = d / f"{problem.name}_tcc{i}.p"
        p.write_text(f"% type-correctness condition from {tcc.source}\n" + print_problem(tcc_problem(problem, tcc, i)))
        paths.append(p)
    return paths


# -- typechecking ---------------------------------------------------------------------

TYPECHECK_MODES = ("skeleton", "exact", "exact-only")


@dataclass
class TccOutcome:
    tcc: Tcc
    status: str  # Refuted | Exhausted | Timeout
    seconds: float
    trace: object = None
    steps: int = 0


@dataclass
class TypecheckResult:
    """``status`` is an SZS status; ``budget_left`` is what remains for the conjecture."""

    status: str
    outcomes: list = field(default_factory=list)
    budget_left: float = 0.0
    message: str = ""


def typecheck(problem, mode: str = "exact-only", timeout: float = 60.0, rules: str = "native-only",
              subterm_instantiations: bool = True) -> TypecheckResult:
    """Skeleton check, then (unless ``mode`` is ``skeleton``) prove every condition.

    The budget is split evenly over the conditions; in ``exact`` mode one
    extra share is kept back for the conjecture.  Statuses: ``InexactTypecheck``
    after a skeleton-only check, ``TypeCheck`` when every condition is
    proved, ``TypeError`` for a skeleton error, and ``Timeout`` or
    ``GaveUp`` for the first condition that could not be proved.
    """
    import time

    from dholt.tableau import SearchConfig, search

    if mode not in TYPECHECK_MODES:
        raise ValueError(f"unknown typecheck mode {mode}")
    try:
        check_theory(problem)
    except DholTypeError as exc:
        return TypecheckResult("TypeError", message=str(exc))
    if mode == "skeleton":
        return TypecheckResult("InexactTypecheck", budget_left=timeout)
    tccs = generate_tccs(problem)
    shares = len(tccs) + (1 if mode == "exact" else 0)
    share = timeout / max(shares, 1)
    start = time.monotonic()
    outcomes = []
    for i, tcc in enumerate(tccs):
        sub = tcc_problem(problem, tcc, i)
        v = search(sub, SearchConfig(mode=rules, timeout=share, subterm_instantiations=subterm_instantiations))
        outcomes.append(TccOutcome(tcc, v.status, v.seconds, v.trace, v.steps))
        if v.status != "Refuted":
            status = "Timeout" if v.status == "Timeout" else "GaveUp"
            return TypecheckResult(status, outcomes, 0.0, f"condition from {tcc.source} not proved")
    left = max(timeout - (time.monotonic() - start), 0.0)
    return TypecheckResult("TypeCheck", outcomes, left)

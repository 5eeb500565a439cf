"""Problems: elaboration of parsed THF into DHOL terms, plus printing.

Names are resolved against the whole file, so a later type declaration may
be referenced earlier in the text; the stricter ordered discipline is
enforced by :func:`dholt.checker.check_theory`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from dholt import terms as T
from dholt.checker import DholTypeError, Signature, Typer, skeleton
from dholt.syntax import Annotated, ParseError, parse_entries
from dholt.terms import (
    APP, BOT, BVAR, CONST, EQ, FORALL, IMP, LAM, NEG, TBASE, TBOOL, TPI, TTYPE, VAR, Term,
)


class ElaborationTypeError(DholTypeError):
    """A well-formed formula whose simple types do not fit; carries ``line:col``."""


@dataclass
class BaseType:
    name: str
    kind: Term  # Pi chain ending in Kind

    @property
    def arity(self) -> int:
        n, k = 0, self.kind
        while k.kind == TPI:
            n, k = n + 1, k.kids[1]
        return n

    @property
    def telescope(self) -> list[tuple[str, Term]]:
        """``[(variable, type)]`` with earlier variables free in later types."""
        out, k = [], self.kind
        while k.kind == TPI:
            x, dom, k = T.open_binder(k, T.hint(k) or T.fresh_name())
            out.append((x, dom))
        return out


@dataclass
class ConstDecl:
    name: str
    type: Term


@dataclass
class Axiom:
    name: str
    formula: Term
    role: str = "axiom"


Decl = BaseType | ConstDecl | Axiom


@dataclass
class Problem:
    name: str
    decls: list = field(default_factory=list)
    conjecture: Axiom | None = None

    @property
    def signature(self) -> Signature:
        sig = Signature()
        for d in self.decls:
            if isinstance(d, BaseType):
                sig.types[d.name] = d.kind
            elif isinstance(d, ConstDecl):
                sig.consts[d.name] = d.type
        return sig

    @property
    def axioms(self) -> list[Axiom]:
        return [d for d in self.decls if isinstance(d, Axiom)]

    def decl_names(self) -> list[str]:
        return [d.name for d in self.decls]


_DEFINED_TYPES = {"$o": T.Bool, "$tType": T.Kind, "$tp": T.Kind}


class Elaborator:
    """Resolve raw parse trees against a signature.

    ``free`` maps lower-case names to types; these become free variables
    (used when reading formulas that mention eigenvariables).
    """

    def __init__(self, sig: Signature, pos: dict | None = None, free: dict | None = None):
        self.sig = sig
        self.pos = pos or {}
        self.free = dict(free or {})
        self.typer = Typer(sig, self.free)

    def fail(self, node, message):
        line, col = self.pos.get(id(node), (0, 0))
        raise ParseError(message, line, col)

    def ill_typed(self, node, message):
        line, col = self.pos.get(id(node), (0, 0))
        raise ElaborationTypeError(f"{line}:{col}: {message}" if line else message)

    # -- kinds and types --------------------------------------------------------
    def kind(self, node, scope) -> Term:
        """Elaborate ``$tType``, ``A > $tType`` or ``!>[X:A]: ...`` kinds."""
        tag = node[0]
        if tag == "word" and node[1] in ("$tType", "$tp"):
            return T.Kind
        if tag == "bin" and node[1] == ">":
            dom = self.type(node[2], scope)
            return T.arrow(dom, self.kind(node[3], scope))
        if tag == "quant" and node[1] == "!>":
            return self._binders(node, scope, self.kind)
        self.fail(node, "malformed kind")

    def is_kind(self, node) -> bool:
        tag = node[0]
        if tag == "word":
            return node[1] in ("$tType", "$tp")
        if tag == "bin" and node[1] == ">":
            return self.is_kind(node[3])
        if tag == "quant" and node[1] == "!>":
            return self.is_kind(node[3])
        return False

    def type(self, node, scope) -> Term:
        tag = node[0]
        if tag == "word":
            name = node[1]
            if name == "$o":
                return T.Bool
            if name in self.sig.types:
                return self._base(node, name, [], scope)
            self.fail(node, f"unknown type {name}")
        if tag == "app":
            head, args = node, []
            while head[0] == "app":
                args.append(head[2])
                head = head[1]
            args.reverse()
            if head[0] == "word" and head[1] in self.sig.types:
                return self._base(node, head[1], args, scope)
            self.fail(node, "malformed type application")
        if tag == "bin" and node[1] == ">":
            return T.arrow(self.type(node[2], scope), self.type(node[3], scope))
        if tag == "quant" and node[1] == "!>":
            return self._binders(node, scope, self.type)
        self.fail(node, "malformed type")

    def _base(self, node, name, arg_nodes, scope):
        kind = self.sig.types[name]
        if self.sig.arity(name) != len(arg_nodes):
            self.fail(node, f"base type {name} expects {self.sig.arity(name)} arguments, got {len(arg_nodes)}")
        args = []
        k = kind
        for a in arg_nodes:
            t, ty = self.term(a, scope)
            if skeleton(ty) is not skeleton(k.kids[0]):
                self.ill_typed(a, f"argument of {name} has the wrong type")
            args.append(t)
            k = T.instantiate(k.kids[1], t)
        return T.base(name, args)

    def _binders(self, node, scope, body_fn):
        """Elaborate ``!>[X:A, ...]: body`` (types or kinds)."""
        scope = dict(scope)
        opened = []
        for vname, vty in node[2]:
            if vty is None:
                self.fail(node, f"variable {vname} needs a type")
            ty = self.type(vty, scope)
            x = T.fresh_name()
            self.typer.declare(x, ty)
            scope[vname] = (x, ty)
            opened.append((vname, x, ty))
        out = body_fn(node[3], scope)
        for vname, x, ty in reversed(opened):
            out = T.pi_named(x, ty, out)
            T.set_hint(out, vname)
        return out

    # -- terms ------------------------------------------------------------------
    def formula(self, node, scope=None) -> Term:
        t, ty = self.term(node, scope or {})
        if ty.kind != TBOOL:
            self.ill_typed(node, "expected a formula")
        return t

    def term(self, node, scope) -> tuple[Term, Term]:
        tag = node[0]
        if tag in ("word", "uvar"):
            return self._atom(node, scope)
        if tag == "app":
            f, fty = self.term(node[1], scope)
            a, aty = self.term(node[2], scope)
            if fty.kind != TPI:
                self.ill_typed(node, "application of a non-function")
            if skeleton(aty) is not skeleton(fty.kids[0]):
                self.ill_typed(node, "argument type does not match the function domain")
            return T.app(f, a), T.normalize(T.instantiate(fty.kids[1], a))
        if tag == "not":
            return T.neg(self.formula(node[1], scope)), T.Bool
        if tag == "eq":
            a, aty = self.term(node[1], scope)
            b, bty = self.term(node[2], scope)
            ann = aty if node[4] is None else self.type(node[4], scope)
            if skeleton(aty) is not skeleton(bty) or skeleton(ann) is not skeleton(aty):
                self.ill_typed(node, "equation between terms of different types")
            if ann.kind == TTYPE:
                self.fail(node, "equation between types")
            e = T.eq(ann, a, b)
            return (T.neg(e) if node[3] else e), T.Bool
        if tag == "bin":
            return self._binary(node, scope), T.Bool
        if tag == "quant":
            return self._quant(node, scope)
        self.fail(node, "malformed term")

    def _atom(self, node, scope):
        name = node[1]
        if name in scope:
            x, ty = scope[name]
            return T.var(x), ty
        if node[0] == "uvar":
            self.fail(node, f"unbound variable {name}")
        if name in self.free:
            return T.var(name), self.free[name]
        if name in self.sig.consts:
            return T.const(name), self.sig.consts[name]
        if name == "$false":
            return T.Bot, T.Bool
        if name == "$true":
            return T.neg(T.Bot), T.Bool
        if name in self.sig.types or name in _DEFINED_TYPES:
            self.fail(node, f"type {name} used as a term")
        self.fail(node, f"unknown identifier {name}")

    def _binary(self, node, scope):
        op = node[1]
        if op == ">":
            self.fail(node, "type arrow in a formula")
        a = self.formula(node[2], scope)
        b = self.formula(node[3], scope)
        if op == "=>":
            return T.imp(a, b)
        if op == "<=":
            return T.imp(b, a)
        if op == "&":
            return T.neg(T.imp(a, T.neg(b)))
        if op == "|":
            return T.imp(T.neg(a), b)
        if op == "<=>":
            return T.eq(T.Bool, a, b)
        if op == "<~>":
            return T.neq(T.Bool, a, b)
        if op == "~&":
            return T.imp(a, T.neg(b))
        if op == "~|":
            return T.neg(T.imp(T.neg(a), b))
        self.fail(node, f"unsupported connective {op}")

    def _quant(self, node, scope):
        q = node[1]
        if q == "!>":
            self.fail(node, "dependent type in term position")
        scope = dict(scope)
        opened = []
        for vname, vty in node[2]:
            if vty is None:
                self.fail(node, f"variable {vname} needs a type")
            ty = self.type(vty, scope)
            x = T.fresh_name()
            self.typer.declare(x, ty)
            scope[vname] = (x, ty)
            opened.append((vname, x, ty))
        body, bty = self.term(node[3], scope)
        if q in ("!", "?") and bty.kind != TBOOL:
            self.ill_typed(node, "quantifier body is not a formula")
        if q == "?":
            body = T.neg(body)
        for vname, x, ty in reversed(opened):
            if q == "^":
                body = T.lam_named(x, ty, body)
                bty = T.pi_named(x, ty, bty)
                T.set_hint(bty, vname)
            else:
                body = T.forall_named(x, ty, body)
            T.set_hint(body, vname)
        if q == "?":
            return T.neg(body), T.Bool
        return body, (bty if q == "^" else T.Bool)


def parse_problem(text: str, name: str = "problem") -> Problem:
    """Parse THF text into an ordered problem."""
    entries, pos = parse_entries(text)
    types: dict[str, Annotated] = {}
    consts: dict[str, Annotated] = {}
    probe = Elaborator(Signature(), pos)
    for e in entries:
        if e.role != "type":
            continue
        _, sym, ty = e.formula
        if sym in types or sym in consts:
            raise ParseError(f"duplicate declaration of {sym}", e.line, e.col)
        (types if probe.is_kind(ty) else consts)[sym] = e

    sig = Signature()
    state: dict[str, str] = {}

    def declare(sym):
        if state.get(sym) == "done":
            return
        if state.get(sym) == "busy":
            e = types.get(sym) or consts[sym]
            raise ParseError(f"cyclic type declaration involving {sym}", e.line, e.col)
        state[sym] = "busy"
        e = types.get(sym) or consts[sym]
        for dep in _words(e.formula[2]):
            if dep != sym and (dep in types or dep in consts):
                declare(dep)
        el = Elaborator(sig, pos)
        try:
            if sym in types:
                sig.types[sym] = el.kind(e.formula[2], {})
            else:
                sig.consts[sym] = el.type(e.formula[2], {})
        except DholTypeError as exc:
            raise _located(exc, e) from None
        state[sym] = "done"

    for sym in list(types) + list(consts):
        declare(sym)

    problem = Problem(name)
    for e in entries:
        if e.role == "type":
            sym = e.formula[1]
            if sym in types:
                problem.decls.append(BaseType(sym, sig.types[sym]))
            else:
                problem.decls.append(ConstDecl(sym, sig.consts[sym]))
            continue
        el = Elaborator(sig, pos)
        try:
            f = el.formula(e.formula)
        except DholTypeError as exc:
            raise _located(exc, e) from None
        if e.role == "conjecture":
            if problem.conjecture is not None:
                raise ParseError("more than one conjecture", e.line, e.col)
            problem.conjecture = Axiom(e.name, f, "conjecture")
        elif e.role in ("axiom", "hypothesis", "definition", "lemma", "theorem", "assumption"):
            problem.decls.append(Axiom(e.name, f, e.role))
        else:
            raise ParseError(f"unsupported role {e.role}", e.line, e.col)
    return problem


def _located(exc: DholTypeError, entry: Annotated) -> ElaborationTypeError:
    if isinstance(exc, ElaborationTypeError):
        return ElaborationTypeError(f"{entry.name}: {exc}")
    return ElaborationTypeError(f"{entry.name}: {entry.line}:{entry.col}: {exc}")


def _words(node):
    if isinstance(node, tuple):
        if node and node[0] == "word":
            yield node[1]
        for part in node[1:]:
            yield from _words(part)
    elif isinstance(node, list):
        for part in node:
            yield from _words(part)


def parse_formula(text: str, sig: Signature, free: dict | None = None) -> Term:
    """Parse a single formula; lower-case names in ``free`` are variables."""
    from dholt.syntax import Parser

    p = Parser(text)
    node = p.formula()
    if p.peek().kind != "eof":
        p.error("trailing input")
    return Elaborator(sig, p.pos, free).formula(node)


def parse_type(text: str, sig: Signature, free: dict | None = None) -> Term:
    from dholt.syntax import Parser

    p = Parser(text)
    node = p.arrow_level()
    if p.peek().kind != "eof":
        p.error("trailing input")
    return Elaborator(sig, p.pos, free).type(node, {})


def parse_term(text: str, sig: Signature, free: dict | None = None) -> tuple[Term, Term]:
    from dholt.syntax import Parser

    p = Parser(text)
    node = p.formula()
    if p.peek().kind != "eof":
        p.error("trailing input")
    return Elaborator(sig, p.pos, free).term(node, {})


# -- printing -------------------------------------------------------------------

class Printer:
    """THF printer.  With ``explicit_eq`` every equation shows its type."""

    def __init__(self, explicit_eq: bool = False):
        self.explicit_eq = explicit_eq

    def term(self, t: Term, env=()) -> str:
        k = t.kind
        if k == BVAR:
            return env[t.data]
        if k in (VAR, CONST):
            return _atom(t.data)
        if k == BOT:
            return "$false"
        if k == NEG:
            a = t.kids[0]
            if a.kind == EQ:
                return self._eq(a, env, "!=")
            if a.kind == BOT:
                return "$true"
            return f"~ {self.term(a, env)}"
        if k == IMP:
            a, b = t.kids
            if a.kind == NEG:
                # the parser reads a | b as ~a => b
                return f"({self.term(a.kids[0], env)} | {self.term(b, env)})"
            return f"({self.term(a, env)} => {self.term(b, env)})"
        if k == EQ:
            return self._eq(t, env, "=")
        if k == APP:
            spine = T.decompose_spine(t)
            parts = [self.term(spine.head, env)] + [self.term(a, env) for a in spine.args]
            return "(" + " @ ".join(parts) + ")"
        if k in (LAM, FORALL):
            q = "^" if k == LAM else "!"
            binders = []
            while t.kind == k:
                name = self._fresh(t, env)
                binders.append(f"{name}: {self.type(t.kids[0], env)}")
                env = (name,) + tuple(env)
                t = t.kids[1]
            return f"({q}[{', '.join(binders)}]: {self.term(t, env)})"
        return self.type(t, env)

    def _eq(self, e, env, op):
        ty, a, b = e.kids
        if self.explicit_eq:
            op = f"{op}{{{self.type(ty, env)}}}"
        return f"({self.term(a, env)} {op} {self.term(b, env)})"

    def type(self, ty: Term, env=()) -> str:
        k = ty.kind
        if k == TBOOL:
            return "$o"
        if k == TTYPE:
            return "$tType"
        if k == TBASE:
            if not ty.kids:
                return _atom(ty.data)
            return "(" + " @ ".join([_atom(ty.data)] + [self.term(a, env) for a in ty.kids]) + ")"
        if k == TPI:
            if not T.has_loose(ty.kids[1], 0):
                cod = T.shift(ty.kids[1], -1)
                return f"({self.type(ty.kids[0], env)} > {self.type(cod, env)})"
            name = self._fresh(ty, env)
            return f"(!>[{name}: {self.type(ty.kids[0], env)}]: {self.type(ty.kids[1], (name,) + tuple(env))})"
        return self.term(ty, env)

    @staticmethod
    def _fresh(t, env):
        h = T.hint(t)
        if not h or h.startswith("_"):
            h = _type_letter(t.kids[0])
        base = h[0].upper() + h[1:]
        if not base[0].isalpha():
            base = "X" + base
        name, i = base, 0
        while name in env:
            i += 1
            name = f"{base}{i}"
        return name


def _type_letter(ty: Term) -> str:
    if ty.kind == TBASE and ty.data[:1].isalpha():
        return ty.data[0].upper()
    if ty.kind == TBOOL:
        return "P"
    if ty.kind == TPI:
        return "F"
    return "X"


_PLAIN = Printer()
_EXPLICIT = Printer(explicit_eq=True)


def _atom(name: str) -> str:
    if re.fullmatch(r"[a-z][A-Za-z0-9_]*|\$\$?[A-Za-z0-9_]+", name):
        return name
    return "'" + name.replace("\\", "\\\\").replace("'", "\\'") + "'"


def print_term(t: Term, explicit_eq: bool = False) -> str:
    return (_EXPLICIT if explicit_eq else _PLAIN).term(t)


def print_type(ty: Term) -> str:
    return _PLAIN.type(ty)


def print_problem(p: Problem, explicit_eq: bool = False) -> str:
    pr = _EXPLICIT if explicit_eq else _PLAIN
    lines = []
    for d in p.decls:
        if isinstance(d, BaseType):
            lines.append(f"thf({_atom(d.name)}_type, type, {_atom(d.name)}: {pr.type(d.kind)}).")
        elif isinstance(d, ConstDecl):
            lines.append(f"thf({_atom(d.name)}_decl, type, {_atom(d.name)}: {pr.type(d.type)}).")
        else:
            lines.append(f"thf({_atom(d.name)}, {d.role}, {pr.term(d.formula)}).")
    if p.conjecture is not None:
        lines.append(f"thf({_atom(p.conjecture.name)}, conjecture, {pr.term(p.conjecture.formula)}).")
    return "\n".join(lines) + "\n"


SZS_STATUSES = (
    "Theorem", "TypeCheck", "InexactTypecheck", "Timeout", "GaveUp",
    "ContradictoryAxioms", "SyntaxError", "TypeError", "Success", "Error",
)


def print_szs(status: str, name: str, comment: str | None = None) -> str:
    if status not in SZS_STATUSES:
        raise ValueError(f"unknown SZS status {status}")
    line = f"% SZS status {status} for {name}"
    return f"{line} : {comment}" if comment else line

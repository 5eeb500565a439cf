"""Independent replay of refutation traces.

The checker re-reads every formula from the trace text, rebuilds each
branch from the problem alone, recomputes what each rule schema must add
and compares.  It shares the term kernel, parser, type inference and the
erasure with the rest of the package, but none of the search code.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from dholt import terms as T
from dholt.checker import Typer
from dholt.erasure import Eraser, erase_theory
from dholt.tableau.trace import RawStep, Trace, TraceFormatError, dump, load
from dholt.terms import APP, BOT, CONST, EQ, FORALL, IMP, NEG, TBASE, TBOOL, TPI, VAR, Term

D_RULES = {"dneg", "imp", "nimp", "forall", "nforall", "be", "bq", "fe", "fq", "mat", "dec", "con",
           "symcast1", "symcast2"}
H_RULES = D_RULES - {"symcast1", "symcast2"}
CLOSE_RULES = {"neg", "neq", "bot"}
ER_RULES = {"er1", "er2"}
STAGE_ORDER = {"d": 0, "e": 1, "s": 2}


class Violation(Exception):
    pass


@dataclass
class Report:
    ok: bool
    violations: list = field(default_factory=list)
    steps: int = 0

    def __bool__(self):
        return self.ok


@dataclass
class _Side:
    forms: dict  # formula id -> eid
    decls: dict  # variable name -> type (eigenvariables only)


class _Branch:
    """Replay state of one branch: entries by id and per-side contents."""

    def __init__(self, entries, sides, nforall_done, stage):
        self.entries = entries  # eid -> ("formula", side, term) | ("decl", side, name, type)
        self.sides = sides
        self.nforall_done = nforall_done
        self.stage = stage

    def extend(self) -> "_Branch":
        return _Branch(dict(self.entries),
                       [_Side(dict(s.forms), dict(s.decls)) for s in self.sides],
                       set(self.nforall_done), self.stage)

    def has_bot(self) -> bool:
        return any(T.Bot.id in s.forms for s in self.sides)


def _domains(ty: Term, args) -> list[Term]:
    out = []
    for a in args:
        if ty.kind != TPI:
            raise Violation("head applied to too many arguments")
        out.append(T.normalize(ty.kids[0]))
        ty = T.instantiate(ty.kids[1], a)
    return out


def _spine(t: Term):
    args = []
    while t.kind == APP:
        args.append(t.kids[1])
        t = t.kids[0]
    return t, args[::-1]


class Validator:
    def __init__(self, problem, mode: str | None = None):
        from dholt.tptp import Axiom, ConstDecl

        self.problem = problem
        self.mode = mode
        self.sig = problem.signature
        self.eraser = Eraser(self.sig)
        erased = erase_theory(problem, self.eraser)
        self.hsig = erased.signature
        entries, d_forms, h_forms = {}, {}, {}
        self.theory_decls = {}
        for k, d in enumerate(problem.decls):
            if isinstance(d, Axiom):
                f = T.normalize(d.formula)
                entries[f"T{k}"] = ("formula", 0, f)
                d_forms.setdefault(f.id, f"T{k}")
            elif isinstance(d, ConstDecl):
                entries[f"T{k}"] = ("decl", 0, d.name, d.type)
        for k, d in enumerate(erased.decls):
            if isinstance(d, Axiom):
                entries[f"H{k}"] = ("formula", 1, d.formula)
                h_forms.setdefault(d.formula.id, f"H{k}")
        if problem.conjecture is not None:
            g = T.normalize(T.neg(problem.conjecture.formula))
            entries["G0"] = ("formula", 0, g)
            d_forms.setdefault(g.id, "G0")
        self.reserved = set(self.sig.names()) | set(self.hsig.names())
        self.root = _Branch(entries, [_Side(d_forms, {}), _Side(h_forms, {})], set(), "d")

    # -- helpers -------------------------------------------------------------------
    def typer(self, br: _Branch, side: int) -> Typer:
        return Typer(self.sig if side == 0 else self.hsig, br.sides[side].decls)

    def formula_of(self, br: _Branch, eid: str, side: int) -> Term:
        e = br.entries.get(eid)
        if e is None:
            raise Violation(f"premise {eid} is not on the branch")
        if e[0] != "formula":
            raise Violation(f"premise {eid} is not a formula")
        if e[1] != side:
            raise Violation(f"premise {eid} is on the other side")
        return e[2]

    def parse_formula(self, br: _Branch, side: int, text: str) -> Term:
        from dholt.tptp import parse_formula

        sig = self.sig if side == 0 else self.hsig
        try:
            return parse_formula(text, sig, dict(br.sides[side].decls))
        except Exception as exc:
            raise Violation(f"unreadable formula {text!r}: {exc}") from None

    def parse_type(self, br, side, text) -> Term:
        from dholt.tptp import parse_type

        sig = self.sig if side == 0 else self.hsig
        try:
            return parse_type(text, sig, dict(br.sides[side].decls))
        except Exception as exc:
            raise Violation(f"unreadable type {text!r}: {exc}") from None

    # -- schemas ---------------------------------------------------------------------
    def expected(self, br: _Branch, st: RawStep, side: int, prem: list, with_term, fresh_names):
        """Alternatives the rule must produce, as lists of ("f", term) / ("d", name, type)."""
        rule = st.rule
        f = prem[0] if prem else None
        n = len(prem)

        def need(count):
            if n != count:
                raise Violation(f"{rule} takes {count} premise(s), got {n}")

        if rule == "dneg":
            need(1)
            if not (f.kind == NEG and f.kids[0].kind == NEG):
                raise Violation("dneg premise is not a double negation")
            return [[("f", f.kids[0].kids[0])]]
        if rule == "imp":
            need(1)
            if f.kind != IMP:
                raise Violation("imp premise is not an implication")
            return [[("f", T.normalize(T.neg(f.kids[0])))], [("f", f.kids[1])]]
        if rule == "nimp":
            need(1)
            if not (f.kind == NEG and f.kids[0].kind == IMP):
                raise Violation("nimp premise is not a negated implication")
            a, b = f.kids[0].kids
            return [[("f", a), ("f", T.normalize(T.neg(b)))]]
        if rule == "forall":
            need(1)
            if f.kind != FORALL:
                raise Violation("forall premise is not universal")
            if with_term is None:
                raise Violation("forall step without an instantiation")
            try:
                ty = self.typer(br, side).type_of(with_term)
            except Exception as exc:
                raise Violation(f"instantiation is ill-typed: {exc}") from None
            if ty is not f.kids[0]:
                raise Violation("instantiation type differs from the binder type")
            return [[("f", T.normalize(T.instantiate(f.kids[1], with_term)))]]
        if rule == "nforall":
            need(1)
            if not (f.kind == NEG and f.kids[0].kind == FORALL):
                raise Violation("nforall premise is not a negated universal")
            if (side, st.premises[0]) in br.nforall_done:
                raise Violation("nforall applied twice to one formula")
            if len(fresh_names) != 1:
                raise Violation("nforall must declare exactly one variable")
            name = fresh_names[0]
            if name in self.reserved or any(name in s.decls for s in br.sides):
                raise Violation(f"variable {name} is not fresh")
            q = f.kids[0]
            body = T.instantiate(q.kids[1], T.var(name))
            return [[("d", name, q.kids[0]), ("f", T.normalize(T.neg(body)))]]
        if rule in ("be", "bq"):
            need(1)
            e = f.kids[0] if (rule == "be" and f.kind == NEG) else f
            if e.kind != EQ or e.kids[0].kind != TBOOL or (rule == "be") != (f.kind == NEG):
                raise Violation(f"{rule} premise is not a boolean (dis)equation")
            _, s, t = e.kids
            ns, nt = T.normalize(T.neg(s)), T.normalize(T.neg(t))
            if rule == "be":
                return [[("f", s), ("f", nt)], [("f", ns), ("f", t)]]
            return [[("f", s), ("f", t)], [("f", ns), ("f", nt)]]
        if rule in ("fe", "fq"):
            need(1)
            e = f.kids[0] if (rule == "fe" and f.kind == NEG) else f
            if e.kind != EQ or e.kids[0].kind != TPI or (rule == "fe") != (f.kind == NEG):
                raise Violation(f"{rule} premise is not a functional (dis)equation")
            pi, s, t = e.kids
            q = T.forall(pi.kids[0], T.eq(pi.kids[1], T.app(T.shift(s, 1), T.bvar(0)),
                                          T.app(T.shift(t, 1), T.bvar(0))))
            return [[("f", T.normalize(T.neg(q) if rule == "fe" else q))]]
        if rule in ("mat", "dec"):
            if rule == "mat":
                need(2)
                g = prem[1]
                if f.kind == NEG or g.kind != NEG:
                    raise Violation("mat needs a positive and a negative atom")
                left, right = f, g.kids[0]
            else:
                need(1)
                if not (f.kind == NEG and f.kids[0].kind == EQ and f.kids[0].kids[0].kind == TBASE):
                    raise Violation("dec premise is not a disequation at a base type")
                _, left, right = f.kids[0].kids
            hl, al = _spine(left)
            hr, ar = _spine(right)
            if hl is not hr or hl.kind not in (VAR, CONST):
                raise Violation(f"{rule} heads differ or are not symbols")
            if len(al) != len(ar) or not al:
                raise Violation(f"{rule} needs n >= 1 arguments on both sides")
            doms = _domains(self.typer(br, side).type_of(hl), al)
            return [[("f", T.neq(a, s, t))] for a, s, t in zip(doms, al, ar)]
        if rule == "con":
            need(2)
            e, g = prem
            if e.kind != EQ or not (g.kind == NEG and g.kids[0].kind == EQ):
                raise Violation("con needs an equation and a disequation")
            ty, s, t = e.kids
            ty2, u, v = g.kids[0].kids
            if ty.kind != TBASE:
                raise Violation("con equation is not at a base type")
            if ty is not ty2:
                raise Violation("con at mismatched types")
            return [[("f", T.neq(ty, s, u)), ("f", T.neq(ty, t, u))],
                    [("f", T.neq(ty, s, v)), ("f", T.neq(ty, t, v))]]
        if rule in ("symcast1", "symcast2"):
            need(1)
            neg = rule == "symcast2"
            e = f.kids[0] if neg and f.kind == NEG else f
            if e.kind != EQ or (neg != (f.kind == NEG)):
                raise Violation(f"{rule} premise has the wrong polarity")
            a, s, t = e.kids
            try:
                b = self.typer(br, 0).type_of(t)
            except Exception as exc:
                raise Violation(f"no representative type for the right side: {exc}") from None
            flipped = T.eq(b, t, s)
            return [[("f", T.neg(flipped) if neg else flipped)]]
        if rule == "er1":
            need(1)
            g = self.eraser.formula(f)
            try:
                if self.typer(br, 1).type_of(g).kind != TBOOL:
                    raise Violation("erased formula is not boolean")
            except Violation:
                raise
            except Exception as exc:
                raise Violation(f"er1 before the variables were erased: {exc}") from None
            return [[("f", g)]]
        if rule == "er2":
            need(0)
            raise AssertionError("unreachable")  # er2 premises are declarations, see replay
        raise Violation(f"unknown rule {rule}")

    # -- replay ------------------------------------------------------------------------
    def validate(self, trace) -> Report:
        text = dump(trace) if isinstance(trace, Trace) else trace
        try:
            name, mode, steps = load(text)
        except TraceFormatError as exc:
            return Report(False, [str(exc)])
        mode = self.mode or mode
        violations = []
        branches = {"root": self.root.extend()}
        closed_leaves = set()
        consumed = set()
        for st in steps:
            try:
                self._step(st, mode, branches, consumed, closed_leaves)
            except Violation as exc:
                violations.append(f"step {st.sid}: {exc}")
                break
        if not violations:
            open_ = [label for label in branches if label not in consumed and label not in closed_leaves]
            if open_:
                violations.append(f"branches left open: {', '.join(sorted(open_))}")
            for label in closed_leaves:
                if not branches[label].has_bot():
                    violations.append(f"leaf {label} does not contain $false")
        return Report(not violations, violations, len(steps))

    def _step(self, st: RawStep, mode, branches, consumed, closed_leaves):
        if st.parent not in branches:
            raise Violation(f"unknown branch {st.parent}")
        if st.parent in consumed or st.parent in closed_leaves:
            raise Violation(f"branch {st.parent} already extended")
        br = branches[st.parent]
        if st.side not in ("d", "h"):
            raise Violation(f"bad side {st.side}")
        side = 0 if st.side == "d" else 1
        rule = st.rule
        self._check_mode(rule, side, mode, br)
        # an empty list is judged by the rule below (mat and dec with no arguments)
        if sorted(st.alts) != list(range(1, len(st.alts) + 1)):
            raise Violation("alternatives must be numbered 1..n")

        if rule in CLOSE_RULES:
            if len(st.alts) != 1:
                raise Violation(f"{rule} must add $false in exactly one alternative")
            self._closing(br, st, side)
            child = br.extend()
            self._add(child, side, st.alts[1], [("f", T.Bot)], 1, require_new=st.rule != "bot")
            label = f"{st.sid}.1"
            branches[label] = child
            closed_leaves.add(label)
            consumed.add(st.parent)
            return

        target = 1 if rule in ER_RULES else side
        if rule == "er2":
            if len(st.premises) != 1:
                raise Violation("er2 takes one declaration")
            e = br.entries.get(st.premises[0])
            if e is None or e[0] != "decl" or e[1] != 0:
                raise Violation("er2 premise is not a DHOL declaration")
            ety, guard = self.eraser.context_entry(e[2], e[3])
            exp = [[("d", e[2], ety), ("f", guard)]]
        else:
            if rule == "er1" and side != 0:
                raise Violation("er1 premise must be on the DHOL side")
            prem = [self.formula_of(br, p, side) for p in st.premises]
            with_term = None
            if st.with_text is not None:
                from dholt.tptp import parse_term

                sig = self.sig if side == 0 else self.hsig
                try:
                    with_term, _ = parse_term(st.with_text, sig, dict(br.sides[side].decls))
                except Exception as exc:
                    raise Violation(f"unreadable instantiation: {exc}") from None
            fresh = [payload.split(" ", 1)[0] for alt in st.alts.values()
                     for _, kind, payload in alt if kind == "decl"]
            exp = self.expected(br, st, side, prem, with_term, fresh)
        if len(exp) != len(st.alts):
            raise Violation(f"{rule} has {len(exp)} alternatives, trace shows {len(st.alts)}")
        consumed.add(st.parent)
        for k in range(1, len(exp) + 1):
            child = br.extend()
            if rule == "nforall":
                child.nforall_done.add((side, st.premises[0]))
            self._add(child, target, st.alts[k], exp[k - 1], k)
            if mode == "staged":
                stage = "e" if rule in ER_RULES else ("d" if side == 0 else "s")
                child.stage = stage
            branches[f"{st.sid}.{k}"] = child

    def _check_mode(self, rule, side, mode, br):
        if rule in CLOSE_RULES:
            return
        if rule in ER_RULES:
            if mode == "native-only":
                raise Violation("erasure rule in native-only mode")
        elif side == 0:
            if rule not in D_RULES:
                raise Violation(f"{rule} is not a DHOL-side rule")
            if mode == "erasure-only":
                raise Violation("DHOL rule in erasure-only mode")
        else:
            if rule not in H_RULES:
                raise Violation(f"{rule} is not a HOL-side rule")
            if mode == "native-only":
                raise Violation("HOL rule in native-only mode")
        if mode == "staged":
            stage = "e" if rule in ER_RULES else ("d" if side == 0 else "s")
            if STAGE_ORDER[stage] < STAGE_ORDER[br.stage]:
                raise Violation(f"stage {stage} step after stage {br.stage}")

    def _closing(self, br, st, side):
        prem = [self.formula_of(br, p, side) for p in st.premises]
        if st.rule == "neg":
            if len(prem) != 2 or prem[1] is not T.neg(prem[0]):
                raise Violation("neg needs s and ~s")
        elif st.rule == "neq":
            if len(prem) != 1:
                raise Violation("neq takes one premise")
            f = prem[0]
            if not (f.kind == NEG and f.kids[0].kind == EQ and f.kids[0].kids[0].kind == TBASE
                    and f.kids[0].kids[1] is f.kids[0].kids[2]):
                raise Violation("neq premise is not s != s at a base type")
        else:
            if len(prem) != 1 or prem[0].kind != BOT:
                raise Violation("bot premise is not $false")
        if len(st.alts) != 1:
            raise Violation("closing steps have one alternative")

    def _add(self, br: _Branch, side: int, recorded, expected, k, require_new=True):
        """Check recorded additions against the schema and add them."""
        got, new = [], False
        for eid, kind, payload in recorded:
            if eid in br.entries:
                raise Violation(f"entry id {eid} reused")
            if kind == "decl":
                name, _, ty_text = payload.partition(" ")
                got.append((eid, ("d", name, self.parse_type(br, side, ty_text))))
            else:
                got.append((eid, None, payload))
        # declarations first so formulas may mention them
        for eid, item, *_ in got:
            if item is not None:
                _, name, ty = item
                new = new or name not in br.sides[side].decls
                br.sides[side].decls[name] = ty
                br.entries[eid] = ("decl", side, name, ty)
        parsed = []
        for g in got:
            if g[1] is None:
                parsed.append((g[0], ("f", self.parse_formula(br, side, g[2]))))
            else:
                parsed.append(g[:2])
        want = {(x[0], x[1].id if x[0] == "f" else (x[1], x[2].id)) for x in expected}
        have = {(x[0], x[1].id if x[0] == "f" else (x[1], x[2].id)) for _, x in parsed}
        if want != have:
            raise Violation(f"alternative {k} does not match the rule schema")
        for eid, item in parsed:
            if item[0] == "f":
                br.entries[eid] = ("formula", side, item[1])
                if item[1].id not in br.sides[side].forms:
                    new = True
                    br.sides[side].forms[item[1].id] = eid
        if require_new and not new:
            raise Violation(f"alternative {k} adds nothing new")


def validate_trace(problem, trace, mode: str | None = None) -> Report:
    """Replay ``trace`` (a :class:`Trace` or its text) against ``problem``.

    ``mode`` overrides the mode recorded in the trace; pass ``"unstaged"``
    to accept any mix of rules.
    """
    return Validator(problem, mode).validate(trace)

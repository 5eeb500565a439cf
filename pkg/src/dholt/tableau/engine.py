"""Proof search over DHOL/HOL tableau branches.

A branch holds formulas and declarations on two sides: ``d`` (the DHOL
theory and context) and ``h`` (the erased theory and HOL context).  Rule
applications wait on per-branch agendas ordered by ``step count + cost``, so every
candidate is eventually selected.  Alternatives are explored depth first;
each closed subtree reports which entries it used, which lets a branching
step be skipped when one alternative's refutation does not need it.
"""
from __future__ import annotations

import heapq
import itertools
import logging
import sys
import time
from dataclasses import dataclass

from dholt import terms as T
from dholt.checker import Typer, pi_domains
from dholt.erasure import Eraser, erase_theory
from dholt.tableau.trace import Addition, ProofNode, StepRecord, Trace, flatten
from dholt.terms import APP, BOT, CONST, EQ, FORALL, IMP, LAM, NEG, TBASE, TBOOL, TPI, VAR, Term

log = logging.getLogger(__name__)

MODES = ("native-only", "erasure-only", "staged", "unstaged")
D, H = 0, 1
SIDE_NAME = ("d", "h")

NEGR, NEQR, BOTR = "neg", "neq", "bot"
DNEG, IMPR, NIMP, ALL, NALL = "dneg", "imp", "nimp", "forall", "nforall"
BE, BQ, FE, FQ, MAT, DEC, CON = "be", "bq", "fe", "fq", "mat", "dec", "con"
ER1, ER2, SYM1, SYM2 = "er1", "er2", "symcast1", "symcast2"

CLOSING = {NEGR, NEQR, BOTR}
BRANCHING = {IMPR, BE, BQ, MAT, DEC, CON}
ERASURE = {ER1, ER2}

# Rules that only take formulas apart run before anything else; there are
# finitely many such steps between two ordinary ones.
SHRINKING = {DNEG, NIMP, NALL, ER2}
URGENT = 1 << 40

# agenda classes
AG_D, AG_E, AG_H = 0, 1, 2


@dataclass
class SearchConfig:
    mode: str = "native-only"
    timeout: float = 60.0
    subterm_instantiations: bool = True
    d_step_limit: int = 400  # per branch, staged mode only

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode}")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")


@dataclass
class Verdict:
    status: str  # Refuted | Exhausted | Timeout
    trace: Trace | None = None
    steps: int = 0
    seconds: float = 0.0


class _Timeout(Exception):
    pass


class _Exhausted(Exception):
    pass


class Branch:
    """Mutable branch state.  Index values are tuples, so copies are shallow."""

    __slots__ = (
        "forms", "decls", "pools", "pool_seen", "foralls", "atoms", "eqs", "neqs", "disc", "eq_foralls",
        "agenda", "applied", "closed", "stage", "dsteps", "er1_waiting",
    )

    def copy(self) -> "Branch":
        b = Branch.__new__(Branch)
        for name in ("forms", "decls", "pools", "pool_seen", "foralls", "atoms", "eqs", "neqs", "disc", "eq_foralls"):
            pair = getattr(self, name)
            setattr(b, name, [pair[0].copy(), pair[1].copy()])
        b.agenda = [list(h) for h in self.agenda]
        b.applied = self.applied.copy()
        b.closed = self.closed
        b.stage = self.stage
        b.dsteps = self.dsteps
        b.er1_waiting = self.er1_waiting
        return b


def _push(index: dict, key, item):
    index[key] = index.get(key, ()) + (item,)


class Search:
    """One proof attempt for a problem under a configuration."""

    def __init__(self, problem, config: SearchConfig | None = None):
        self.problem = problem
        self.cfg = config or SearchConfig()
        self.sig = problem.signature
        self.typers = [Typer(self.sig), None]
        self.eraser = Eraser(self.sig)
        self.entries: dict[str, Addition] = {}
        self._eid = itertools.count(1)
        self._seq = itertools.count()
        self._names = itertools.count(1)
        self.taken_names = set(self.sig.names())
        self.initial_terms: set[int] = set()
        self.steps = 0
        self.deadline = 0.0
        self._patterns: dict[int, tuple | None] = {}
        self._debug = log.isEnabledFor(logging.DEBUG)
        mode = self.cfg.mode
        self.use_d = mode != "erasure-only"
        self.use_h = mode != "native-only"

    # -- setup -------------------------------------------------------------------
    def initial_branch(self) -> Branch:
        from dholt.tptp import Axiom, ConstDecl

        b = Branch()
        for name in ("forms", "decls", "pools", "foralls", "atoms", "eqs", "neqs", "disc", "eq_foralls"):
            setattr(b, name, [{}, {}])
        b.pool_seen = [set(), set()]
        b.agenda = [[], [], []]
        b.applied = set()
        b.closed = None
        b.stage = "d" if self.cfg.mode == "staged" else None
        b.dsteps = 0
        b.er1_waiting = ()

        seeds = ([], [])
        for k, d in enumerate(self.problem.decls):
            eid = f"T{k}"
            if isinstance(d, Axiom):
                f = T.normalize(d.formula)
                self.entries[eid] = Addition(eid, "formula", term=f)
                if self.use_d:
                    self._insert_formula(b, D, f, eid, theory=True)
                    seeds[D].append(f)
            elif isinstance(d, ConstDecl):
                self.entries[eid] = Addition(eid, "decl", name=d.name, type=d.type)
                b.decls[D][d.name] = eid
                if self.use_d:
                    self._add_pool(b, D, T.const(d.name))
        if self.use_h:
            erased = erase_theory(self.problem, self.eraser)
            self.typers[H] = Typer(erased.signature)
            self.taken_names |= erased.signature.names()
            for k, d in enumerate(erased.decls):
                eid = f"H{k}"
                if isinstance(d, Axiom):
                    self.entries[eid] = Addition(eid, "formula", term=d.formula)
                    self._insert_formula(b, H, d.formula, eid, theory=True)
                    seeds[H].append(d.formula)
                elif isinstance(d, ConstDecl):
                    self.entries[eid] = Addition(eid, "decl", name=d.name, type=d.type)
                    b.decls[H][d.name] = eid
                    self._add_pool(b, H, T.const(d.name))
        if self.problem.conjecture is not None:
            g = T.normalize(T.neg(self.problem.conjecture.formula))
            self.entries["G0"] = Addition("G0", "formula", term=g)
            self._insert_formula(b, D, g, "G0")
            seeds[D].append(g)
        for side in (D, H):
            for f in seeds[side]:
                if side == D:
                    self.initial_terms.update(u.id for u in T.subterms(f))
                if self.cfg.subterm_instantiations:
                    self._seed_subterms(b, side, f)
        return b

    def _seed_subterms(self, b, side, f):
        for u in T.subterms(f):
            if u.loose == 0 and u.kind in (APP, CONST, VAR, LAM):
                self._add_pool(b, side, u)
        for lam in _forall_prefix_lambdas(f):
            self._add_pool(b, side, lam)

    # -- insertion -----------------------------------------------------------------
    def _insert_formula(self, b: Branch, side: int, f: Term, eid: str, theory: bool = False):
        forms = b.forms[side]
        if f.id in forms:
            return
        forms[f.id] = eid
        if b.closed is not None:
            return
        if f.kind == BOT:
            b.closed = (BOTR, side, (eid,))
            return
        comp = T.complement(f)
        if comp.id in forms:
            other = forms[comp.id]
            b.closed = (NEGR, side, (other, eid) if f.kind == NEG else (eid, other))
            return
        k = f.kind
        if k == NEG:
            a = f.kids[0]
            ak = a.kind
            if ak == EQ:
                ty, lhs, rhs = a.kids
                if ty.kind == TBASE:
                    if lhs is rhs:
                        b.closed = (NEQR, side, (eid,))
                        return
                    _push(b.neqs[side], ty.id, eid)
                    for eq_eid in b.eqs[side].get(ty.id, ()):
                        self._cand(b, side, CON, (eq_eid, eid))
                    self._add_pool(b, side, lhs)
                    self._add_pool(b, side, rhs)
                    self._add_disc(b, side, lhs)
                    self._add_disc(b, side, rhs)
                    sl, sr = T.decompose_spine(lhs), T.decompose_spine(rhs)
                    if (sl.head is sr.head and sl.args and len(sl.args) == len(sr.args)
                            and sl.head.kind in (VAR, CONST)):
                        self._cand(b, side, DEC, (eid,))
                elif ty.kind == TBOOL:
                    self._cand(b, side, BE, (eid,))
                elif ty.kind == TPI:
                    self._cand(b, side, FE, (eid,))
                if side == D and ty.kind != TBOOL:
                    self._cand(b, side, SYM2, (eid,))
            elif ak == NEG:
                self._cand(b, side, DNEG, (eid,))
            elif ak == IMP:
                self._cand(b, side, NIMP, (eid,))
            elif ak == FORALL:
                self._cand(b, side, NALL, (eid,))
            elif ak in (APP, VAR, CONST):
                self._atom(b, side, a, eid, False)
        elif k == IMP:
            self._cand(b, side, IMPR, (eid,))
        elif k == FORALL:
            ty = f.kids[0]
            _push(b.foralls[side], ty.id, eid)
            for t in b.pools[side].get(ty.id, ()):
                self._cand(b, side, ALL, (eid,), t)
            if self._pattern(f) is not None:
                b.eq_foralls[side][eid] = f
                for t in b.disc[side].values():
                    self._match_hint(b, side, eid, f, t)
        elif k == EQ:
            ty = f.kids[0]
            if ty.kind == TBASE:
                _push(b.eqs[side], ty.id, eid)
                for neq_eid in b.neqs[side].get(ty.id, ()):
                    self._cand(b, side, CON, (eid, neq_eid))
            elif ty.kind == TBOOL:
                self._cand(b, side, BQ, (eid,))
            elif ty.kind == TPI:
                self._cand(b, side, FQ, (eid,))
            if side == D and ty.kind != TBOOL:
                self._cand(b, side, SYM1, (eid,))
        elif k in (APP, VAR, CONST):
            self._atom(b, side, f, eid, True)
        if side == D and self.use_h and not theory:
            self._cand(b, side, ER1, (eid,))

    def _atom(self, b, side, a, eid, positive):
        sp = T.decompose_spine(a)
        if not sp.args or sp.head.kind not in (VAR, CONST):
            return
        key = (sp.head.id, len(sp.args))
        _push(b.atoms[side], key + (positive,), eid)
        for other in b.atoms[side].get(key + (not positive,), ()):
            self._cand(b, side, MAT, (eid, other) if positive else (other, eid))

    def _insert_decl(self, b: Branch, side: int, name: str, ty: Term, eid: str):
        b.decls[side][name] = eid
        self.typers[side].declare(name, ty)
        self._add_pool(b, side, T.var(name))
        if side == D and self.use_h:
            self._cand(b, side, ER2, (eid,))
        if side == H and b.er1_waiting:
            # erased formulas that mentioned this variable may now transfer
            waiting, b.er1_waiting = b.er1_waiting, ()
            for w in waiting:
                self._cand(b, D, ER1, (w,))

    def _add_pool(self, b: Branch, side: int, t: Term):
        try:
            ty = self.typers[side].type_of(t)
        except Exception:  # not a well-formed term here, so not an instantiation
            return
        key = (ty.id, t.id)
        if key in b.pool_seen[side]:
            return
        b.pool_seen[side].add(key)
        _push(b.pools[side], ty.id, t)
        for eid in b.foralls[side].get(ty.id, ()):
            self._cand(b, side, ALL, (eid,), t)

    # -- matching hints ------------------------------------------------------------------
    # An instantiation that makes a quantified equation's side coincide with a
    # discriminating term is queued cheaply.  This only reorders the agenda:
    # the same instance is reachable through the pools.
    def _pattern(self, f: Term):
        """Sides of the equation under ``f``'s quantifier and implication prefix."""
        if f.id in self._patterns:
            return self._patterns[f.id]
        u, depth = f, 0
        while True:
            if u.kind == FORALL:
                depth, u = depth + 1, u.kids[1]
            elif u.kind == IMP:
                u = u.kids[1]
            else:
                break
        out = None
        if u.kind == EQ and u.kids[0].kind == TBASE and depth:
            out = (depth - 1, u.kids[1], u.kids[2])
        self._patterns[f.id] = out
        return out

    def _add_disc(self, b: Branch, side: int, t: Term):
        if t.id in b.disc[side]:
            return
        b.disc[side][t.id] = t
        for eid, f in b.eq_foralls[side].items():
            self._match_hint(b, side, eid, f, t)

    def _match_hint(self, b, side, eid, f, t):
        outer, lhs, rhs = self._pattern(f)
        for pat in (lhs, rhs):
            binding = {}
            if _match(pat, t, 0, binding) and outer in binding:
                arg = binding[outer]
                try:
                    ty = self.typers[side].type_of(arg)
                except Exception:
                    continue
                if ty is f.kids[0]:
                    seq = next(self._seq)
                    cls = AG_D if side == D else AG_H
                    heapq.heappush(b.agenda[cls], (seq - URGENT, seq, ALL, side, (eid,), arg, False))

    # -- agenda ----------------------------------------------------------------------
    def _cost(self, side, rule, arg):
        if rule in (DNEG, NIMP, ER2):
            return 0
        if rule in (NALL, ER1):
            return 1
        if rule in (FE, FQ):
            return 2
        if rule in (SYM1, SYM2):
            return 4
        if rule == ALL:
            c = 12 + 3 * arg.size
            if side == D and arg.id not in self.initial_terms:
                c += 10
            if arg.kind == LAM:
                c += 4
            return c
        return 6  # branching rules are re-weighed when selected

    def _cand(self, b, side, rule, premises, arg=None):
        seq = next(self._seq)
        if not seq & 4095 and time.monotonic() > self.deadline:
            # one insertion can queue many instances; do not overrun the budget
            raise _Timeout()
        key = seq - URGENT if rule in SHRINKING else self.steps + self._cost(side, rule, arg)
        item = (key, seq, rule, side, premises, arg, False)
        cls = AG_E if rule in ERASURE else (AG_D if side == D else AG_H)
        heapq.heappush(b.agenda[cls], item)

    def _classes(self, b: Branch) -> tuple:
        mode = self.cfg.mode
        if mode == "native-only":
            return (AG_D,)
        if mode == "erasure-only":
            return (AG_E, AG_H)
        if mode == "unstaged":
            return (AG_D, AG_E, AG_H)
        if b.stage == "d":
            return (AG_D,) if b.dsteps < self.cfg.d_step_limit else ()
        return (AG_E,) if b.stage == "e" else (AG_H,)

    def _advance_stage(self, b: Branch) -> bool:
        if self.cfg.mode != "staged" or b.stage == "s":
            return False
        b.stage = "e" if b.stage == "d" else "s"
        return True

    def _pop(self, b: Branch):
        """Next useful candidate as (rule, side, premises, arg, alternatives)."""
        classes = self._classes(b)
        skipped = 0
        while True:
            skipped += 1
            if skipped % 512 == 0 and time.monotonic() > self.deadline:
                raise _Timeout()
            best = None
            for c in classes:
                heap = b.agenda[c]
                if heap and (best is None or heap[0] < b.agenda[best][0]):
                    best = c
            if best is None:
                return None
            heap = b.agenda[best]
            key, seq, rule, side, premises, arg, reweighed = heapq.heappop(heap)
            akey = (rule, side, premises, arg.id if arg is not None else None)
            if akey in b.applied:
                continue
            alts = self.alternatives(b, side, rule, premises, arg)
            if alts is None:
                b.applied.add(akey)
                continue
            if alts == "wait":
                b.er1_waiting += (premises[0],)
                continue
            target = H if rule in ERASURE else side
            if not all(self._new(b, target, alt) for alt in alts):
                b.applied.add(akey)
                continue
            if rule in BRANCHING and not reweighed:
                open_alts = sum(1 for alt in alts if not self._closes(b, target, alt))
                cost = _branch_cost(rule, open_alts)
                if cost > 6:
                    s2 = next(self._seq)
                    heapq.heappush(heap, (self.steps + cost, s2, rule, side, premises, arg, True))
                    continue
            b.applied.add(akey)
            return rule, side, premises, arg, alts

    # -- rules -------------------------------------------------------------------------
    def _fresh(self, hint_name: str | None, ty: Term) -> str:
        base = (hint_name or "").lstrip("_").lower()
        base = "".join(ch for ch in base if ch.isalnum() or ch == "_")
        if not base or not base[0].isalpha():
            base = ty.data[0].lower() if ty.kind == TBASE else "x"
        while True:
            name = f"{base}_{next(self._names)}"
            if name not in self.taken_names:
                self.taken_names.add(name)
                return name

    def alternatives(self, b: Branch, side: int, rule: str, premises, arg):
        """Additions per alternative: lists of ("formula", t) / ("decl", name, type).

        ``None`` means the rule does not apply; ``"wait"`` means an erased
        formula mentions variables the HOL side has not declared yet.
        """
        f = self.entries[premises[0]].term
        if rule == DNEG:
            return [[("formula", f.kids[0].kids[0])]]
        if rule == NIMP:
            s, t = f.kids[0].kids
            return [[("formula", s), ("formula", T.normalize(T.neg(t)))]]
        if rule == IMPR:
            s, t = f.kids
            return [[("formula", T.normalize(T.neg(s)))], [("formula", t)]]
        if rule == ALL:
            return [[("formula", T.normalize(T.instantiate(f.kids[1], arg)))]]
        if rule == NALL:
            q = f.kids[0]
            name = self._fresh(T.hint(q), q.kids[0])
            body = T.instantiate(q.kids[1], T.var(name))
            return [[("decl", name, q.kids[0]), ("formula", T.normalize(T.neg(body)))]]
        if rule in (BE, BQ):
            _, s, t = (f.kids[0] if rule == BE else f).kids
            ns, nt = T.normalize(T.neg(s)), T.normalize(T.neg(t))
            if rule == BE:
                return [[("formula", s), ("formula", nt)], [("formula", ns), ("formula", t)]]
            return [[("formula", s), ("formula", t)], [("formula", ns), ("formula", nt)]]
        if rule in (FE, FQ):
            pi, s, t = (f.kids[0] if rule == FE else f).kids
            body = T.eq(pi.kids[1], T.app(T.shift(s, 1), T.bvar(0)), T.app(T.shift(t, 1), T.bvar(0)))
            q = T.forall(pi.kids[0], body, T.hint(pi))
            return [[("formula", T.normalize(T.neg(q) if rule == FE else q))]]
        if rule in (MAT, DEC):
            if rule == MAT:
                left, right = f, self.entries[premises[1]].term.kids[0]
            else:
                _, left, right = f.kids[0].kids
            sl, sr = T.decompose_spine(left), T.decompose_spine(right)
            doms = pi_domains(self.typers[side].type_of(sl.head), sl.args)
            return [[("formula", T.neq(a, s, t))] for a, s, t in zip(doms, sl.args, sr.args)]
        if rule == CON:
            ty, s, t = f.kids
            _, u, v = self.entries[premises[1]].term.kids[0].kids
            return [[("formula", T.neq(ty, s, u)), ("formula", T.neq(ty, t, u))],
                    [("formula", T.neq(ty, s, v)), ("formula", T.neq(ty, t, v))]]
        if rule in (SYM1, SYM2):
            a, s, t = (f if rule == SYM1 else f.kids[0]).kids
            try:
                rhs_ty = self.typers[D].type_of(t)
            except Exception:
                return None
            if rhs_ty is a:
                return None
            flipped = T.eq(rhs_ty, t, s)
            return [[("formula", flipped if rule == SYM1 else T.neg(flipped))]]
        if rule == ER1:
            g = self.eraser.formula(f)
            if not T.free_vars(g) <= b.decls[H].keys():
                return "wait"
            return [[("formula", g)]]
        if rule == ER2:
            d = self.entries[premises[0]]
            ety, guard = self.eraser.context_entry(d.name, d.type)
            return [[("decl", d.name, ety), ("formula", guard)]]
        raise ValueError(rule)

    @staticmethod
    def _closes(b, side, alt) -> bool:
        forms = b.forms[side]
        local = set()
        for a in alt:
            if a[0] != "formula":
                continue
            f = a[1]
            comp = T.complement(f)
            if f.kind == BOT or comp.id in forms or comp.id in local:
                return True
            if f.kind == NEG and f.kids[0].kind == EQ:
                ty, lhs, rhs = f.kids[0].kids
                if ty.kind == TBASE and lhs is rhs:
                    return True
            local.add(f.id)
        return False

    @staticmethod
    def _new(b, side, alt) -> bool:
        for a in alt:
            if a[0] == "formula" and a[1].id not in b.forms[side]:
                return True
            if a[0] == "decl" and a[1] not in b.decls[side]:
                return True
        return False

    # -- search ------------------------------------------------------------------------
    def run(self) -> Verdict:
        start = time.monotonic()
        self.deadline = start + self.cfg.timeout
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 20000))
        try:
            node = self._refute(self.initial_branch())
            trace = flatten(node, self.problem.name, self.cfg.mode)
            status = "Refuted"
        except _Timeout:
            trace, status = None, "Timeout"
        except _Exhausted:
            trace, status = None, "Exhausted"
        finally:
            sys.setrecursionlimit(old)
        return Verdict(status, trace, self.steps, time.monotonic() - start)

    def _new_eid(self) -> str:
        return f"e{next(self._eid)}"

    def _materialize(self, alt) -> list[Addition]:
        out = []
        for a in alt:
            eid = self._new_eid()
            if a[0] == "formula":
                add = Addition(eid, "formula", term=a[1])
            else:
                add = Addition(eid, "decl", name=a[1], type=a[2])
            self.entries[eid] = add
            out.append(add)
        return out

    def _apply(self, b: Branch, side: int, adds: list[Addition]):
        for a in adds:
            if a.kind == "decl" and a.name not in b.decls[side]:
                self._insert_decl(b, side, a.name, a.type, a.eid)
        for a in adds:
            if a.kind == "formula":
                self._insert_formula(b, side, a.term, a.eid)

    def _learn_terms(self, b, side, adds):
        """Closed subterms of a new eigenvariable's formula become instantiations."""
        for a in adds:
            if a.kind == "formula":
                for u in T.subterms(a.term):
                    if u.loose == 0 and u.kind in (APP, VAR, CONST):
                        self._add_pool(b, side, u)

    def _deps(self, b: Branch, side: int, premises, alts, with_term) -> frozenset:
        """Premises plus the declarations of every free variable the step mentions."""
        names = set(T.free_vars(with_term)) if with_term is not None else set()
        for p in premises:
            e = self.entries[p]
            if e.kind == "formula":
                names |= T.free_vars(e.term)
        for alt in alts:
            for a in alt:
                if a[0] == "formula":
                    names |= T.free_vars(a[1])
                else:
                    names |= T.free_vars(a[2])
        own = {a[1] for alt in alts for a in alt if a[0] == "decl"}
        out = set(premises)
        for s in (side, H) if side == D else (side,):
            decls = b.decls[s]
            out |= {decls[n] for n in names - own if n in decls}
        return frozenset(out)

    def _refute(self, b: Branch) -> ProofNode:
        linear: list[StepRecord] = []
        while True:
            if b.closed is not None:
                rule, side, premises = b.closed
                eid = self._new_eid()
                self.entries[eid] = Addition(eid, "formula", term=T.Bot)
                close = StepRecord(rule, SIDE_NAME[side], premises,
                                   [[self.entries[eid]]], deps=frozenset(premises))
                return self._finish(linear, ProofNode([close], [], close.deps))
            if time.monotonic() > self.deadline:
                raise _Timeout()
            cand = self._pop(b)
            if cand is None:
                if self._advance_stage(b):
                    continue
                raise _Exhausted()
            rule, side, premises, arg, alts = cand
            self.steps += 1
            if self._debug:
                log.debug("step %d %s %s %s %s", self.steps, rule, SIDE_NAME[side], premises,
                          "" if arg is None else _show(arg))
            target = H if rule in ERASURE else side
            if side == D and rule not in ERASURE:
                b.dsteps += 1
            rec = StepRecord(rule, SIDE_NAME[side], premises,
                             [self._materialize(alt) for alt in alts],
                             with_term=arg if rule == ALL else None,
                             deps=self._deps(b, side, premises, alts, arg))
            if len(rec.alts) == 1:
                self._apply(b, target, rec.alts[0])
                if rule == NALL:
                    self._learn_terms(b, side, rec.alts[0])
                linear.append(rec)
                continue
            children = []
            for alt in rec.alts:
                child = b.copy()
                self._apply(child, target, alt)
                node = self._refute(child)
                if not node.used & {a.eid for a in alt}:
                    # the refutation below never looked at this alternative's
                    # additions, so it refutes the current branch as it is
                    return self._finish(linear, node)
                children.append(node)
            used = set(rec.deps)
            for alt, child in zip(rec.alts, children):
                used |= child.used - {a.eid for a in alt}
            return self._finish(linear, ProofNode([rec], children, frozenset(used)))

    @staticmethod
    def _finish(linear: list[StepRecord], tail: ProofNode) -> ProofNode:
        """Prefix ``tail`` with the linear steps it depends on; drop the rest."""
        used = set(tail.used)
        kept = []
        for rec in reversed(linear):
            added = {a.eid for alt in rec.alts for a in alt}
            if added & used:
                used -= added
                used |= rec.deps
                kept.append(rec)
        kept.reverse()
        return ProofNode(kept + tail.steps, tail.children, frozenset(u for u in used if u[0] == "e"))


def _show(t: Term) -> str:
    from dholt.tptp import print_term

    return print_term(t)


def _match(pat: Term, t: Term, under: int, binding: dict) -> bool:
    """First-order matching; loose indices of ``pat`` at or above ``under`` are variables."""
    if pat.loose <= under:
        return pat is t
    if pat.kind == T.BVAR:
        idx = pat.data - under
        if t.loose:
            return False
        seen = binding.get(idx)
        if seen is None:
            binding[idx] = t
            return True
        return seen is t
    if pat.kind != t.kind or pat.data != t.data or len(pat.kids) != len(t.kids):
        return False
    inner = under + 1 if pat.kind in (LAM, FORALL, TPI) else under
    for i, (p, u) in enumerate(zip(pat.kids, t.kids)):
        if not _match(p, u, inner if i == 1 else under, binding):
            return False
    return True


def _branch_cost(rule: str, open_alts: int) -> int:
    if open_alts <= 1:
        return 3 * open_alts
    if rule == CON:
        return 400 * open_alts
    return 8 * open_alts * open_alts


def _forall_prefix_lambdas(f: Term):
    """Closed lambda abstractions over every prefix of every closed forall chain."""
    out = []
    for u in T.subterms(f):
        if u.kind != FORALL or u.loose:
            continue
        binders = []
        body = u
        while body.kind == FORALL:
            binders.append((body.kids[0], T.hint(body)))
            body = body.kids[1]
            lam = body
            for ty, name in reversed(binders):
                lam = T.lam(ty, lam, name)
            out.append(T.normalize(lam))
    return out


def search(problem, config: SearchConfig | None = None) -> Verdict:
    return Search(problem, config).run()

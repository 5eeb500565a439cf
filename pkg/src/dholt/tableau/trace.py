"""Refutation traces: records, serialization and parsing.

A trace is a tree of steps.  Each step names the branch it applies to as
``<step>.<alternative>`` (or ``root``), its premises by entry id, and the
entries each alternative adds.  Theory entries are ``T<k>`` (the DHOL
declaration at position ``k``) and ``H<k>`` (the erased declaration at
position ``k``); the negated conjecture is ``G0``.

Text format, one record per line::

    trace <problem-name> mode <mode>
    step <sid> at <parent> rule <tag> side <d|h> premises <id> ... [with <term>]
    add <sid>.<alt> <id> formula <thf>
    add <sid>.<alt> <id> decl <name> <type>

Formulas are printed with explicit equation types.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from dholt.terms import Term


@dataclass
class Addition:
    eid: str
    kind: str  # "formula" | "decl"
    term: Term | None = None  # formula
    name: str | None = None  # decl
    type: Term | None = None  # decl


@dataclass
class StepRecord:
    rule: str
    side: str
    premises: tuple
    alts: list  # list of list[Addition]
    with_term: Term | None = None
    sid: int = 0
    parent: str = "root"
    deps: frozenset = frozenset()  # entries the step relies on, premises included


@dataclass
class ProofNode:
    """Linear steps on one branch followed by a closing or branching step."""

    steps: list = field(default_factory=list)
    children: list = field(default_factory=list)  # one ProofNode per alternative of steps[-1]
    used: frozenset = frozenset()


@dataclass
class Trace:
    problem: str
    mode: str
    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)


def flatten(root: ProofNode, problem: str, mode: str) -> Trace:
    """Number the steps depth-first and link each to its parent branch."""
    tr = Trace(problem, mode)

    def walk(node: ProofNode, parent: str):
        for st in node.steps:
            st.sid = len(tr.steps) + 1
            st.parent = parent
            tr.steps.append(st)
            parent = f"{st.sid}.1"
        last = node.steps[-1]
        for k, child in enumerate(node.children, 1):
            walk(child, f"{last.sid}.{k}")

    walk(root, "root")
    return tr


def dump(trace: Trace) -> str:
    from dholt.tptp import print_term, print_type

    lines = [f"trace {trace.problem} mode {trace.mode}"]
    for st in trace.steps:
        head = f"step {st.sid} at {st.parent} rule {st.rule} side {st.side} premises {' '.join(st.premises)}"
        if st.with_term is not None:
            head += f" with {print_term(st.with_term, explicit_eq=True)}"
        lines.append(head)
        for k, alt in enumerate(st.alts, 1):
            for a in alt:
                if a.kind == "formula":
                    lines.append(f"add {st.sid}.{k} {a.eid} formula {print_term(a.term, explicit_eq=True)}")
                else:
                    lines.append(f"add {st.sid}.{k} {a.eid} decl {a.name} {print_type(a.type)}")
    return "\n".join(lines) + "\n"


@dataclass
class RawStep:
    """A step as read from text, before any interpretation of formulas."""

    sid: int
    parent: str
    rule: str
    side: str
    premises: tuple
    with_text: str | None
    alts: dict  # alt index -> list of (eid, kind, payload-text)
    line: int


class TraceFormatError(Exception):
    pass


def load(text: str) -> tuple[str, str, list[RawStep]]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("trace "):
        raise TraceFormatError("missing trace header")
    head = lines[0].split()
    if len(head) != 4 or head[2] != "mode":
        raise TraceFormatError("malformed trace header")
    steps: list[RawStep] = []
    by_sid: dict[int, RawStep] = {}
    for no, line in enumerate(lines[1:], 2):
        if not line.strip() or line.startswith("%"):
            continue
        if line.startswith("step "):
            before, _, with_text = line.partition(" with ")
            parts = before.split()
            try:
                sid = int(parts[1])
                assert parts[2] == "at" and parts[4] == "rule" and parts[6] == "side" and parts[8] == "premises"
            except (IndexError, ValueError, AssertionError):
                raise TraceFormatError(f"line {no}: malformed step") from None
            st = RawStep(sid, parts[3], parts[5], parts[7], tuple(parts[9:]),
                         with_text or None, {}, no)
            if sid in by_sid:
                raise TraceFormatError(f"line {no}: duplicate step {sid}")
            by_sid[sid] = st
            steps.append(st)
        elif line.startswith("add "):
            parts = line.split(" ", 4)
            if len(parts) < 5:
                raise TraceFormatError(f"line {no}: malformed addition")
            _, where, eid, kind, payload = parts
            sid_s, _, alt_s = where.partition(".")
            try:
                st = by_sid[int(sid_s)]
                alt = int(alt_s)
            except (KeyError, ValueError):
                raise TraceFormatError(f"line {no}: addition for unknown step") from None
            if kind not in ("formula", "decl"):
                raise TraceFormatError(f"line {no}: unknown addition kind {kind}")
            st.alts.setdefault(alt, []).append((eid, kind, payload))
        else:
            raise TraceFormatError(f"line {no}: unrecognized record")
    return head[1], head[3], steps

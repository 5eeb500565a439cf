"""Assembling corpus problem files from the axiom library."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from dholt.corpus import library as L
from dholt.corpus.problems import PROBLEMS, TYPECHECK_FILES

GROUPS = ("app-nil", "app-assoc", "app-assoc-m1", "rev-invol-lem", "rev-invol", "typecheck")
GROUP_SIZES = {"app-nil": 4, "app-assoc": 8, "app-assoc-m1": 5, "rev-invol-lem": 12, "rev-invol": 5}
DEFAULT_BUDGET = 60.0


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    group: str
    file: str  # file name inside the packaged problem directory
    expected: str  # Theorem | TypeCheck
    budget: float = DEFAULT_BUDGET

    def text(self) -> str:
        return problem_dir().joinpath(self.file).read_text()


def problem_dir():
    return resources.files("dholt.corpus").joinpath("files")


def _closure(uses: set[str]) -> list[str]:
    need, todo = set(), list(uses)
    while todo:
        d = todo.pop()
        if d not in need:
            need.add(d)
            todo.extend(L.SIGNATURE_USES[d])
    return [name for name, _ in L.SIGNATURE if name in need]


def render(name: str, axioms: list, conjecture: str, uses: set[str] = frozenset(), comment: str = "") -> str:
    """THF text for one problem.

    ``axioms`` holds library axiom names or ``(name, formula, uses)`` lemma
    triples; ``uses`` names the declarations the conjecture mentions.
    """
    body, need = [], set(uses)
    for ax in axioms:
        if isinstance(ax, str):
            formula, deps = L.AXIOMS[ax]
            body.append((ax, formula))
        else:
            ax, formula, deps = ax
            body.append((ax, formula))
        need |= deps
    decls = dict(L.SIGNATURE)
    lines = [f"% {name}"]
    if comment:
        lines += [f"% {line}" for line in comment.splitlines()]
    lines += [f"thf({d},type,{decls[d]})." for d in _closure(need)]
    lines += [f"thf({n},axiom,{f})." for n, f in body]
    lines.append(f"thf(goal,conjecture,{conjecture}).")
    return "\n".join(lines) + "\n"


def rendered_problems() -> dict[str, tuple[str, str]]:
    """``name -> (group, text)`` for every prover problem, in table order."""
    out = {}
    for p in PROBLEMS:
        out[p["name"]] = (p["group"], render(p["name"], p["axioms"], p["conjecture"], p["uses"], p.get("comment", "")))
    return out


def build_corpus() -> list[CorpusEntry]:
    """The 34 prover problems followed by the typecheck-only entries."""
    entries = [CorpusEntry(name, group, f"{name}.p", "Theorem") for name, (group, _) in rendered_problems().items()]
    entries += [CorpusEntry(name, "typecheck", f"{name}.p", "TypeCheck") for name in TYPECHECK_FILES]
    return entries


def write_corpus(directory) -> list[str]:
    """Freeze every corpus file into ``directory``."""
    from pathlib import Path

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    names = []
    texts = {name: text for name, (_, text) in rendered_problems().items()}
    texts.update(TYPECHECK_FILES)
    for name, text in texts.items():
        (d / f"{name}.p").write_text(canonical_text(name, text))
        names.append(name)
    return names


def canonical_text(name: str, text: str) -> str:
    """Leading comment lines followed by the printer's rendering of ``text``.

    Frozen files are in this form, so printing a parsed file reproduces it.
    """
    from dholt.tptp import parse_problem, print_problem

    header = []
    for line in text.splitlines():
        if not line.startswith("%"):
            break
        header.append(line + "\n")
    return "".join(header) + print_problem(parse_problem(text, name))


def minimize_axioms(row: dict, budget: float = DEFAULT_BUDGET) -> list:
    """Drop library axioms one at a time while the problem still proves and typechecks.

    Lemmas written for the case study are always kept, so every file stays
    part of its goal's decomposition.  ``row`` is an entry of the problem
    table; returns the kept axiom list.
    """
    from dholt.checker import typecheck
    from dholt.tableau import SearchConfig, search
    from dholt.tptp import parse_problem

    def passes(axioms):
        text = render(row["name"], axioms, row["conjecture"], row["uses"])
        try:
            problem = parse_problem(text, row["name"])
        except Exception:
            return False
        if search(problem, SearchConfig("native-only", budget)).status != "Refuted":
            return False
        return typecheck(problem, "exact-only", budget).status == "TypeCheck"

    kept = list(row["axioms"])
    for ax in [a for a in kept if isinstance(a, str)]:
        trial = [a for a in kept if a is not ax]
        if passes(trial):
            kept = trial
    return kept

"""The ``dholt`` command: prove, typecheck or translate one THF file."""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from dholt.checker import DholTypeError, check_theory, generate_tccs, typecheck, write_tccs
from dholt.syntax import ParseError
from dholt.tableau import MODES, SearchConfig, search
from dholt.tableau.trace import dump
from dholt.tableau.validate import validate_trace
from dholt.tptp import print_problem, print_szs

OK_STATUSES = {"Theorem", "TypeCheck", "InexactTypecheck"}


@dataclass
class Config:
    mode: str  # prove | typecheck-exact | typecheck-only | translate
    rules: str
    timeout: int
    subterm_instantiations: bool
    trace_path: Path | None
    tcc_dir: Path | None
    path: Path


def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("timeout must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dholt", description="Tableau prover for dependently typed higher-order logic.")
    ap.add_argument("problem", type=Path, help="THF problem file")
    ap.add_argument("--rules", choices=MODES, default="native-only", help="which rule families the search may use")
    ap.add_argument("--unstaged", dest="rules", action="store_const", const="unstaged",
                    help="shorthand for --rules unstaged")
    ap.add_argument("-t", "--timeout", type=_positive, default=60, help="wall-clock budget in seconds")
    group = ap.add_mutually_exclusive_group()
    group.add_argument("--typecheck-exact", dest="mode", action="store_const", const="typecheck-exact",
                       help="prove every type-correctness condition, then the conjecture")
    group.add_argument("--typecheck-only", dest="mode", action="store_const", const="typecheck-only",
                       help="prove the type-correctness conditions and drop the conjecture")
    group.add_argument("--translate", dest="mode", action="store_const", const="translate",
                       help="print the erased problem instead of proving")
    ap.add_argument("--no-subterm-instantiations", dest="subterm_instantiations", action="store_false",
                    help="do not instantiate function-typed quantifiers with subterms")
    ap.add_argument("--trace", type=Path, help="write the refutation trace here")
    ap.add_argument("--emit-tccs", type=Path, metavar="DIR", help="write each type-correctness condition as a THF file")
    ap.set_defaults(mode="prove")
    return ap


def parse_args(argv) -> Config:
    ns = build_parser().parse_args(argv)
    return Config(ns.mode, ns.rules, ns.timeout, ns.subterm_instantiations, ns.trace, ns.emit_tccs, ns.problem)


def _prove(problem, cfg: Config, budget: float) -> tuple[str, str]:
    if problem.conjecture is None:
        return "GaveUp", "no conjecture"
    if budget <= 0:
        return "Timeout", "no budget left for the conjecture"
    verdict = search(problem, SearchConfig(cfg.rules, budget, cfg.subterm_instantiations))
    if verdict.status == "Timeout":
        return "Timeout", f"{verdict.steps} steps"
    if verdict.status != "Refuted":
        return "GaveUp", f"search exhausted after {verdict.steps} steps"
    report = validate_trace(problem, verdict.trace, mode=cfg.rules)
    if not report.ok:
        return "Error", f"trace rejected: {report.violations[0]}"
    if cfg.trace_path is not None:
        cfg.trace_path.write_text(dump(verdict.trace))
    return "Theorem", f"{verdict.steps} steps, {verdict.seconds:.2f}s"


def execute(cfg: Config, out=None) -> str:
    """Run one invocation; prints the result and returns the SZS status."""
    out = out or sys.stdout
    from dholt.erasure import erase_problem
    from dholt.tptp import parse_problem

    name = cfg.path.stem
    start = time.monotonic()
    try:
        problem = parse_problem(cfg.path.read_text(encoding="utf-8"), name)
    except ParseError as exc:
        print(print_szs("SyntaxError", name, str(exc)), file=out)
        return "SyntaxError"
    except DholTypeError as exc:
        print(print_szs("TypeError", name, str(exc)), file=out)
        return "TypeError"

    if cfg.tcc_dir is not None:
        try:
            check_theory(problem)
            write_tccs(problem, generate_tccs(problem), cfg.tcc_dir)
        except DholTypeError:
            pass  # reported by the typecheck below

    if cfg.mode == "translate":
        try:
            check_theory(problem)
        except DholTypeError as exc:
            print(print_szs("TypeError", name, str(exc)), file=out)
            return "TypeError"
        out.write(print_problem(erase_problem(problem)))
        # a THF comment, so the output still parses
        print(print_szs("Success", name, "erased problem above"), file=out)
        return "Success"

    tc_mode = {"prove": "skeleton", "typecheck-exact": "exact", "typecheck-only": "exact-only"}[cfg.mode]
    tc = typecheck(problem, tc_mode, cfg.timeout, cfg.rules, cfg.subterm_instantiations)
    if tc.status != "TypeCheck" and tc.status != "InexactTypecheck":
        print(print_szs(tc.status, name, tc.message or None), file=out)
        return tc.status
    if cfg.mode == "typecheck-only":
        print(print_szs("TypeCheck", name, f"{len(tc.outcomes)} conditions"), file=out)
        return "TypeCheck"
    budget = cfg.timeout - (time.monotonic() - start)
    status, comment = _prove(problem, cfg, budget)
    print(print_szs(status, name, comment), file=out)
    return status


def main(argv=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if not cfg.path.is_file():
        print(f"dholt: cannot read {cfg.path}", file=sys.stderr)
        return 2
    status = execute(cfg)
    if status in ("SyntaxError",):
        return 2
    return 0 if status in OK_STATUSES or status == "Success" else 1


if __name__ == "__main__":
    sys.exit(main())

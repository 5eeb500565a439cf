"""Regression sweeps over the packaged corpus (``dholt-suite``)."""
from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

from dholt.corpus.build import CorpusEntry, build_corpus
from dholt.tableau import MODES

SUITE_MODES = MODES + ("typecheck",)


@dataclass
class SuiteConfig:
    mode: str = "native-only"  # a rule selection, or "typecheck"
    timeout: float = 60.0  # per entry
    jobs: int = 1
    only: tuple = ()  # substrings of entry names; empty means all


@dataclass
class Row:
    name: str
    group: str
    mode: str
    status: str
    seconds: float
    steps: int


@dataclass
class Report:
    config: SuiteConfig
    rows: list = field(default_factory=list)

    def failures(self) -> list:
        """Entries that missed their expected status (only judged for native-only and typecheck)."""
        expected = {e.name: e.expected for e in build_corpus()}
        if self.config.mode not in ("native-only", "typecheck"):
            return []
        want = "TypeCheck" if self.config.mode == "typecheck" else None
        return [r for r in self.rows if r.status != (want or expected[r.name])]

    def csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f.name for f in fields(Row)])
        for r in self.rows:
            w.writerow([r.name, r.group, r.mode, r.status, f"{r.seconds:.3f}", r.steps])
        return buf.getvalue()

    def table(self) -> str:
        width = max((len(r.name) for r in self.rows), default=4)
        lines = [f"{'name':{width}}  {'group':14} {'status':10} {'seconds':>8} {'steps':>7}"]
        for r in self.rows:
            lines.append(f"{r.name:{width}}  {r.group:14} {r.status:10} {r.seconds:8.2f} {r.steps:7d}")
        solved = sum(r.status in ("Theorem", "TypeCheck") for r in self.rows)
        lines.append(f"{solved}/{len(self.rows)} solved in mode {self.config.mode}")
        return "\n".join(lines)


def run_entry(entry: CorpusEntry, mode: str, timeout: float) -> Row:
    from dholt.checker import typecheck
    from dholt.tableau import SearchConfig, search
    from dholt.tableau.validate import validate_trace
    from dholt.tptp import parse_problem

    problem = parse_problem(entry.text(), entry.name)
    start = time.monotonic()
    if mode == "typecheck":
        result = typecheck(problem, "exact-only", timeout)
        steps = sum(o.steps for o in result.outcomes)
        return Row(entry.name, entry.group, mode, result.status, time.monotonic() - start, steps)
    verdict = search(problem, SearchConfig(mode, timeout))
    if verdict.status == "Refuted":
        ok = validate_trace(problem, verdict.trace, mode=mode).ok
        status = "Theorem" if ok else "Error"
    else:
        status = "Timeout" if verdict.status == "Timeout" else "GaveUp"
    return Row(entry.name, entry.group, mode, status, verdict.seconds, verdict.steps)


def _run(args):
    return run_entry(*args)


def run_suite(config: SuiteConfig) -> Report:
    """Run every selected entry; typecheck-only entries are skipped in prover modes."""
    if config.mode not in SUITE_MODES:
        raise ValueError(f"unknown suite mode {config.mode}")
    entries = [e for e in build_corpus()
               if (config.mode == "typecheck" or e.expected == "Theorem")
               and (not config.only or any(s in e.name for s in config.only))]
    work = [(e, config.mode, config.timeout) for e in entries]
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            rows = list(pool.map(_run, work))
    else:
        rows = [_run(w) for w in work]
    return Report(config, rows)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="dholt-suite", description="Run the packaged corpus and report per-entry results.")
    ap.add_argument("--mode", choices=SUITE_MODES, default="native-only")
    ap.add_argument("-t", "--timeout", type=float, default=60.0, help="seconds per entry")
    ap.add_argument("-j", "--jobs", type=int, default=1)
    ap.add_argument("--csv", help="write the CSV report here")
    ap.add_argument("--only", nargs="*", default=(), help="restrict to entries whose name contains one of these")
    ns = ap.parse_args(argv)
    report = run_suite(SuiteConfig(ns.mode, ns.timeout, ns.jobs, tuple(ns.only)))
    if ns.csv:
        with open(ns.csv, "w", newline="") as fh:
            fh.write(report.csv())
    print(report.table())
    return 1 if report.failures() else 0


if __name__ == "__main__":
    sys.exit(main())

import time

import pytest

from dholt.tableau import MODES, SearchConfig, search
from dholt.tableau.trace import TraceFormatError, dump, load
from dholt.tableau.validate import validate_trace
from dholt.tptp import parse_problem
from bad_traces import BAD, GOOD


def problem_at(path):
    return parse_problem(path.read_text(), path.stem)


@pytest.fixture
def list_sym(data_dir):
    return problem_at(data_dir / "dhol" / "dhol02-list-sym.p")


def test_config_rejects_bad_values():
    with pytest.raises(ValueError):
        SearchConfig(mode="everything")
    with pytest.raises(ValueError):
        SearchConfig(timeout=0)


@pytest.mark.parametrize("mode", MODES)
def test_every_mode_proves_and_validates(data_dir, mode):
    problem = problem_at(data_dir / "hol" / "hol07-imp-trans.p")
    verdict = search(problem, SearchConfig(mode, 20))
    assert verdict.status == "Refuted"
    assert validate_trace(problem, verdict.trace, mode=mode).ok


def test_trace_text_round_trip(list_sym):
    verdict = search(list_sym, SearchConfig("native-only", 20))
    text = dump(verdict.trace)
    name, mode, steps = load(text)
    assert (name, mode) == ("dhol02-list-sym", "native-only")
    assert len(steps) == len(verdict.trace)
    assert validate_trace(list_sym, text).ok


def test_validator_enforces_mode(list_sym):
    native = search(list_sym, SearchConfig("native-only", 20))
    erased = search(list_sym, SearchConfig("erasure-only", 20))
    assert not validate_trace(list_sym, native.trace, mode="erasure-only").ok
    assert not validate_trace(list_sym, erased.trace, mode="native-only").ok
    assert validate_trace(list_sym, erased.trace, mode="unstaged").ok


def test_tampered_formula_is_rejected(list_sym):
    text = dump(search(list_sym, SearchConfig("native-only", 20)).trace)
    lines = text.splitlines()
    k = next(i for i, ln in enumerate(lines) if " formula " in ln and "$false" not in ln)
    lines[k] = lines[k].rsplit(" formula ", 1)[0] + " formula $false"
    assert not validate_trace(list_sym, "\n".join(lines) + "\n").ok


def test_open_branch_is_rejected(list_sym):
    text = dump(search(list_sym, SearchConfig("native-only", 20)).trace)
    cut = text.splitlines()[:-2]
    report = validate_trace(list_sym, "\n".join(cut) + "\n")
    assert not report.ok and "open" in report.violations[0]


def test_malformed_trace_text():
    with pytest.raises(TraceFormatError):
        load("step 1 at root\n")


@pytest.mark.parametrize("label,problem,trace,fragment", BAD, ids=[b[0] for b in BAD])
def test_side_condition_violations(label, problem, trace, fragment):
    report = validate_trace(parse_problem(problem, label), trace)
    assert not report.ok
    assert fragment in report.violations[0]


@pytest.mark.parametrize("label,problem,trace", GOOD, ids=[g[0] for g in GOOD])
def test_honest_counterparts_pass(label, problem, trace):
    report = validate_trace(parse_problem(problem, label), trace)
    assert report.ok, report.violations


def test_satisfiable_problem_is_exhausted(data_dir):
    verdict = search(problem_at(data_dir / "sat" / "sat02-implication-axiom.p"), SearchConfig("native-only", 10))
    assert verdict.status == "Exhausted" and verdict.trace is None


def test_timeout_is_respected(data_dir):
    problem = problem_at(data_dir / "sat" / "sat08-nonstandard-plus.p")
    start = time.monotonic()
    verdict = search(problem, SearchConfig("native-only", 1))
    assert verdict.status == "Timeout"
    assert time.monotonic() - start < 3


def test_subterm_instantiations_can_be_disabled(data_dir):
    problem = problem_at(data_dir / "hol" / "hol20-instance.p")
    verdict = search(problem, SearchConfig("native-only", 20, subterm_instantiations=False))
    assert verdict.status == "Refuted"
    assert validate_trace(problem, verdict.trace).ok


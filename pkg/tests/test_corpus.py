import csv
import io
from collections import Counter

import pytest

from dholt.checker import check_theory
from dholt.corpus.build import (
    GROUP_SIZES, build_corpus, canonical_text, problem_dir, rendered_problems,
)
from dholt.corpus.problems import TYPECHECK_FILES
from dholt.corpus.suite import Report, Row, SuiteConfig, main, run_suite
from dholt.tptp import parse_problem, print_problem

CORPUS = build_corpus()


def test_group_sizes():
    groups = Counter(e.group for e in CORPUS if e.expected == "Theorem")
    assert dict(groups) == {"app-nil": 4, "app-assoc": 8, "app-assoc-m1": 5, "rev-invol-lem": 12, "rev-invol": 5}
    assert dict(groups) == GROUP_SIZES
    assert sum(groups.values()) == 34


def test_typecheck_entries():
    names = [e.name for e in CORPUS if e.expected == "TypeCheck"]
    assert names == list(TYPECHECK_FILES) == ["ex1-typecheck", "ex1-guard"]


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_entry_parses_and_is_small(entry):
    problem = parse_problem(entry.text(), entry.name)
    check_theory(problem)
    assert len(problem.axioms) <= 18
    assert problem.conjecture is not None


def test_frozen_files_match_the_generator():
    texts = {name: text for name, (_, text) in rendered_problems().items()}
    texts.update(TYPECHECK_FILES)
    for entry in CORPUS:
        frozen = (problem_dir() / entry.file).read_text()
        assert frozen == canonical_text(entry.name, texts[entry.name]), entry.name


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_printing_a_frozen_file_reproduces_it(entry):
    text = entry.text()
    body = "".join(ln + "\n" for ln in text.splitlines() if not ln.startswith("%"))
    assert print_problem(parse_problem(text, entry.name)).split() == body.split()


def test_csv_columns():
    report = Report(SuiteConfig(), [Row("a", "app-nil", "native-only", "Theorem", 0.25, 7)])
    rows = list(csv.reader(io.StringIO(report.csv())))
    assert rows == [["name", "group", "mode", "status", "seconds", "steps"],
                    ["a", "app-nil", "native-only", "Theorem", "0.250", "7"]]
    assert report.table().splitlines()[-1] == "1/1 solved in mode native-only"


def test_failures_only_judged_where_expected():
    bad = [Row("app-nil-base", "app-nil", "x", "Timeout", 1.0, 1)]
    assert Report(SuiteConfig("native-only"), bad).failures() == bad
    assert Report(SuiteConfig("erasure-only"), bad).failures() == []


def test_small_suite_run(tmp_path, capsys):
    out = tmp_path / "report.csv"
    code = main(["--mode", "native-only", "-t", "30", "--only", "app-nil", "--csv", str(out)])
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 4 and all(r["status"] == "Theorem" for r in rows)
    assert "4/4 solved" in capsys.readouterr().out


def test_typecheck_sweep_includes_example_one():
    report = run_suite(SuiteConfig("typecheck", 30, 1, ("ex1",)))
    assert [r.status for r in report.rows] == ["TypeCheck", "TypeCheck"]


def test_unknown_mode():
    with pytest.raises(ValueError):
        run_suite(SuiteConfig("everything"))

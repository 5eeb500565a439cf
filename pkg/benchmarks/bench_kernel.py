"""Compare the compiled and pure-Python term kernels.

Each backend runs in its own interpreter so the interning tables start
empty.  Usage: ``python3 benchmarks/bench_kernel.py [--formulas N]``.
"""
import argparse
import json
import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

WORKER = r"""
import json, random, sys, time
sys.path.insert(0, {tests!r})
from dholt import kernel, terms as T
from dholt.erasure import Eraser, phi
from dholt.tptp import parse_problem
from oracles import LIST_SIGNATURE, random_dependent_formula

rng = random.Random(20241017)
trees = [random_dependent_formula(rng) for _ in range({count})]
eraser = Eraser(parse_problem(LIST_SIGNATURE, "lists").signature)
timings = {{}}

start = time.perf_counter()
interned = [T.intern(tree) for tree in trees]
timings["intern"] = time.perf_counter() - start

start = time.perf_counter()
erased = [T.normalize(eraser.term(t)) for t in interned]
timings["erase+normalize"] = time.perf_counter() - start

start = time.perf_counter()
for term in erased:
    phi(term, eraser.simple_pers)
timings["phi"] = time.perf_counter() - start

print(json.dumps({{"backend": kernel.BACKEND, "timings": timings}}))
"""


def run_backend(pure, count):
    env = dict(os.environ)
    env.pop("DHOLT_PURE_PYTHON", None)
    if pure:
        env["DHOLT_PURE_PYTHON"] = "1"
    code = WORKER.format(tests=str(ROOT / "tests"), count=count)
    done = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(done.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--formulas", type=int, default=2000, help="random formulas per backend")
    args = ap.parse_args(argv)
    compiled = run_backend(False, args.formulas)
    pure = run_backend(True, args.formulas)
    if compiled["backend"] == pure["backend"]:
        print(f"compiled kernel not built; both runs used {pure['backend']}")
    print(f"{'phase':<18}{compiled['backend']:>12}{pure['backend']:>12}{'speedup':>10}")
    for phase, fast in compiled["timings"].items():
        slow = pure["timings"][phase]
        print(f"{phase:<18}{fast:>11.3f}s{slow:>11.3f}s{slow / fast:>9.2f}x")


if __name__ == "__main__":
    main()

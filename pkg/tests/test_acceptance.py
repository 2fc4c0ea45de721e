"""Acceptance criteria 1-8, each at its stated runtime limit.

Every test appends one pass/fail line that the terminal summary prints.
Run standalone with ``python tests/test_acceptance.py``.
"""
import subprocess
import sys
import time

import pytest

from deligne_kit.suite import _run, plan

import conftest

PLAN = dict(plan(seed=0, samples=30))


def run_criterion(n):
    start = time.perf_counter()
    cases = [_run(t) for t in PLAN[n]]
    return cases, time.perf_counter() - start


def record(n, ok, detail, elapsed=None, limit=None):
    timing = f" [{elapsed:.1f}s / {limit}s]" if limit else ""
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}{timing}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def test_criterion_1_axioms():
    cases, t = run_criterion(1)
    bad = [c["case"] for c in cases if not c["ok"]]
    mutants = [c for c in cases if c["case"].startswith("mutant")]
    ok = not bad and len(mutants) >= 6 and t < 5
    line = record(1, ok, f"{len(cases) - len(mutants)} examples valid, {len(mutants)} mutants with witnesses", t, 5)
    assert ok, (line, bad)


def test_criterion_2_gauge_laws():
    cases, t = run_criterion(2)
    total = sum(c["samples"] for c in cases)
    sums = {k: sum(c["passed"][k] for c in cases) for k in cases[0]["passed"]}
    ok = (total >= 200 and t < 30 and sums["mc_preserved"] == total and sums["composition"] == total
          and sums["first_order_literal"] == total)
    line = record(2, ok, f"{total} samples: mc {sums['mc_preserved']}, composition {sums['composition']}, "
                         f"first order dx+[x,y] {sums['first_order_literal']} "
                         f"([x,y]-dx {sums['first_order_adopted']})", t, 30)
    assert ok, line


def test_criterion_3_kodaira_spencer():
    cases, t = run_criterion(3)
    ok = all(c["ok"] for c in cases) and t < 30
    detail = ", ".join(f"{c['case']} h1={c['h1_Q']} pi0={c['pi0_eps']}" for c in cases)
    line = record(3, ok, detail, t, 30)
    assert ok, line


def test_criterion_4_theorem2():
    cases, t = run_criterion(4)
    ob = next(c for c in cases if c["case"] == "obstruction x F5[t]/t^3")
    ok = all(c["ok"] and len(c["bijection"]) == c["lhs"] for c in cases) and (ob["lhs"], ob["rhs"]) == (5, 5) and t < 300
    line = record(4, ok, f"{sum(c['ok'] for c in cases)}/{len(cases)} matches, obstruction x F5[t]/t^3 "
                         f"{ob['lhs']} = {ob['rhs']}", t, 300)
    assert ok, line


def test_criterion_5_theorem1():
    cases, t = run_criterion(5)
    ob = [c for c in cases if c["case"].startswith("obstruction")]
    ok = all(c["ok"] for c in cases) and all(c["presentation"] == "gens=[xi1] rels=[xi1^2]" for c in ob) and t < 60
    line = record(5, ok, f"{sum(c['ok'] for c in cases)}/{len(cases)} agree, obstruction {ob[0]['presentation']}", t, 60)
    assert ok, line


def test_criterion_6_theorem3():
    cases, t = run_criterion(6)
    split = [c for c in cases if c["case"].startswith("split")]
    ok = all(c["ok"] for c in cases) and len(split) == 2 and t < 300
    detail = "; ".join(f"{c['case']} {c['global_classes']} vs {c['descent_classes']}" for c in cases)
    line = record(6, ok, detail, t, 300)
    assert ok, line


def test_criterion_7_governance():
    cases, t = run_criterion(7)
    c5, c3 = cases
    ok = (c5["ok"] and (c5["deligne_classes"], c5["rep_classes"]) == (5, 5)
          and c3["ok"] and (c3["deligne_classes"], c3["rep_classes"]) == (1, 1) and t < 120)
    line = record(7, ok, f"C5 {c5['deligne_classes']} = {c5['rep_classes']}, "
                         f"C3 {c3['deligne_classes']} = {c3['rep_classes']}", t, 120)
    assert ok, line


def test_criterion_8_determinism():
    start = time.perf_counter()
    outs = [subprocess.run([sys.executable, "-m", "deligne_kit.cli", "suite", "--jobs", str(j)],
                           capture_output=True, timeout=600).stdout for j in (1, 8)]
    t = time.perf_counter() - start
    ok = bool(outs[0]) and outs[0] == outs[1]
    line = record(8, ok, f"suite report --jobs 1 vs --jobs 8: {len(outs[0])} bytes, "
                         f"{'identical' if ok else 'different'}", t)
    assert ok, line


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

"""Acceptance criteria, one test per criterion.

Each test runs the battery cases tagged with the criterion, requires every
case to hold and checks the wall-clock budget. A pass/fail line per
criterion is printed in the terminal summary (and directly when the file
is run as a script).
"""

import sys
import time

import pytest

from lienil.battery import all_cases, run_case

BUDGETS = {1: 10, 2: 300, 3: 60, 4: 60, 5: 600, 6: 600, 7: 60, 8: 60, 9: 120, 10: 120, 11: 120}
TITLES = {
    1: "expansion identities and right-letter decomposition",
    2: "S^(n) spans T^(n) component-wise (n = 3, 4, 5)",
    3: "[x1,x2][x3,x4,x5] has torsion index 3 modulo T^(4) over Z",
    4: "[[x1,x2]x3,x4,x5] in T^(4) over Q, not over Z",
    5: "Latyshev, Volichenko and integer T^(4) families",
    6: "W form families and the I' torsion bound",
    7: "[u,a1][a2,a3]+[u,a2][a1,a3] in T^(4); u[a1,a2,a3] torsion 3",
    8: "T^(3)T^(2) inside T^(4); T^(2)T^(2) not inside T^(3)",
    9: "finite-dimensional theorem check agrees with the oracle",
    10: "finite-dimensional ideal of evaluated S^(n) equals T^(n)(A)",
    11: "randomized property suites, 1000 cases each",
}

RESULTS: dict[int, str] = {}


def run_criterion(crit: int) -> tuple[bool, float, list[str]]:
    start = time.perf_counter()
    failed = [r["case"] for c in all_cases() if c.criterion == crit
              for r in [run_case(c.id)] if r["verdict"] != "holds"]
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < BUDGETS[crit]
    line = (f"criterion {crit:2d}: {'PASS' if ok else 'FAIL'}  {elapsed:7.1f}s / {BUDGETS[crit]}s  "
            f"{TITLES[crit]}" + (f"  failing: {failed[:5]}" if failed else ""))
    RESULTS[crit] = line
    print(line)
    return ok, elapsed, failed


@pytest.mark.parametrize("crit", sorted(BUDGETS))
def test_criterion(crit):
    ok, elapsed, failed = run_criterion(crit)
    assert not failed, f"cases failed: {failed}"
    assert elapsed < BUDGETS[crit], f"took {elapsed:.1f}s, budget {BUDGETS[crit]}s"


if __name__ == "__main__":
    results = [run_criterion(c)[0] for c in sorted(BUDGETS)]
    sys.exit(0 if all(results) else 1)

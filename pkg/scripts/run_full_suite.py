#!/usr/bin/env python3
"""Run the complete verification battery for a range of system sizes and
print one summary line per size.

Usage: python scripts/run_full_suite.py [Lmin] [Lmax]
"""

import sys

from wignerlab.cli import (automorphism_checks, commutator_checks,
                           gauge_checks, polar_checks, transition_checks)


def run(L: int) -> bool:
    checks = []
    for circuit in ("u1", "u2", "u-gauged"):
        checks += automorphism_checks(circuit, L)
    checks += commutator_checks(L)
    checks += transition_checks(L, +1, seed=0, pairs=50)
    checks += polar_checks(L, +1, seed=0)
    checks += gauge_checks(L)
    n_pass = sum(c["status"] == "pass" for c in checks)
    n_fail = sum(c["status"] == "fail" for c in checks)
    n_skip = sum(c["status"] == "skipped" for c in checks)
    print(f"L={L}: {n_pass} passed, {n_fail} failed, {n_skip} skipped")
    for c in checks:
        if c["status"] == "fail":
            print(f"  FAIL {c['name']}: measured={c['measured']!r}")
    return n_fail == 0


def main() -> int:
    lmin = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    lmax = int(sys.argv[2]) if len(sys.argv) > 2 else 4
    ok = all([run(L) for L in range(lmin, lmax + 1)])
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())

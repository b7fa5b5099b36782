#!/usr/bin/env python3
"""Split random coboundaries over every builtin bimodule and tabulate timings.

    python3 scripts/fuzz_split.py --count 10 --seed 42
"""

import argparse
import random
import time

from cendcohom.bimodule import BUILTINS, builtin_bimodule
from cendcohom.fuzz import random_coboundary
from cendcohom.splitter import SplitBounds, split_cocycle


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bimodule", action="append", help="repeatable; default is every builtin")
    ap.add_argument("--kmax", type=int, default=5)
    ap.add_argument("--nmax", type=int, default=6)
    args = ap.parse_args()

    bounds = SplitBounds(args.kmax, args.nmax)
    names = args.bimodule or sorted(BUILTINS)
    failures = 0
    print(f"{'bimodule':<28}{'splits':>7}{'failed':>8}{'max dim V':>11}{'slowest s':>11}")
    for name in names:
        spec = builtin_bimodule(name)
        rng = random.Random(f"{args.seed}-{name}")
        bad, slowest, dim = 0, 0.0, 0
        for _ in range(args.count):
            _, phi = random_coboundary(spec, rng)
            t0 = time.perf_counter()
            cert = split_cocycle(phi, spec, bounds)
            slowest = max(slowest, time.perf_counter() - t0)
            bad += not cert.passed
            dims = [t.get("dim", 0) for t in cert.transcript]
            dim = max(dim, max(dims, default=0))
        failures += bad
        print(f"{name:<28}{args.count:>7}{bad:>8}{dim:>11}{slowest:>11.2f}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())

#!/usr/bin/env python3
"""Run the full recognizer-vs-oracle verification across all families.

Prints one check report per (family, kind) pair and a final summary.
Equivalent to a batch of `itpda check` invocations; handy for eyeballing
timings per level.
"""

import argparse
import sys

from itpda import cli
from itpda.grammar import cell120, dodecahedral, fibonacci, polygonal


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--mutations", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--quick", action="store_true",
                        help="smaller level ranges")
    args = parser.parse_args()

    jobs = [
        ("ball", fibonacci(), "W", 5, (0, 6)),
        ("ball", fibonacci(), "W", 7, (0, 6)),
        ("ball", polygonal(6), "W", 6, (0, 5)),
        ("ball", polygonal(7), "W", 7, (0, 5)),
        ("ball", dodecahedral(), "O", 8, (0, 4)),
        ("ball", cell120(), "9", 16, (0, 2)),
        ("sector", fibonacci(), "W", 1, (1, 6)),
        ("sector", fibonacci(), "B", 1, (1, 6)),
        ("sector", dodecahedral(), "O", 1, (1, 4)),
        ("sector", cell120(), "9", 1, (1, 2)),
    ]
    all_ok = True
    for kind, system, root, sigma, (lo, hi) in jobs:
        if args.quick:
            hi = min(hi, lo + 2)
        title = f"{kind} {system.name} root={root}" + (
            f" sigma={sigma}" if kind == "ball" else "")
        print(f"== {title} ==")
        report = cli.run_check(kind, system, root, sigma, range(lo, hi + 1),
                               args.mutations, args.seed)
        print(report.as_text())
        print()
        all_ok &= report.ok
    print("ALL PASS" if all_ok else "SOME FAILED")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())

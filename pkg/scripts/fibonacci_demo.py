#!/usr/bin/env python3
"""Show the Fibonacci recognizer at work: verdicts for a^1..a^n and a
full witness derivation for one accepted length."""

import argparse

from itpda.builders import fibonacci_automaton
from itpda.machine import accepts
from itpda.store import render


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-n", type=int, default=21, help="sweep a^1..a^n")
    parser.add_argument("--witness", type=int, default=8,
                        help="print the derivation for a^WITNESS")
    args = parser.parse_args()

    automaton = fibonacci_automaton()
    accepted = [n for n in range(1, args.n + 1) if accepts(automaton, "a" * n)]
    print(f"accepted lengths up to {args.n}: {accepted}")

    verdict = accepts(automaton, "a" * args.witness, trace=True)
    print(f"\na^{args.witness}: {verdict.status} "
          f"({verdict.configurations} configurations)")
    if verdict.trace:
        for config, _ in verdict.trace:
            print(f"  ({config.state}, {config.position} read, "
                  f"{render(config.store)})")


if __name__ == "__main__":
    main()

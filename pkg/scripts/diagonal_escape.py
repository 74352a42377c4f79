#!/usr/bin/env python3
"""Show the diagonal escaping the enumeration, then escaping every extension.

Usage: python scripts/diagonal_escape.py [--witness N] [--depth K]
"""

import argparse

from diagforge.enumeration import Tier
from diagforge.kernel import pretty
from diagforge.machines import Base, describe, diagonal, extend, function_at, witness_table


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--witness", type=int, default=8)
    parser.add_argument("--depth", type=int, default=3)
    args = parser.parse_args()

    machine = Base(Tier.NATFN)
    for level in range(args.depth + 1):
        print(f"== machine: {describe(machine)}")
        for w in witness_table(machine, args.witness):
            fn = function_at(machine, w.index)
            label = getattr(fn.provenance, "program", None)
            name = pretty(label.term) if label else fn.name
            print(f"  f_{w.index}({w.index}) = {w.fn_at_n:<6} g({w.index}) = {w.g_at_n:<6} f_{w.index} = {name}")
        g = diagonal(machine)
        print(f"  extending by {g.name}\n")
        machine = extend(machine, g)


if __name__ == "__main__":
    main()

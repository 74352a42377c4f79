#!/usr/bin/env python3
"""Reconstruct the successor function and the quicksort core from component facts.

Usage: python scripts/synthesis_demo.py
"""

import time

from diagforge.kernel import Sort, pretty
from diagforge.synthesis import (
    PIVOT_COMBINE_PROBES,
    PIVOT_PRED_PROBES,
    SCHEMA_BOTTOM_UP,
    SCHEMA_PIVOT_DC,
    bottom_up_pool,
    default_list_base,
    default_nat_base,
    make_goal,
    synthesize,
)


def main():
    goal = make_goal([(1, 2), (5, 6)])
    start = time.perf_counter()
    program = synthesize(default_nat_base(), goal, SCHEMA_BOTTOM_UP, budget=3)
    print(f"successor goal {{1->2, 5->6}}: {pretty(program.term)} "
          f"({time.perf_counter() - start:.3f}s)")

    base = default_list_base()
    pred_pool = bottom_up_pool(base, ("x", "pivot"), Sort.BOOL, PIVOT_PRED_PROBES, 5)
    combine_pool = bottom_up_pool(base, ("l", "pivot", "r"), Sort.LIST_NAT, PIVOT_COMBINE_PROBES, 5)
    print(f"pivot holes: {len(pred_pool)} predicate behaviors, "
          f"{len(combine_pool)} combiner behaviors after pruning")

    goal = make_goal([((), ()), ((2, 1), (1, 2)), ((3, 1, 2), (1, 2, 3))])
    start = time.perf_counter()
    program = synthesize(base, goal, SCHEMA_PIVOT_DC, budget=5)
    print(f"sorting goal: {pretty(program.term)} ({time.perf_counter() - start:.3f}s)")


if __name__ == "__main__":
    main()

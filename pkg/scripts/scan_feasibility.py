#!/usr/bin/env python3
"""Reproduce the split of even k into "finitely many" and "infinite family"
classes for symmetric cubic graphs of order k*p.

For each even k in the range, search for groups of order 3k generated by an
involution and an element of order 3 whose abelianization is C6; k supports
an infinite family exactly when one exists.
"""

import argparse
import time

from arcgraphs.fp import feasibility
from arcgraphs.perm import abelian_invariants


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k-max", type=int, default=50)
    parser.add_argument("--show-witnesses", action="store_true")
    args = parser.parse_args()

    feasible, infeasible = [], []
    t0 = time.time()
    for k in range(2, args.k_max + 1, 2):
        ok, witnesses = feasibility(k)
        (feasible if ok else infeasible).append(k)
        line = "k=%-3d %-10s witnesses=%d" % (
            k, "feasible" if ok else "infeasible", len(witnesses))
        if args.show_witnesses:
            line += "  " + ", ".join(
                "order %d ab=%s" % (w.group.order(), abelian_invariants(w.group))
                for w in witnesses)
        print(line, flush=True)
    print()
    print("elapsed: %.1fs" % (time.time() - t0))
    print("infinite family for k =", ", ".join(map(str, feasible)))
    print("finitely many for k =", ", ".join(map(str, infeasible)))


if __name__ == "__main__":
    main()

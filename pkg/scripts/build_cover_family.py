#!/usr/bin/env python3
"""Build the cyclic-cover family of symmetric cubic graphs of order k*p for
one k and a range of primes, reporting transitivity level, automorphism
order, and the structural facts (normal semiregular Sylow p-subgroup,
covering projection onto the base, abelianization C6).
"""

import argparse
import time

from arcgraphs.analyze import automorphism_group, s_arc_profile
from arcgraphs.cover import (CoverSpec, build_cover_data, is_prime,
                             root_candidates, structure_report)
from arcgraphs.fp import feasibility
from arcgraphs.graphs import quotient_graph


def admissible_primes(k, p_max):
    return [p for p in range(7, p_max + 1)
            if is_prime(p) and p % 6 == 1 and (3 * k) % p != 0]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k", type=int, default=6)
    parser.add_argument("--p-max", type=int, default=61)
    args = parser.parse_args()

    feasible, witnesses = feasibility(args.k)
    if not feasible:
        print("k=%d is infeasible: no base group of order %d qualifies"
              % (args.k, 3 * args.k))
        return

    print("k=%d: %d marked base group(s) of order %d"
          % (args.k, len(witnesses), 3 * args.k))
    t0 = time.time()
    for p in admissible_primes(args.k, args.p_max):
        for bi, base in enumerate(witnesses):
            for root in root_candidates(p, 3):
                build = build_cover_data(CoverSpec(base=base, prime=p, root=root))
                aut = automorphism_group(build.graph)
                prof = s_arc_profile(build.graph, aut)
                rep = structure_report(build.group, build.graph)
                covering = (args.k < 3 or
                            quotient_graph(build.graph,
                                           build.sylow_p_group()).is_covering)
                print("p=%-4d base#%d root=%-4d order=%-5d s=%d |Aut|=%-6d "
                      "structure=%s covering=%s"
                      % (p, bi, root, build.graph.n, prof.s_max_transitive,
                         aut.order(), rep.all_passed, covering), flush=True)
    print("elapsed: %.1fs" % (time.time() - t0))


if __name__ == "__main__":
    main()

"""Independent brute-force oracles used to cross-check the library.

Everything here deliberately avoids the library's own algorithms: group
orders come from plain product closure, normal subgroups from unions of
conjugacy classes, graph isomorphism from bijection backtracking.
"""

from __future__ import annotations

from arcgraphs.perm import PermGroup, Permutation
from arcgraphs.graphs import Graph


def brute_closure(degree: int, gens: list[Permutation]) -> set[Permutation]:
    seen = {Permutation.identity(degree)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = p * g
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def brute_conjugacy_classes(elements: set[Permutation]) -> list[frozenset]:
    classes = []
    remaining = set(elements)
    while remaining:
        e = next(iter(remaining))
        cls = frozenset(g.inverse() * e * g for g in elements)
        classes.append(cls)
        remaining -= cls
    return classes


def brute_normal_subgroups(group: PermGroup) -> list[frozenset]:
    """All normal subgroups, as unions of conjugacy classes closed under
    multiplication; exponential in the class count, fine for small groups."""
    elements = set(brute_closure(group.degree, list(group.generators)))
    classes = brute_conjugacy_classes(elements)
    ident = Permutation.identity(group.degree)
    others = [c for c in classes if ident not in c]
    out = []
    for mask in range(2 ** len(others)):
        cand = {ident}
        for i, cls in enumerate(others):
            if mask >> i & 1:
                cand |= cls
        if len(elements) % len(cand):
            continue
        if all(a * b in cand for a in cand for b in cand):
            out.append(frozenset(cand))
    return out


def brute_is_quasiprimitive(group: PermGroup) -> bool:
    degree = group.degree
    for sub in brute_normal_subgroups(group):
        if len(sub) == 1:
            continue
        reached = {0}
        for p in sub:
            reached.add(p.images[0])
        # orbit of 0 under the subgroup
        orbit = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for p in sub:
                w = p.images[v]
                if w not in orbit:
                    orbit.add(w)
                    frontier.append(w)
        if len(orbit) != degree:
            return False
    return True


def brute_find_isomorphism(g1: Graph, g2: Graph) -> list[int] | None:
    """Bijection search with degree pruning; None when non-isomorphic."""
    if g1.n != g2.n or g1.num_edges() != g2.num_edges():
        return None
    if sorted(map(len, g1.adj)) != sorted(map(len, g2.adj)):
        return None
    n = g1.n
    mapping = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for img in range(n):
            if used[img] or len(g2.adj[img]) != len(g1.adj[v]):
                continue
            ok = True
            for w in g1.adj[v]:
                if w < v and mapping[w] not in g2.adj[img]:
                    ok = False
                    break
            if ok:
                # also check non-adjacent mapped vertices stay non-adjacent
                for w in range(v):
                    if w not in g1.adj[v] and mapping[w] in g2.adj[img]:
                        ok = False
                        break
            if ok:
                mapping[v] = img
                used[img] = True
                if extend(v + 1):
                    return True
                mapping[v] = -1
                used[img] = False
        return False

    return list(mapping) if extend(0) else None


def brute_automorphism_count(graph: Graph) -> int:
    """Count all adjacency-preserving bijections by pruned backtracking."""
    n = graph.n
    mapping = [-1] * n
    used = [False] * n
    count = 0

    def extend(v: int):
        nonlocal count
        if v == n:
            count += 1
            return
        for img in range(n):
            if used[img] or len(graph.adj[img]) != len(graph.adj[v]):
                continue
            ok = True
            for w in range(v):
                if (w in graph.adj[v]) != (mapping[w] in graph.adj[img]):
                    ok = False
                    break
            if ok:
                mapping[v] = img
                used[img] = True
                extend(v + 1)
                mapping[v] = -1
                used[img] = False

    extend(0)
    return count


def small_graph_corpus() -> dict[str, Graph]:
    from arcgraphs.census import REGISTRY, build_named
    from arcgraphs.graphs import Graph, complete_graph, cycle_graph

    corpus = {gid: build_named(gid) for gid in REGISTRY}
    corpus["K4-relabeled"] = corpus["F004"].relabel([2, 0, 3, 1])
    corpus["prism"] = Graph.from_edges(
        6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    corpus["K33-relabeled"] = corpus["F006"].relabel([5, 3, 1, 4, 2, 0])
    corpus["cube-relabeled"] = corpus["F008"].relabel([7, 2, 5, 0, 3, 6, 1, 4])
    corpus["C8"] = cycle_graph(8)
    corpus["K5"] = complete_graph(5)
    corpus["moebius-kantor-relabeled"] = corpus["F016"].relabel(
        [9, 4, 11, 0, 13, 2, 15, 6, 1, 8, 3, 10, 5, 12, 7, 14])
    return corpus

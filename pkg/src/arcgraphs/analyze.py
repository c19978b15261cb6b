"""Canonical forms, automorphism groups, and transitivity profiles.

Canonical labeling runs individualization-refinement with target cell =
first smallest non-singleton cell; the certificate is the minimal
(invariant-sequence, graph6) pair over the pruned search tree, which is
invariant under relabeling.  Automorphism groups are computed as a
stabilizer tower guided by the same refinement: level by level the next
base point is drawn from the first smallest non-singleton cell and its
orbit under the stabilizer of the earlier base points is established by
explicit automorphism searches, so the group order is the product of the
discovered orbit sizes and the resulting stabilizer chain is complete by
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceededError
from .perm import (DEFAULT_ELEMENT_CAP, PermGroup, Permutation, _ChainLevel,
                   is_quasiprimitive)
from .graphs import Graph, graph6_encode

Partition = list[list[int]]


def _refine(graph: Graph, partition: Partition) -> Partition:
    """Coarsest equitable refinement; subcells ordered by neighbor count."""
    adj = graph.adj
    cells = [list(c) for c in partition]
    changed = True
    while changed:
        changed = False
        for splitter in list(cells):
            counts = [0] * graph.n
            for u in splitter:
                for w in adj[u]:
                    counts[w] += 1
            new_cells: Partition = []
            split_here = False
            for cell in cells:
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                buckets: dict[int, list[int]] = {}
                for v in cell:
                    buckets.setdefault(counts[v], []).append(v)
                if len(buckets) == 1:
                    new_cells.append(cell)
                else:
                    split_here = True
                    for key in sorted(buckets):
                        new_cells.append(buckets[key])
            if split_here:
                cells = new_cells
                changed = True
                break
    return cells


def _individualize(partition: Partition, vertex: int) -> Partition:
    out: Partition = []
    for cell in partition:
        if vertex in cell and len(cell) > 1:
            out.append([vertex])
            out.append([v for v in cell if v != vertex])
        else:
            out.append(cell)
    return out


def _target_cell_index(partition: Partition) -> int | None:
    best = None
    for i, cell in enumerate(partition):
        if len(cell) > 1 and (best is None or len(cell) < len(partition[best])):
            best = i
    return best


def _cell_sizes(partition: Partition) -> tuple[int, ...]:
    return tuple(len(c) for c in partition)


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class CanonicalForm:
    """Relabeling-invariant certificate: canonical graph6 bytes."""

    certificate: bytes


class _CanonSearch:
    """Minimize (invariant sequence, certificate) over the refinement tree.

    Equal-certificate leaves yield automorphisms, which merge orbits of the
    root target cell and prune sibling branches there.
    """

    def __init__(self, graph: Graph):
        self.graph = graph
        self.best: tuple[tuple[tuple[int, ...], ...], bytes] | None = None
        self.best_perm: Permutation | None = None
        self.orbits = _DisjointSet(graph.n)

    def run(self) -> tuple[bytes, Permutation]:
        start = _refine(self.graph, [list(range(self.graph.n))])
        self._descend(start, (_cell_sizes(start),), at_root=True)
        assert self.best is not None and self.best_perm is not None
        return self.best[1], self.best_perm

    def _descend(self, partition: Partition,
                 invs: tuple[tuple[int, ...], ...], at_root: bool = False) -> None:
        if self.best is not None:
            best_invs = self.best[0]
            common = min(len(invs), len(best_invs))
            if invs[:common] > best_invs[:common]:
                return
        ti = _target_cell_index(partition)
        if ti is None:
            labeling = Permutation(_positions(partition, self.graph.n))
            cert = graph6_encode(self.graph.relabel(labeling)).encode("ascii")
            score = (invs, cert)
            if self.best is None or score < self.best:
                self.best = score
                self.best_perm = labeling
            elif score == self.best:
                auto = self.best_perm * labeling.inverse()
                for v in range(self.graph.n):
                    self.orbits.union(v, auto.images[v])
            return
        branched: list[int] = []
        for v in partition[ti]:
            if at_root and any(self.orbits.find(v) == self.orbits.find(u)
                               for u in branched):
                continue
            branched.append(v)
            child = _refine(self.graph, _individualize(partition, v))
            self._descend(child, invs + (_cell_sizes(child),))


def _positions(partition: Partition, n: int) -> list[int]:
    pos = [0] * n
    for i, cell in enumerate(partition):
        pos[cell[0]] = i
    return pos


def canonical_form(graph: Graph) -> CanonicalForm:
    """Certificate equal across isomorphic graphs, distinct otherwise."""
    if graph.n == 0:
        return CanonicalForm(graph6_encode(graph).encode("ascii"))
    cert, _ = _CanonSearch(graph).run()
    return CanonicalForm(cert)


def canonical_graph(graph: Graph) -> Graph:
    """The canonically relabeled copy of the graph."""
    if graph.n == 0:
        return graph
    _, perm = _CanonSearch(graph).run()
    return graph.relabel(perm)


# ---------------------------------------------------------------------------
# automorphism groups
# ---------------------------------------------------------------------------

def _find_automorphism(graph: Graph, anchors: list[tuple[int, int]]
                       ) -> Permutation | None:
    """One automorphism mapping each anchor pair (vertex, image), or None.

    Remaining vertices are matched in BFS order from the anchors, each
    candidate checked against its already-mapped neighbors.  Edge-wise
    consistency suffices: a vertex bijection of a graph onto itself that
    maps edges to edges is an automorphism.
    """
    n = graph.n
    adj = graph.adj
    adj_sets = [frozenset(a) for a in adj]
    mapping = [-1] * n
    used = [False] * n
    for v, img in anchors:
        if mapping[v] != -1:
            if mapping[v] != img:
                return None
            continue
        if used[img] or len(adj[v]) != len(adj[img]):
            return None
        mapping[v] = img
        used[img] = True
    for v, _ in anchors:
        for w in adj[v]:
            if mapping[w] != -1 and mapping[w] not in adj_sets[mapping[v]]:
                return None

    order: list[int] = []
    parent = [-1] * n
    seen = [False] * n
    for v, _ in anchors:
        if not seen[v]:
            seen[v] = True
            order.append(v)
    i = 0
    while len(order) < n:
        if i < len(order):
            v = order[i]
            i += 1
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    order.append(w)
        else:  # disconnected input: open a fresh component
            v = next(u for u in range(n) if not seen[u])
            seen[v] = True
            order.append(v)
    todo = [v for v in order if mapping[v] == -1]

    def candidates(v: int) -> list[int]:
        pool = adj[mapping[parent[v]]] if parent[v] != -1 else range(n)
        out = []
        deg = len(adj[v])
        for img in pool:
            if used[img] or len(adj[img]) != deg:
                continue
            for w in adj[v]:
                mw = mapping[w]
                if mw != -1 and mw not in adj_sets[img]:
                    break
            else:
                out.append(img)
        return out

    stack: list[tuple[list[int], int]] = []
    pos = 0
    while True:
        if pos == len(todo):
            return Permutation(mapping)
        v = todo[pos]
        if len(stack) == pos:
            stack.append((candidates(v), 0))
        else:
            used[mapping[v]] = False
            mapping[v] = -1
        cands, ci = stack[pos]
        if ci >= len(cands):
            stack.pop()
            if pos == 0:
                return None
            pos -= 1
            continue
        stack[pos] = (cands, ci + 1)
        mapping[v] = cands[ci]
        used[cands[ci]] = True
        pos += 1


def automorphism_group(graph: Graph) -> PermGroup:
    """Full automorphism group, with a stabilizer chain built alongside."""
    n = graph.n
    if n == 0:
        return PermGroup(0)
    found: list[Permutation] = []
    bases: list[int] = []
    base_pairs: list[tuple[int, int]] = []
    partition = _refine(graph, [list(range(n))])
    while True:
        ti = _target_cell_index(partition)
        if ti is None:
            break
        cell = partition[ti]
        base = cell[0]
        acting = [g for g in found
                  if all(g.images[b] == b for b in bases)]
        lvl = _ChainLevel(base, acting)
        lvl.rebuild_orbit()
        for u in cell:
            if u in lvl.tree:
                continue
            auto = _find_automorphism(graph, base_pairs + [(base, u)])
            if auto is not None:
                found.append(auto)
                lvl.gens.append(auto)
                lvl.rebuild_orbit()
        bases.append(base)
        base_pairs.append((base, base))
        partition = _refine(graph, _individualize(partition, base))
    chain = []
    for i, b in enumerate(bases):
        prefix = bases[:i]
        acting = [g for g in found
                  if all(g.images[q] == q for q in prefix)]
        lvl = _ChainLevel(b, acting)
        lvl.rebuild_orbit()
        chain.append(lvl)
    return PermGroup(n, found, _chain=chain)


# ---------------------------------------------------------------------------
# s-arc profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SArcRow:
    s: int
    count: int
    transitive: bool
    regular: bool


@dataclass(frozen=True)
class SArcProfile:
    rows: tuple[SArcRow, ...]
    s_max_transitive: int

    def row(self, s: int) -> SArcRow:
        return self.rows[s]


def _count_s_arcs(graph: Graph, s: int) -> int:
    """Non-backtracking walks with s edges, counted by dynamic programming."""
    if s == 0:
        return graph.n
    arcs = [(u, v) for u in range(graph.n) for v in graph.adj[u]]
    weight = {a: 1 for a in arcs}
    for _ in range(s - 1):
        weight = {(u, v): sum(weight[(v, w)] for w in graph.adj[v] if w != u)
                  for (u, v) in arcs}
    return sum(weight.values())


def _first_s_arc(graph: Graph, s: int) -> tuple[int, ...] | None:
    if s == 0:
        return (0,) if graph.n else None
    stack: list[tuple[int, ...]] = [(v,) for v in range(graph.n - 1, -1, -1)]
    while stack:
        walk = stack.pop()
        if len(walk) == s + 1:
            return walk
        prev = walk[-2] if len(walk) > 1 else -1
        for w in reversed(graph.adj[walk[-1]]):
            if w != prev:
                stack.append(walk + (w,))
    return None


def _tuple_orbit_size(gens: Sequence[Permutation], start: tuple[int, ...]) -> int:
    seen = {start}
    stack = [start]
    while stack:
        tup = stack.pop()
        for g in gens:
            imgs = g.images
            img = tuple(imgs[v] for v in tup)
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return len(seen)


def s_arc_profile(graph: Graph, group: PermGroup | None = None,
                  s_cap: int = 7) -> SArcProfile:
    """Transitivity and regularity of the group on s-arcs for s = 0..s_cap.

    s-arcs are non-backtracking walks; the group defaults to the full
    automorphism group.  Requires a connected regular graph of valency at
    least 3 (on a cycle every s-arc level is transitive, so profiles are
    refused there).
    """
    if not graph.is_connected():
        raise ValueError("graph must be connected")
    d = graph.regular_degree()
    if d is None or d < 3:
        raise ValueError("profile requires a regular graph of valency >= 3")
    if group is None:
        group = automorphism_group(graph)
    if group.degree != graph.n:
        raise ValueError("group degree mismatch")
    for g in group.generators:
        if not graph.is_automorphism(g):
            raise ValueError("group contains a non-automorphism")
    order = group.order()
    rows = []
    s_max = -1
    alive = True
    for s in range(s_cap + 1):
        count = _count_s_arcs(graph, s)
        transitive = False
        if alive:
            start = _first_s_arc(graph, s)
            transitive = (start is not None and
                          _tuple_orbit_size(group.generators, start) == count)
        alive = transitive
        if transitive:
            s_max = s
        rows.append(SArcRow(s=s, count=count, transitive=transitive,
                            regular=transitive and order == count))
    return SArcProfile(rows=tuple(rows), s_max_transitive=s_max)


# ---------------------------------------------------------------------------
# local action
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalAction:
    degree: int
    order: int
    transitive: bool
    quasiprimitive: bool
    name: str | None


def local_action(graph: Graph, group: PermGroup, vertex: int) -> LocalAction:
    """Permutation group induced by the vertex stabilizer on the neighborhood."""
    if not group.is_transitive():
        raise ValueError("group must be vertex-transitive")
    stab = group.stabilizer(vertex)
    nbrs = list(graph.adj[vertex])
    pos = {w: i for i, w in enumerate(nbrs)}
    gens = [Permutation(pos[g.images[w]] for w in nbrs) for g in stab.generators]
    induced = PermGroup(len(nbrs), gens)
    transitive = induced.is_transitive()
    qp = bool(transitive and is_quasiprimitive(induced))
    return LocalAction(degree=len(nbrs), order=induced.order(),
                       transitive=transitive, quasiprimitive=qp,
                       name=_small_group_name(induced))


def _small_group_name(group: PermGroup) -> str | None:
    d = group.degree
    if d > 4 or d == 0 or not group.is_transitive():
        return None
    order = group.order()
    if d == 1:
        return "C1"
    if d == 2:
        return "C2"
    if d == 3:
        return {3: "C3", 6: "S3"}.get(order)
    if order == 4:
        cyclic = any(p.order() == 4 for p in group.elements())
        return "C4" if cyclic else "V4"
    return {8: "D4", 12: "A4", 24: "S4"}.get(order)


# ---------------------------------------------------------------------------
# arc-regular subgroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArcRegularAction:
    """A subgroup acting regularly on the arcs, with marked generators:
    `rotation` generates the stabilizer of `vertex`, `involution` swaps
    `vertex` with one of its neighbors."""

    group: PermGroup
    rotation: Permutation
    involution: Permutation
    vertex: int


def find_arc_regular_subgroups(graph: Graph, cap: int | None = None
                               ) -> list[ArcRegularAction]:
    """All conjugacy classes (in the full automorphism group) of subgroups
    acting regularly on the arcs, each with extracted generators.

    Candidate pairs are a rotation of order d cycling the neighborhood of a
    fixed vertex and an involution swapping that vertex with a neighbor;
    pairs generating a group of order (number of arcs) are kept and
    deduplicated by exhaustive conjugation, which is budget-capped.
    """
    if not graph.is_connected():
        raise ValueError("graph must be connected")
    d = graph.regular_degree()
    if d is None:
        raise ValueError("graph must be regular")
    aut = automorphism_group(graph)
    if not aut.is_transitive():
        return []
    n = graph.n
    target = n * d
    limit = DEFAULT_ELEMENT_CAP if cap is None else cap
    if aut.order() > limit:
        raise BudgetExceededError(
            "automorphism group order %d exceeds cap %d" % (aut.order(), limit))
    elements = aut.elements(limit)
    v0 = 0
    nbrs = graph.adj[v0]
    rotations = []
    for g in elements:
        if g.images[v0] != v0 or g.order() != d:
            continue
        orb = {nbrs[0]}
        x = nbrs[0]
        for _ in range(d - 1):
            x = g.images[x]
            orb.add(x)
        if len(orb) == d:
            rotations.append(g)
    swaps = [g for g in elements
             if g.order() == 2 and g.images[v0] in nbrs and
             g.images[g.images[v0]] == v0]
    found: list[ArcRegularAction] = []
    for h in rotations:
        for a in swaps:
            sub = PermGroup(n, [h, a])
            if sub.order() != target or not sub.is_transitive():
                continue
            found.append(ArcRegularAction(group=sub, rotation=h,
                                          involution=a, vertex=v0))
    # Two marked actions are the same class when some automorphism
    # conjugates one generator pair to the other.  The same subgroup can
    # carry inequivalent markings, so pairs, not subgroups, are compared.
    class_pairs: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    classes: list[ArcRegularAction] = []
    for action in sorted(found, key=lambda t: (t.rotation.images,
                                               t.involution.images)):
        h, a = action.rotation, action.involution
        hit = False
        for g in elements:
            gi = g.inverse()
            if ((gi * h * g).images, (gi * a * g).images) in class_pairs:
                hit = True
                break
        if not hit:
            class_pairs.add((h.images, a.images))
            classes.append(action)
    return classes

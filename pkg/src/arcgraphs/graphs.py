"""Finite simple undirected graphs, codecs, and the coset-graph construction.

Graphs are immutable; adjacency is stored as a tuple of sorted neighbor
tuples.  External formats: graph6 (bit-exact per the published byte layout),
LCF chord codes for cubic Hamiltonian graphs, and plain "u v" edge lists.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import Graph6Error, LcfError, MultiedgeError, SubgroupError
from .perm import FiniteGroupOracle, PermGroup, Permutation


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n != len(self.adj):
            raise ValueError("adjacency length does not match vertex count")
        for v, nbrs in enumerate(self.adj):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError("neighbor lists must be sorted and duplicate-free")
            for w in nbrs:
                if not 0 <= w < self.n:
                    raise ValueError("neighbor out of range")
                if w == v:
                    raise ValueError("loops are not allowed")
                if v not in self.adj[w]:
                    raise ValueError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError("loop edge (%d, %d)" % (u, v))
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def regular_degree(self) -> int | None:
        """Common vertex degree, or None if the graph is not regular."""
        if self.n == 0:
            return None
        degs = {len(a) for a in self.adj}
        return degs.pop() if len(degs) == 1 else None

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def relabel(self, images: Sequence[int] | Permutation) -> "Graph":
        """Graph with vertex v renamed to images[v]."""
        if isinstance(images, Permutation):
            images = images.images
        if sorted(images) != list(range(self.n)):
            raise ValueError("not a vertex bijection")
        new_adj: list[tuple[int, ...]] = [()] * self.n
        for v, nbrs in enumerate(self.adj):
            new_adj[images[v]] = tuple(sorted(images[w] for w in nbrs))
        return Graph(self.n, tuple(new_adj))

    def is_automorphism(self, perm: Permutation) -> bool:
        if perm.degree != self.n:
            return False
        imgs = perm.images
        return all(tuple(sorted(imgs[w] for w in self.adj[v])) == self.adj[imgs[v]]
                   for v in range(self.n))

    def __repr__(self) -> str:
        return "Graph(n=%d, m=%d)" % (self.n, self.num_edges())


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(tuple(w for w in range(n) if w != v) for v in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    left = tuple(range(a))
    right = tuple(range(a, a + b))
    return Graph(a + b, tuple(right for _ in left) + tuple(left for _ in right))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


# ---------------------------------------------------------------------------
# graph6 codec
# ---------------------------------------------------------------------------

_G6_MAX_N = 68719476735


def graph6_encode(graph: Graph) -> str:
    n = graph.n
    if n > _G6_MAX_N:
        raise Graph6Error("graph too large for graph6")
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        head = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = []
    for j in range(1, n):
        row = graph.adj[j]
        for i in range(j):
            bits.append(1 if i in row else 0)
    body = []
    for k in range(0, len(bits), 6):
        group = bits[k:k + 6]
        group += [0] * (6 - len(group))
        val = 0
        for b in group:
            val = (val << 1) | b
        body.append(val + 63)
    return bytes(head + body).decode("ascii")


def graph6_decode(data: str | bytes) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise Graph6Error("empty graph6 data")
    if any(b < 63 or b > 126 for b in data):
        raise Graph6Error("byte out of graph6 range")
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            if len(data) < 8:
                raise Graph6Error("truncated size header")
            n = 0
            for b in data[2:8]:
                n = (n << 6) | (b - 63)
            body = data[8:]
        else:
            if len(data) < 4:
                raise Graph6Error("truncated size header")
            n = 0
            for b in data[1:4]:
                n = (n << 6) | (b - 63)
            body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    nbits = n * (n - 1) // 2
    expect = (nbits + 5) // 6
    if len(body) != expect:
        raise Graph6Error("body length %d, expected %d" % (len(body), expect))
    bits = []
    for b in body:
        v = b - 63
        bits.extend(((v >> s) & 1) for s in (5, 4, 3, 2, 1, 0))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# LCF codes
# ---------------------------------------------------------------------------

_LCF_RE = re.compile(r"^\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]\s*\^?\s*(\d+)$")


def lcf_parse(code: str) -> Graph:
    """Cubic Hamiltonian graph from an LCF chord code "[j1,...,jm]^r".

    Vertices 0..m*r-1 on a Hamiltonian cycle; vertex i additionally joined
    to i + j_(i mod m).  The chord entries must pair up (the entry at each
    chord's far end points back), so the result is simple and cubic.
    """
    m = _LCF_RE.match(code.strip())
    if not m:
        raise LcfError("malformed LCF code: %r" % code)
    jumps = [int(x) for x in m.group(1).split(",")]
    reps = int(m.group(2))
    if reps < 1:
        raise LcfError("repeat count must be positive")
    n = len(jumps) * reps
    if n < 4 or n % 2:
        raise LcfError("vertex count %d is not an even number >= 4" % n)
    chord_of = []
    for i in range(n):
        j = jumps[i % len(jumps)] % n
        if j == 0:
            raise LcfError("chord at vertex %d is a loop" % i)
        if j in (1, n - 1):
            raise LcfError("chord at vertex %d duplicates a cycle edge" % i)
        chord_of.append((i + j) % n)
    for i in range(n):
        if chord_of[chord_of[i]] != i:
            raise LcfError(
                "chord entries do not pair up at vertex %d: graph not cubic" % i)
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, chord_of[i]) for i in range(n) if i < chord_of[i]]
    graph = Graph.from_edges(n, edges)
    if graph.regular_degree() != 3:
        raise LcfError("result is not cubic")
    return graph


# ---------------------------------------------------------------------------
# edge-list text files
# ---------------------------------------------------------------------------

def parse_edge_list(text: str, n: int | None = None) -> Graph:
    """Graph from lines "u v" (0-based); vertex count inferred when omitted."""
    edges = []
    top = -1
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError("bad edge line: %r" % line)
        u, v = int(parts[0]), int(parts[1])
        top = max(top, u, v)
        edges.append((u, v))
    count = (top + 1) if n is None else n
    return Graph.from_edges(count, edges)


def format_edge_list(graph: Graph) -> str:
    return "".join("%d %d\n" % e for e in graph.edges())


# ---------------------------------------------------------------------------
# coset graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CosetGraphResult:
    """Coset graph plus the right-multiplication action that built it."""

    graph: Graph
    action: PermGroup
    coset_of: tuple[int, ...]      # element index -> vertex
    reps: tuple[int, ...]          # vertex -> minimal element index in the coset
    subgroup: tuple[int, ...]
    group: FiniteGroupOracle

    def vertex_permutation(self, element: int) -> Permutation:
        """Action of one group element on the vertices (right multiplication)."""
        return Permutation(self.coset_of[self.group.multiply(r, element)]
                           for r in self.reps)


def _subgroup_closure_check(oracle: FiniteGroupOracle, members: frozenset[int]) -> None:
    if oracle.identity not in members:
        raise SubgroupError("subgroup must contain the identity")
    for h in members:
        if oracle.inverse(h) not in members:
            raise SubgroupError("subgroup not closed under inverses")
        for k in members:
            if oracle.multiply(h, k) not in members:
                raise SubgroupError("subgroup not closed under multiplication")


def coset_graph(group: FiniteGroupOracle, subgroup: Iterable[int],
                swap: int) -> CosetGraphResult:
    """Graph on right cosets of `subgroup`, cosets adjacent when their
    representatives differ by an element of the double coset H*swap*H.

    `swap` must lie outside the subgroup with its square inside; the double
    coset is symmetric, so adjacency is well defined.  Raises MultiedgeError
    when the arc stabilizer H meet H^swap is nontrivial, i.e. when the
    construction is a degenerate (multigraph) quotient such as the dipole.
    """
    members = frozenset(subgroup)
    _subgroup_closure_check(group, members)
    if swap in members:
        raise SubgroupError("swap element lies in the subgroup")
    if group.multiply(swap, swap) not in members:
        raise SubgroupError("square of swap element lies outside the subgroup")

    # H meet H^swap is the arc stabilizer; nontrivial means parallel edges
    # in the associated multigraph.
    swap_inv = group.inverse(swap)
    conj = {group.multiply(group.multiply(swap_inv, h), swap) for h in members}
    arc_stab = members & conj
    if len(arc_stab) > 1:
        raise MultiedgeError(
            "arc stabilizer has order %d: degenerate multigraph quotient"
            % len(arc_stab))

    double = sorted({group.multiply(group.multiply(h1, swap), h2)
                     for h1 in members for h2 in members})
    assert sorted(group.inverse(w) for w in double) == double, \
        "double coset not symmetric"

    coset_of = [-1] * group.order
    reps: list[int] = []
    for g in range(group.order):
        if coset_of[g] != -1:
            continue
        members_g = sorted(group.multiply(h, g) for h in members)
        vid = len(reps)
        reps.append(members_g[0])
        for x in members_g:
            coset_of[x] = vid
    order = {rep: i for i, rep in enumerate(sorted(reps))}
    coset_of = [order[reps[c]] for c in coset_of]
    reps = sorted(reps)

    nverts = len(reps)
    edges = set()
    for vid, r in enumerate(reps):
        nbrs = {coset_of[group.multiply(w, r)] for w in double}
        if vid in nbrs:
            raise MultiedgeError("coset adjacent to itself")
        if len(nbrs) != len(double) // len(members):
            raise MultiedgeError("collapsed double-coset adjacency")
        for w in nbrs:
            edges.add((min(vid, w), max(vid, w)))
    graph = Graph.from_edges(nverts, sorted(edges))

    gens = []
    for gi in group.generators:
        gens.append(Permutation(coset_of[group.multiply(r, gi)] for r in reps))
    action = PermGroup(nverts, gens)
    return CosetGraphResult(graph=graph, action=action,
                            coset_of=tuple(coset_of), reps=tuple(reps),
                            subgroup=tuple(sorted(members)), group=group)


# ---------------------------------------------------------------------------
# quotients and covering projections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientResult:
    quotient: Graph
    projection: tuple[int, ...]
    is_covering: bool
    multiedge_collapsed: bool


def quotient_graph(graph: Graph, normal: PermGroup) -> QuotientResult:
    """Quotient by the orbits of a vertex group acting by automorphisms."""
    if normal.degree != graph.n:
        raise ValueError("group degree does not match vertex count")
    for g in normal.generators:
        if not graph.is_automorphism(g):
            raise ValueError("group contains a non-automorphism")
    cells = normal.orbits()
    projection = [0] * graph.n
    for idx, cell in enumerate(cells):
        for v in cell:
            projection[v] = idx
    pair_count: dict[tuple[int, int], int] = {}
    for u, v in graph.edges():
        a, b = projection[u], projection[v]
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        pair_count[key] = pair_count.get(key, 0) + 1
    quotient = Graph.from_edges(len(cells), pair_count.keys())
    multi = any(c > 1 for c in pair_count.values())
    covering = all(
        sorted({projection[w] for w in graph.adj[v]}) == list(quotient.adj[projection[v]])
        and len({projection[w] for w in graph.adj[v]}) == len(graph.adj[v])
        for v in range(graph.n))
    return QuotientResult(quotient=quotient, projection=tuple(projection),
                          is_covering=covering, multiedge_collapsed=multi)


def is_covering_projection(cover: Graph, base: Graph,
                           projection: Sequence[int]) -> bool:
    """True iff the map is a graph homomorphism bijective on every neighborhood."""
    if len(projection) != cover.n:
        raise ValueError("projection length does not match cover order")
    if set(projection) != set(range(base.n)):
        raise ValueError("projection is not onto the base vertex set")
    for v in range(cover.n):
        images = [projection[w] for w in cover.adj[v]]
        if len(set(images)) != len(images):
            return False
        if sorted(images) != list(base.adj[projection[v]]):
            return False
    return True

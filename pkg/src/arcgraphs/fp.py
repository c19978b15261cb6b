"""Finitely presented groups: coset enumeration and normal quotient search.

Words are tuples of nonzero integers: +i denotes generator i-1, -i its
inverse.  Internally each signed generator is a column index (2g for the
generator, 2g+1 for its inverse).

Two engines live here:

* `todd_coxeter` - HLT-style coset enumeration with lookahead, used to
  realize finite coset actions of a presentation.

* `low_index_normal_subgroups` - a backtracking search over coset tables
  that are simultaneously forced to carry a left-multiplication action.
  A transitive table admits commuting left columns agreeing with the right
  columns at coset 0 exactly when the point stabilizer is normal, so every
  completed table is the regular action of a quotient group.  Because new
  cosets are only introduced at the first undefined entry in row-major
  order, completed tables are already in standard form and distinct tables
  are distinct kernels: no conjugacy dedup is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceededError
from .perm import PermGroup, Permutation, abelian_invariants

Word = tuple[int, ...]

DEFAULT_MAX_COSETS = 100_000
DEFAULT_NODE_LIMIT = 10_000_000


def _validate_word(word: Sequence[int], ngens: int) -> Word:
    w = tuple(word)
    for a in w:
        if a == 0 or abs(a) > ngens:
            raise ValueError("letter %d out of range for %d generators" % (a, ngens))
    for a, b in zip(w, w[1:]):
        if a == -b:
            raise ValueError("word is not freely reduced")
    return w


@dataclass(frozen=True)
class Presentation:
    """Group presentation <x1..xn | relators>."""

    ngens: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        if self.ngens < 1:
            raise ValueError("need at least one generator")
        rels = tuple(_validate_word(r, self.ngens) for r in self.relators)
        for r in rels:
            if not r:
                raise ValueError("relators must be nonempty")
        object.__setattr__(self, "relators", rels)


def universal_group(valency: int) -> Presentation:
    """The free product C2 * C_valency = <x, y | x^2, y^valency>."""
    if valency < 2:
        raise ValueError("valency must be at least 2")
    return Presentation(2, ((1, 1), (2,) * valency))


def _word_to_cols(word: Word) -> tuple[int, ...]:
    return tuple(2 * (a - 1) if a > 0 else 2 * (-a - 1) + 1 for a in word)


def _inv_col(c: int) -> int:
    return c ^ 1


@dataclass(frozen=True)
class CosetTable:
    """Closed coset table; row 0 is the subgroup coset.

    Columns alternate generator / inverse: row[2g] is the image under
    generator g, row[2g+1] under its inverse.
    """

    ngens: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def index(self) -> int:
        return len(self.rows)

    def generator_permutation(self, gen: int) -> Permutation:
        return Permutation(row[2 * gen] for row in self.rows)

    def action_group(self) -> PermGroup:
        return PermGroup(self.index,
                         [self.generator_permutation(g) for g in range(self.ngens)])

    def trace(self, coset: int, word: Word) -> int:
        for c in _word_to_cols(word):
            coset = self.rows[coset][c]
        return coset

    def standardized(self) -> "CosetTable":
        """Renumber cosets in row-major first-appearance order from coset 0."""
        new_of = {0: 0}
        order = [0]
        i = 0
        ncols = 2 * self.ngens
        while i < len(order):
            old = order[i]
            i += 1
            for c in range(ncols):
                t = self.rows[old][c]
                if t not in new_of:
                    new_of[t] = len(order)
                    order.append(t)
        rows = tuple(tuple(new_of[self.rows[old][c]] for c in range(ncols))
                     for old in order)
        return CosetTable(self.ngens, rows)

    def satisfies(self, pres: Presentation) -> bool:
        """Every relator traces trivially from every coset (test helper)."""
        return all(self.trace(c, r) == c
                   for c in range(self.index) for r in pres.relators)


def coset_action(table: CosetTable) -> PermGroup:
    """Permutation group generated by the generator columns; transitive."""
    group = table.action_group()
    if len(group.orbit(0)) != table.index:
        raise ValueError("coset table action is not transitive")
    return group


# ---------------------------------------------------------------------------
# Todd-Coxeter (HLT with lookahead)
# ---------------------------------------------------------------------------

class _Enumerator:
    def __init__(self, pres: Presentation, max_cosets: int):
        self.ncols = 2 * pres.ngens
        self.rel_cols = [_word_to_cols(r) for r in pres.relators]
        self.max_live = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.p = [0]
        self.dead = 0
        self.queue: list[int] = []

    # union-find with merge-into-smaller so coset 0 survives
    def rep(self, k: int) -> int:
        root = k
        while self.p[root] != root:
            root = self.p[root]
        while self.p[k] != root:
            self.p[k], k = root, self.p[k]
        return root

    @property
    def live(self) -> int:
        return len(self.table) - self.dead

    def define(self, a: int, c: int) -> None:
        if self.live >= self.max_live:
            self.lookahead()
            if self.live >= self.max_live:
                raise BudgetExceededError(
                    "coset enumeration exceeded %d live cosets" % self.max_live)
        b = len(self.table)
        self.table.append([-1] * self.ncols)
        self.p.append(b)
        self.table[a][c] = b
        self.table[b][_inv_col(c)] = a

    def merge(self, a: int, b: int) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.p[b] = a
        self.dead += 1
        self.queue.append(b)

    def process_coincidences(self) -> None:
        while self.queue:
            e = self.queue.pop()
            row = self.table[e]
            for c in range(self.ncols):
                f = row[c]
                if f == -1:
                    continue
                row[c] = -1
                ic = _inv_col(c)
                if self.table[f][ic] == e:
                    self.table[f][ic] = -1
                mu, nu = self.rep(e), self.rep(f)
                if self.table[mu][c] != -1:
                    self.merge(nu, self.table[mu][c])
                elif self.table[nu][ic] != -1:
                    self.merge(mu, self.table[nu][ic])
                else:
                    self.table[mu][c] = nu
                    self.table[nu][ic] = mu

    def scan(self, a: int, cols: Sequence[int], fill: bool) -> None:
        f = self.rep(a)
        i = 0
        m = len(cols)
        while True:
            while i < m and self.table[f][cols[i]] != -1:
                f = self.table[f][cols[i]]
                i += 1
            if i == m:
                if f != a:
                    self.merge(f, a)
                    self.process_coincidences()
                return
            b = self.rep(a)
            j = m
            while j > i and self.table[b][_inv_col(cols[j - 1])] != -1:
                b = self.table[b][_inv_col(cols[j - 1])]
                j -= 1
            if j == i:
                # both scans met with no gap: forced coincidence
                if b != f:
                    self.merge(b, f)
                    self.process_coincidences()
                return
            if j == i + 1:
                self.table[f][cols[i]] = b
                self.table[b][_inv_col(cols[i])] = f
                return
            if not fill:
                return
            self.define(f, cols[i])

    def lookahead(self) -> None:
        for a in range(len(self.table)):
            if self.p[a] != a:
                continue
            for cols in self.rel_cols:
                self.scan(a, cols, fill=False)
                if self.p[a] != a:
                    break

    def run(self, subgroup_cols: list[tuple[int, ...]]) -> CosetTable:
        for cols in subgroup_cols:
            if cols:
                self.scan(0, cols, fill=True)
        a = 0
        while a < len(self.table):
            if self.p[a] != a:
                a += 1
                continue
            for cols in self.rel_cols:
                self.scan(a, cols, fill=True)
                if self.p[a] != a:
                    break
            if self.p[a] == a:
                for c in range(self.ncols):
                    if self.table[a][c] == -1:
                        self.define(a, c)
            a += 1
        live = [k for k in range(len(self.table)) if self.p[k] == k]
        renum = {old: i for i, old in enumerate(live)}
        rows = tuple(tuple(renum[self.rep(self.table[old][c])]
                           for c in range(self.ncols)) for old in live)
        ngens = self.ncols // 2
        return CosetTable(ngens, rows).standardized()


def todd_coxeter(pres: Presentation, subgroup_words: Iterable[Word],
                 max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate cosets of the subgroup generated by the given words.

    Raises BudgetExceededError when the table does not close within
    `max_cosets` live cosets (the usual signal of infinite index).
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    words = [_validate_word(w, pres.ngens) for w in subgroup_words]
    enum = _Enumerator(pres, max_cosets)
    table = enum.run([_word_to_cols(w) for w in words])
    if not table.satisfies(pres):
        raise AssertionError("closed table violates a relator")
    return table


# ---------------------------------------------------------------------------
# low-index normal subgroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalQuotient:
    """A normal subgroup of finite index, as its regular coset table and
    the faithful quotient image on the cosets."""

    table: CosetTable
    group: PermGroup

    @property
    def index(self) -> int:
        return self.table.index


class _NormalSearch:
    """Backtracking over standard-form regular coset tables.

    State per signed column: right entries R and left entries L, both with
    -1 for undefined.  diag/offdiag counters per generator implement the
    dichotomy that in a regular action each generator column is either the
    identity or fixed-point free (on both sides, simultaneously).
    """

    def __init__(self, pres: Presentation, max_index: int, max_nodes: int,
                 forced_nontrivial: Sequence[int] = ()):
        self.ngens = pres.ngens
        self.ncols = 2 * pres.ngens
        self.max_index = max_index
        self.max_nodes = max_nodes
        self.R = [[-1] * max_index for _ in range(self.ncols)]
        self.L = [[-1] * max_index for _ in range(self.ncols)]
        self.diag = [0] * pres.ngens
        self.offdiag = [0] * pres.ngens
        for g in forced_nontrivial:
            self.offdiag[g] += 1
        self.n_live = 1
        self.trail: list[tuple] = []
        self.queue: list[tuple[int, int, int]] = []  # (table 0=R/1=L, col, coset)
        self.nodes = 0
        # rotations of each relator, keyed by leading column
        self.r_rot: list[list[tuple[int, ...]]] = [[] for _ in range(self.ncols)]
        self.l_rot: list[list[tuple[int, ...]]] = [[] for _ in range(self.ncols)]
        for rel in pres.relators:
            cols = _word_to_cols(rel)
            rev = tuple(reversed(cols))
            for t in range(len(cols)):
                rot = cols[t:] + cols[:t]
                if rot not in self.r_rot[rot[0]]:
                    self.r_rot[rot[0]].append(rot)
                lrot = rev[t:] + rev[:t]
                if lrot not in self.l_rot[lrot[0]]:
                    self.l_rot[lrot[0]].append(lrot)

    # -- assignment with trail ------------------------------------------

    def _set(self, which: int, col: int, a: int, b: int) -> bool:
        tab = self.R if which == 0 else self.L
        cur = tab[col][a]
        if cur != -1:
            return cur == b
        g = col >> 1
        if a == b:
            if self.offdiag[g]:
                return False
            self.diag[g] += 1
            self.trail.append((2, g))
        else:
            if self.diag[g]:
                return False
            self.offdiag[g] += 1
            self.trail.append((3, g))
        tab[col][a] = b
        self.trail.append((which, col, a))
        self.queue.append((which, col, a))
        ic = _inv_col(col)
        cur2 = tab[ic][b]
        if cur2 != -1:
            return cur2 == a
        if a != b:
            # same diagonality, counter already bumped once per logical edge
            if self.diag[g]:
                return False
            self.offdiag[g] += 1
            self.trail.append((3, g))
        else:
            if self.offdiag[g]:
                return False
            self.diag[g] += 1
            self.trail.append((2, g))
        tab[ic][b] = a
        self.trail.append((which, ic, b))
        self.queue.append((which, ic, b))
        return True

    def _undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            op = self.trail.pop()
            kind = op[0]
            if kind == 0:
                self.R[op[1]][op[2]] = -1
            elif kind == 1:
                self.L[op[1]][op[2]] = -1
            elif kind == 2:
                self.diag[op[1]] -= 1
            elif kind == 3:
                self.offdiag[op[1]] -= 1
            else:
                self.n_live -= 1

    # -- propagation -----------------------------------------------------

    def _scan(self, which: int, cols: tuple[int, ...], start: int) -> bool:
        tab = self.R if which == 0 else self.L
        cur = start
        i = 0
        m = len(cols)
        while i < m:
            nxt = tab[cols[i]][cur]
            if nxt == -1:
                break
            cur = nxt
            i += 1
        if i == m:
            return cur == start
        back = start
        j = m
        while j > i + 1:
            prev = tab[_inv_col(cols[j - 1])][back]
            if prev == -1:
                break
            back = prev
            j -= 1
        if j == i + 1:
            return self._set(which, cols[i], cur, back)
        return True

    def _propagate(self) -> bool:
        while self.queue:
            which, col, a = self.queue.pop()
            tab = self.R if which == 0 else self.L
            b = tab[col][a]
            if b == -1:
                continue
            rots = (self.r_rot if which == 0 else self.l_rot)[col]
            for rot in rots:
                if not self._scan(which, rot, a):
                    return False
            if which == 0:
                if a == 0 and not self._set(1, col, 0, b):
                    return False
                # commute with every known left edge at a:
                # L[g][R[col][a]] == R[col][L[g][a]]
                for gc in range(self.ncols):
                    lam = self.L[gc][a]
                    if lam == -1:
                        continue
                    x = self.R[col][lam]
                    if x != -1:
                        if not self._set(1, gc, b, x):
                            return False
                    else:
                        y = self.L[gc][b]
                        if y != -1 and not self._set(0, col, lam, y):
                            return False
            else:
                if a == 0 and not self._set(0, col, 0, b):
                    return False
                lam = b
                for sc in range(self.ncols):
                    c = self.R[sc][a]
                    if c == -1:
                        continue
                    x = self.R[sc][lam]
                    if x != -1:
                        if not self._set(1, col, c, x):
                            return False
                    else:
                        y = self.L[col][c]
                        if y != -1 and not self._set(0, sc, lam, y):
                            return False
        return True

    # -- search ----------------------------------------------------------

    def _next_undefined(self, pos: int) -> int | None:
        ncols = self.ncols
        total = self.n_live * ncols
        while pos < total:
            a, c = divmod(pos, ncols)
            if self.R[c][a] == -1:
                return pos
            pos += 1
        return None

    def _candidates(self, pos: int) -> list[int]:
        a, c = divmod(pos, self.ncols)
        g = c >> 1
        ic = _inv_col(c)
        if self.diag[g]:
            return [a] if self.R[ic][a] == -1 else []
        cands = [b for b in range(self.n_live)
                 if self.R[ic][b] == -1 and (b != a or not self.offdiag[g])]
        if self.n_live < self.max_index:
            cands.append(self.n_live)
        return cands

    def run(self) -> list[tuple[tuple[tuple[int, ...], ...], PermGroup]]:
        results = []
        first = self._next_undefined(0)
        if first is None:
            raise AssertionError("empty table cannot be closed")
        frames: list[list] = [[first, self._candidates(first), 0, len(self.trail)]]
        while frames:
            pos, cands, ci, mark = frames[-1]
            self.queue.clear()
            self._undo_to(mark)
            if ci >= len(cands):
                frames.pop()
                continue
            frames[-1][2] += 1
            self.nodes += 1
            if self.nodes > self.max_nodes:
                raise BudgetExceededError(
                    "normal subgroup search exceeded %d nodes" % self.max_nodes)
            b = cands[ci]
            a, c = divmod(pos, self.ncols)
            if b == self.n_live:
                self.n_live += 1
                self.trail.append((4,))
            if not (self._set(0, c, a, b) and self._propagate()):
                continue
            nxt = self._next_undefined(pos + 1)
            if nxt is None:
                results.append(self._snapshot())
                continue
            frames.append([nxt, self._candidates(nxt), 0, len(self.trail)])
        return results

    def _snapshot(self) -> tuple[tuple[tuple[int, ...], ...], PermGroup]:
        n = self.n_live
        rows = tuple(tuple(self.R[c][a] for c in range(self.ncols))
                     for a in range(n))
        gens = [Permutation(self.R[2 * g][:n]) for g in range(self.ngens)]
        group = PermGroup(n, gens)
        if group.order() != n:
            raise AssertionError("completed table is not a regular action")
        return rows, group


def low_index_normal_subgroups(pres: Presentation, max_index: int,
                               max_nodes: int = DEFAULT_NODE_LIMIT,
                               forced_nontrivial: Sequence[int] = ()
                               ) -> list[NormalQuotient]:
    """All normal subgroups of index <= max_index, each exactly once.

    Results are sorted by index, then by table contents, so the output
    order is deterministic.  `forced_nontrivial` lists generator numbers
    (0-based) whose image is required to be nontrivial, which prunes the
    search; it does not change which tables are valid, only which are kept.
    """
    if max_index < 1:
        raise ValueError("max_index must be positive")
    search = _NormalSearch(pres, max_index, max_nodes, forced_nontrivial)
    raw = search.run()
    raw.sort(key=lambda item: (len(item[0]), item[0]))
    out = []
    for rows, group in raw:
        table = CosetTable(pres.ngens, rows)
        if not table.satisfies(pres):
            raise AssertionError("search produced an invalid table")
        out.append(NormalQuotient(table=table, group=group))
    return out


# ---------------------------------------------------------------------------
# arc-regular quotients of C2 * C_d
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MarkedGroup:
    """A finite group with a distinguished involution and order-d rotation.

    These are the quotients of C2 * C_d acting arc-regularly on a graph of
    order `base_order` and valency `valency`; the group is the faithful
    regular image, `involution` and `rotation` the images of the free
    factors.  `degenerate` marks the two-vertex case, whose base "graph"
    is the multigraph dipole.
    """

    group: PermGroup
    involution: Permutation
    rotation: Permutation
    base_order: int
    valency: int
    degenerate: bool = False

    def __post_init__(self):
        if self.involution.order() != 2:
            raise ValueError("marked involution must have order 2")
        if self.rotation.order() != self.valency:
            raise ValueError("marked rotation must have order equal to valency")
        if self.group.order() != self.base_order * self.valency:
            raise ValueError("group order must be base_order * valency")


def enumerate_arc_regular_quotients(base_order: int, valency: int = 3,
                                    max_nodes: int = DEFAULT_NODE_LIMIT
                                    ) -> list[MarkedGroup]:
    """All quotients of C2 * C_d of order base_order * d in which the two
    free factors map to elements of orders exactly 2 and d.

    Each kernel appears once.  The two-vertex quotients are kept but
    flagged degenerate (their base graph is the cubic dipole, a multigraph).
    """
    if base_order < 1:
        raise ValueError("base_order must be positive")
    if valency < 3:
        raise ValueError("valency must be at least 3")
    target = base_order * valency
    if target % 2:
        return []  # an element of order 2 needs even group order
    pres = universal_group(valency)
    found = low_index_normal_subgroups(pres, target, max_nodes,
                                       forced_nontrivial=(0, 1))
    out = []
    for nq in found:
        if nq.table.index != target:
            continue
        a = nq.table.generator_permutation(0)
        h = nq.table.generator_permutation(1)
        if a.order() != 2 or h.order() != valency:
            continue
        out.append(MarkedGroup(group=nq.group, involution=a, rotation=h,
                               base_order=base_order, valency=valency,
                               degenerate=base_order == 2))
    return out


def feasibility(base_order: int, max_nodes: int = DEFAULT_NODE_LIMIT
                ) -> tuple[bool, list[MarkedGroup]]:
    """Whether symmetric cubic graphs of order base_order * p exist for all
    large primes p = 1 mod 6: true iff some cubic arc-regular quotient group
    has abelianization C6.

    Odd base orders are rejected without search (3 * base_order is then odd,
    so no quotient has an element of order 2, let alone a C6 image).
    """
    if base_order < 1:
        raise ValueError("base_order must be positive")
    if base_order % 2:
        return False, []
    witnesses = [m for m in enumerate_arc_regular_quotients(base_order, 3, max_nodes)
                 if abelian_invariants(m.group) == [6]]
    return bool(witnesses), witnesses

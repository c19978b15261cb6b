"""Permutations and finite permutation groups on dense 0-based points.

Groups carry a deterministically built stabilizer chain (base points chosen
in increasing point order, generators processed in listed order), so orders,
membership tests and element enumeration are reproducible across runs.

All objects are immutable after construction.  The chain is an internal memo:
building it twice from concurrent readers produces identical results, so no
locking is needed.  Exhaustive element enumeration is only permitted below a
configurable cap (default 10**4 elements); operations that would need it on
larger groups raise :class:`BudgetExceededError`.
"""

from __future__ import annotations

import math
from typing import Iterable, Protocol, Sequence, runtime_checkable

from .errors import BudgetExceededError, SubgroupError

DEFAULT_ELEMENT_CAP = 10_000


class Permutation:
    """A bijection of {0, ..., degree-1}.

    Composition applies the left factor first: ``x^(p*q) == (x^p)^q``.
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError("images are not a bijection of 0..n-1")
        self.images = imgs

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other.images) != len(self.images):
            raise ValueError("degree mismatch")
        oth = other.images
        p = Permutation.__new__(Permutation)
        p.images = tuple(oth[i] for i in self.images)
        return p

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        p = Permutation.__new__(Permutation)
        p.images = tuple(inv)
        return p

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each rotated to start at its minimum, sorted."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()), 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "Permutation.identity(%d)" % self.degree
        body = "".join("(%s)" % " ".join(map(str, c)) for c in cycs)
        return "Perm[%d]%s" % (self.degree, body)


class _ChainLevel:
    """One level of a stabilizer chain.

    `gens` is the full acting generator set of the level group (all strong
    generators fixing the base points of the shallower levels).
    """

    __slots__ = ("base", "gens", "tree", "orbit_order")

    def __init__(self, base: int, gens: Sequence[Permutation] = ()):
        self.base = base
        self.gens: list[Permutation] = list(gens)
        self.tree: dict[int, tuple[int, int] | None] = {base: None}
        self.orbit_order: list[int] = [base]

    def rebuild_orbit(self) -> None:
        self.tree = {self.base: None}
        self.orbit_order = [self.base]
        i = 0
        while i < len(self.orbit_order):
            pt = self.orbit_order[i]
            i += 1
            for gi, g in enumerate(self.gens):
                img = g.images[pt]
                if img not in self.tree:
                    self.tree[img] = (pt, gi)
                    self.orbit_order.append(img)

    def transversal(self, point: int) -> Permutation | None:
        """Element u with base^u == point (None encodes the identity)."""
        path = []
        while True:
            edge = self.tree[point]
            if edge is None:
                break
            parent, gi = edge
            path.append(gi)
            point = parent
        u = None
        for gi in reversed(path):
            g = self.gens[gi]
            u = g if u is None else u * g
        return u


def _sift(levels: list[_ChainLevel], p: Permutation) -> Permutation:
    for lvl in levels:
        beta = p.images[lvl.base]
        if beta == lvl.base:
            continue
        if beta not in lvl.tree:
            return p
        u = lvl.transversal(beta)
        if u is not None:
            p = p * u.inverse()
    return p


def _build_chain(degree: int, generators: Sequence[Permutation],
                 base_prefix: Sequence[int] = ()) -> list[_ChainLevel]:
    """Deterministic Schreier-Sims: iterate to a global fixpoint.

    Whenever some Schreier generator fails to sift to the identity, its
    residue joins the strong generating set and the whole chain is rebuilt.
    Simple rather than fast; large automorphism groups seed their chain
    directly instead of going through this builder.
    """
    strong: list[Permutation] = []
    for g in generators:
        if not g.is_identity and g not in strong:
            strong.append(g)

    while True:
        bases = list(base_prefix)
        for g in strong:
            if all(g.images[b] == b for b in bases):
                bases.append(next(pt for pt in range(degree) if g.images[pt] != pt))
        levels = []
        for i, b in enumerate(bases):
            prefix = bases[:i]
            acting = [g for g in strong
                      if all(g.images[q] == q for q in prefix)]
            lvl = _ChainLevel(b, acting)
            lvl.rebuild_orbit()
            levels.append(lvl)

        new_residue = None
        for i, lvl in enumerate(levels):
            for pt in lvl.orbit_order:
                u = lvl.transversal(pt)
                for s in lvl.gens:
                    img = s.images[pt]
                    v = lvl.transversal(img)
                    sg = s if u is None else u * s
                    if v is not None:
                        sg = sg * v.inverse()
                    if sg.is_identity:
                        continue
                    resid = _sift(levels[i + 1:], sg)
                    if not resid.is_identity:
                        new_residue = resid
                        break
                if new_residue is not None:
                    break
            if new_residue is not None:
                break
        if new_residue is None:
            return levels
        strong.append(new_residue)


class PermGroup:
    """Finite permutation group given by generators, with a stabilizer chain."""

    __slots__ = ("degree", "generators", "_chain")

    def __init__(self, degree: int, generators: Iterable[Permutation] = (),
                 _chain: list[_ChainLevel] | None = None):
        gens = []
        for g in generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
            if not g.is_identity and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self._chain = _chain

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree)

    def _levels(self) -> list[_ChainLevel]:
        if self._chain is None:
            self._chain = _build_chain(self.degree, self.generators)
        return self._chain

    def order(self) -> int:
        n = 1
        for lvl in self._levels():
            n *= len(lvl.tree)
        return n

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        return _sift(self._levels(), p).is_identity

    @property
    def is_trivial(self) -> bool:
        return self.order() == 1

    def elements(self, cap: int | None = None) -> list[Permutation]:
        """All elements, in deterministic chain order.

        Raises BudgetExceededError when the order exceeds the cap
        (default DEFAULT_ELEMENT_CAP).
        """
        limit = DEFAULT_ELEMENT_CAP if cap is None else cap
        if self.order() > limit:
            raise BudgetExceededError(
                "group order %d exceeds element cap %d" % (self.order(), limit))
        elems = [Permutation.identity(self.degree)]
        for lvl in reversed(self._levels()):
            new = []
            for h in elems:
                for pt in lvl.orbit_order:
                    u = lvl.transversal(pt)
                    new.append(h if u is None else h * u)
            elems = new
        return elems

    def orbit(self, point: int) -> tuple[int, ...]:
        if not 0 <= point < self.degree:
            raise ValueError("point out of range")
        seen = {point}
        queue = [point]
        while queue:
            pt = queue.pop()
            for g in self.generators:
                img = g.images[pt]
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
        return tuple(sorted(seen))

    def orbits(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.degree
        cells = []
        for pt in range(self.degree):
            if seen[pt]:
                continue
            cell = self.orbit(pt)
            for q in cell:
                seen[q] = True
            cells.append(cell)
        return tuple(cells)

    def is_transitive(self) -> bool:
        return self.degree > 0 and len(self.orbit(0)) == self.degree

    def stabilizer(self, point: int) -> "PermGroup":
        """Pointwise stabilizer of one point, as a new group."""
        if not 0 <= point < self.degree:
            raise ValueError("point out of range")
        if all(g.images[point] == point for g in self.generators):
            return PermGroup(self.degree, self.generators)
        if self._chain and self._chain[0].base == point:
            gens = self._chain[1].gens if len(self._chain) > 1 else []
            return PermGroup(self.degree, gens, _chain=self._chain[1:] or None)
        levels = _build_chain(self.degree, self.generators, base_prefix=(point,))
        gens = levels[1].gens if len(levels) > 1 else []
        return PermGroup(self.degree, gens)

    def __repr__(self) -> str:
        return "PermGroup(degree=%d, ngens=%d)" % (self.degree, len(self.generators))


def group_order(group: PermGroup) -> int:
    """Order of the generated group (product of fundamental orbit lengths)."""
    return group.order()


def orbits(group: PermGroup) -> tuple[tuple[int, ...], ...]:
    """Orbit partition of the points, cells sorted by minimum element."""
    return group.orbits()


def point_stabilizer(group: PermGroup, point: int) -> PermGroup:
    """Subgroup fixing the given point."""
    return group.stabilizer(point)


def is_semiregular(group: PermGroup) -> bool:
    """True iff every point stabilizer is trivial."""
    order = group.order()
    return all(len(group.orbit(pt)) == order for pt in range(group.degree))


def normal_closure(group: PermGroup, elements: Iterable[Permutation]) -> PermGroup:
    """Smallest normal subgroup of `group` containing the given elements."""
    elems = list(elements)
    for e in elems:
        if not group.contains(e):
            raise SubgroupError("element not in group")
    gens = [e for e in elems if not e.is_identity]
    closure = PermGroup(group.degree, gens)
    while True:
        new = []
        for h in closure.generators:
            for g in group.generators:
                c = g.inverse() * h * g
                if not closure.contains(c):
                    new.append(c)
        if not new:
            return closure
        gens = list(closure.generators) + new
        closure = PermGroup(group.degree, gens)


def derived_subgroup(group: PermGroup) -> PermGroup:
    """Commutator subgroup, as the normal closure of generator commutators."""
    comms = []
    for a in group.generators:
        for b in group.generators:
            c = a.inverse() * b.inverse() * a * b
            if not c.is_identity:
                comms.append(c)
    return normal_closure(group, comms)


def _conjugacy_class_reps(group: PermGroup, cap: int | None = None) -> list[Permutation]:
    """One representative per conjugacy class, by exhaustive conjugation."""
    elems = group.elements(cap)
    elem_set = set(elems)
    reps = []
    assigned: set[Permutation] = set()
    gens = group.generators
    for e in sorted(elems, key=lambda p: p.images):
        if e in assigned:
            continue
        reps.append(e)
        cls = {e}
        queue = [e]
        while queue:
            x = queue.pop()
            for g in gens:
                y = g.inverse() * x * g
                if y not in cls:
                    cls.add(y)
                    queue.append(y)
        assigned |= cls
        if assigned == elem_set:
            break
    return reps


def is_quasiprimitive(group: PermGroup, cap: int | None = None) -> bool:
    """True iff every nontrivial normal subgroup is transitive.

    Uses the criterion that any nontrivial normal subgroup contains the
    normal closure of each of its nonidentity elements, so it is enough to
    test normal closures of conjugacy class representatives.
    """
    if not group.is_transitive():
        raise ValueError("quasiprimitivity is only defined for transitive groups")
    for rep in _conjugacy_class_reps(group, cap):
        if rep.is_identity:
            continue
        if not normal_closure(group, [rep]).is_transitive():
            return False
    return True


def _valuation(n: int, q: int) -> int:
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def _prime_factors(n: int) -> list[int]:
    primes = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            primes.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        primes.append(n)
    return primes


def _invariant_factors(order: int, element_orders: Sequence[int]) -> list[int]:
    """Invariant factors of an abelian group from its element order statistics.

    For each prime q, counting elements of order dividing q^i recovers the
    exponent partition of the Sylow q-subgroup; aligning the partitions
    largest-first gives the invariant factor chain.
    """
    if order == 1:
        return []
    partitions: dict[int, list[int]] = {}
    for q in _prime_factors(order):
        sylow_size = q ** _valuation(order, q)
        counts = [1]
        while counts[-1] != sylow_size:
            qi = q ** len(counts)
            counts.append(sum(1 for e in element_orders if qi % e == 0))
        # at_least[j-1] = number of cyclic factors with exponent >= j
        at_least = [_valuation(counts[j] // counts[j - 1], q)
                    for j in range(1, len(counts))]
        mult = []
        for j in range(len(at_least), 0, -1):
            nxt = at_least[j] if j < len(at_least) else 0
            mult.extend([j] * (at_least[j - 1] - nxt))
        partitions[q] = sorted(mult, reverse=True)
    width = max(len(v) for v in partitions.values())
    factors = []
    for t in range(width):
        d = 1
        for q, parts in partitions.items():
            if t < len(parts):
                d *= q ** parts[t]
        factors.append(d)
    return sorted(factors)


def abelian_invariants(group: PermGroup, cap: int | None = None) -> list[int]:
    """Invariant factors d1 | d2 | ... of the abelianization G/[G,G]."""
    derived = derived_subgroup(group)
    order = group.order()
    quot = order // derived.order()
    if quot == 1:
        return []
    limit = DEFAULT_ELEMENT_CAP if cap is None else cap
    if quot > limit:
        raise BudgetExceededError("abelianization of order %d exceeds cap" % quot)
    # enumerate coset representatives of [G,G] by closing under generators
    reps: list[Permutation] = [Permutation.identity(group.degree)]
    frontier = [reps[0]]
    while frontier and len(reps) < quot:
        nxt = []
        for r in frontier:
            for g in group.generators:
                cand = r * g
                if not any(derived.contains(cand * s.inverse()) for s in reps):
                    reps.append(cand)
                    nxt.append(cand)
                    if len(reps) == quot:
                        break
            if len(reps) == quot:
                break
        frontier = nxt
    coset_orders = []
    for r in reps:
        e = 1
        power = r
        while not derived.contains(power):
            power = power * r
            e += 1
        coset_orders.append(e)
    return _invariant_factors(quot, coset_orders)


@runtime_checkable
class FiniteGroupOracle(Protocol):
    """Uniform multiplication-table view of a finite group.

    Elements are indices 0..order-1.  `generators` lists indices of a
    generating set; implementations may expose more structure.
    """

    order: int
    identity: int
    generators: Sequence[int]

    def multiply(self, i: int, j: int) -> int: ...

    def inverse(self, i: int) -> int: ...


class RegularOracle:
    """FiniteGroupOracle backed by explicit enumeration of a PermGroup."""

    __slots__ = ("group", "elements", "order", "identity", "generators", "_index")

    def __init__(self, group: PermGroup, cap: int | None = None):
        self.group = group
        self.elements = sorted(group.elements(cap), key=lambda p: p.images)
        self.order = len(self.elements)
        self._index = {p.images: i for i, p in enumerate(self.elements)}
        self.identity = self._index[tuple(range(group.degree))]
        gens = []
        for g in group.generators:
            gi = self._index[g.images]
            if gi not in gens:
                gens.append(gi)
        self.generators = tuple(gens) if gens else (self.identity,)

    def multiply(self, i: int, j: int) -> int:
        return self._index[(self.elements[i] * self.elements[j]).images]

    def inverse(self, i: int) -> int:
        return self._index[self.elements[i].inverse().images]

    def label(self, i: int) -> str:
        return repr(self.elements[i])


def oracle_element_order(oracle: FiniteGroupOracle, i: int) -> int:
    n = 1
    x = i
    while x != oracle.identity:
        x = oracle.multiply(x, i)
        n += 1
    return n


def check_group_axioms(oracle: FiniteGroupOracle, triple_limit: int = 10 ** 7,
                       rng_samples: int = 10_000) -> None:
    """Verify identity, inverses, closure; associativity exhaustively when
    order**3 <= triple_limit, otherwise on a deterministic sample of triples.

    Raises AssertionError on violation (test helper).
    """
    m = oracle.order
    e = oracle.identity
    for i in range(m):
        assert oracle.multiply(e, i) == i and oracle.multiply(i, e) == i
        inv = oracle.inverse(i)
        assert 0 <= inv < m
        assert oracle.multiply(i, inv) == e and oracle.multiply(inv, i) == e
    for i in range(m):
        for j in range(m):
            assert 0 <= oracle.multiply(i, j) < m
    if m ** 3 <= triple_limit:
        triples = ((i, j, k) for i in range(m) for j in range(m) for k in range(m))
    else:
        state = 0x2545F4914F6CDD1D
        picks = []
        for _ in range(rng_samples):
            state = (state * 6364136223846793005 + 1442695040888963407) % 2 ** 64
            picks.append((state % m, (state >> 20) % m, (state >> 40) % m))
        triples = iter(picks)
    for i, j, k in triples:
        assert oracle.multiply(oracle.multiply(i, j), k) == \
            oracle.multiply(i, oracle.multiply(j, k))

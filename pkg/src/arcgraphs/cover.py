"""Cyclic regular covers of arc-regular base graphs.

Given a marked base group (involution `a`, rotation `h` of odd prime order
d, abelianization C_2d) and a prime p = 1 mod 2d, the group extends to
C_p x| Gbar where a inverts and h raises the normal generator z to a chosen
d-th root of unity mod p.  The coset graph of <z*h> with swap element `a`
is then a connected arc-regular graph of order base_order * p covering the
base graph.  Different roots can give isomorphic covers exactly when the
base group has an automorphism inverting both marked generators; covers
are deduplicated by canonical form, never by that shortcut, so the
shortcut stays testable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (AbelianizationMismatchError, CharacterConflictError,
                     InvalidRootError)
from .perm import (PermGroup, RegularOracle, abelian_invariants,
                   is_semiregular)
from .graphs import (CosetGraphResult, Graph, coset_graph, quotient_graph)
from .fp import MarkedGroup
from .analyze import canonical_form


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    q = 2
    while q * q <= n:
        if n % q == 0:
            return False
        q += 1
    return True


def multiplicative_order(residue: int, modulus: int) -> int:
    if residue % modulus == 0:
        raise ValueError("residue not a unit")
    n = 1
    x = residue % modulus
    while x != 1:
        x = (x * residue) % modulus
        n += 1
    return n


def root_candidates(prime: int, valency: int) -> list[int]:
    """Residues of multiplicative order exactly `valency` mod prime, ascending."""
    return [r for r in range(2, prime)
            if multiplicative_order(r, prime) == valency]


_oracle_cache: dict[tuple, RegularOracle] = {}


def _base_oracle(base: MarkedGroup) -> RegularOracle:
    key = (base.group.degree, base.group.generators,
           base.involution, base.rotation)
    oracle = _oracle_cache.get(key)
    if oracle is None:
        oracle = RegularOracle(base.group)
        _oracle_cache[key] = oracle
    return oracle


@dataclass(frozen=True)
class CoverSpec:
    """Data for one cover: marked base group, prime, and root of unity."""

    base: MarkedGroup
    prime: int
    root: int

    def __post_init__(self):
        d = self.base.valency
        if d % 2 == 0 or not is_prime(d):
            raise ValueError("valency must be an odd prime, got %d" % d)
        if not is_prime(self.prime):
            raise ValueError("%d is not prime" % self.prime)
        if (self.base.base_order * d) % self.prime == 0:
            raise ValueError("prime divides the base group order")
        if self.prime % (2 * d) != 1:
            raise ValueError("prime must be 1 mod %d" % (2 * d))
        if not 1 <= self.root < self.prime:
            raise InvalidRootError("root out of range")
        if multiplicative_order(self.root, self.prime) != d:
            raise InvalidRootError(
                "%d has order %d mod %d, expected %d"
                % (self.root, multiplicative_order(self.root, self.prime),
                   self.prime, d))


@dataclass(frozen=True)
class Character:
    """Multiplicative character of the base group into the units mod p,
    indexed by base-oracle element number."""

    prime: int
    values: tuple[int, ...]

    def __call__(self, element: int) -> int:
        return self.values[element]


def conjugation_character(base: MarkedGroup, prime: int, root: int) -> Character:
    """The unique homomorphism Gbar -> units mod p sending the marked
    involution to -1 and the marked rotation to the chosen root.

    Built by propagation over the Cayley graph on the marked generators;
    any conflict at a revisited element signals a precondition violation.
    """
    d = base.valency
    if multiplicative_order(root, prime) != d:
        raise InvalidRootError("%d is not a primitive %d-th root mod %d"
                               % (root, d, prime))
    invariants = abelian_invariants(base.group)
    if invariants != [2 * d]:
        raise AbelianizationMismatchError(
            "base abelianization %s, expected [%d]" % (invariants, 2 * d))
    oracle = _base_oracle(base)
    a_idx = oracle._index[base.involution.images]
    h_idx = oracle._index[base.rotation.images]
    gen_values = {a_idx: prime - 1, h_idx: root % prime}
    values = [0] * oracle.order
    values[oracle.identity] = 1
    frontier = [oracle.identity]
    seenc = 1
    while frontier:
        nxt = []
        for g in frontier:
            for s, val in gen_values.items():
                t = oracle.multiply(g, s)
                w = (values[g] * val) % prime
                if values[t] == 0:
                    values[t] = w
                    nxt.append(t)
                    seenc += 1
                elif values[t] != w:
                    raise CharacterConflictError(
                        "character propagation conflict at element %d" % t)
        frontier = nxt
    if seenc != oracle.order:
        raise CharacterConflictError("marked generators do not generate")
    # every Cayley edge consistent => multiplicative on the whole group
    for g in range(oracle.order):
        for s, val in gen_values.items():
            if values[oracle.multiply(g, s)] != (values[g] * val) % prime:
                raise CharacterConflictError("character not multiplicative")
    return Character(prime=prime, values=tuple(values))


class SemidirectGroup:
    """C_p x| Gbar with conjugation given by a character: the pair (e, g)
    stands for z^e * g and (e1,g1)(e2,g2) = (e1 + e2/chi(g1), g1*g2).

    Element index = g_index * p + e.  Implements FiniteGroupOracle; the
    generating pair is the lifted involution (0, a) and the lifted rotation
    z*h = (1, h).
    """

    __slots__ = ("base", "oracle", "prime", "chi", "chi_inv", "order",
                 "identity", "generators", "_a_idx", "_h_idx")

    def __init__(self, base: MarkedGroup, prime: int, chi: Character):
        self.base = base
        self.oracle = _base_oracle(base)
        self.prime = prime
        self.chi = chi.values
        self.chi_inv = tuple(pow(v, -1, prime) for v in chi.values)
        self.order = prime * self.oracle.order
        self.identity = self.oracle.identity * prime
        self._a_idx = self.oracle._index[base.involution.images]
        self._h_idx = self.oracle._index[base.rotation.images]
        self.generators = (self.encode(0, self._a_idx), self.encode(1, self._h_idx))

    def encode(self, shift: int, g: int) -> int:
        return g * self.prime + (shift % self.prime)

    def decode(self, i: int) -> tuple[int, int]:
        g, e = divmod(i, self.prime)
        return e, g

    @property
    def normal_gen(self) -> int:
        """The generator z of the normal C_p, i.e. the pair (1, identity)."""
        return self.encode(1, self.oracle.identity)

    @property
    def lifted_involution(self) -> int:
        return self.encode(0, self._a_idx)

    @property
    def lifted_rotation(self) -> int:
        """The element z*h whose cyclic group is the cover's vertex subgroup."""
        return self.encode(1, self._h_idx)

    def multiply(self, i: int, j: int) -> int:
        g1, e1 = divmod(i, self.prime)
        g2, e2 = divmod(j, self.prime)
        return self.oracle.multiply(g1, g2) * self.prime + \
            (e1 + e2 * self.chi_inv[g1]) % self.prime

    def inverse(self, i: int) -> int:
        g, e = divmod(i, self.prime)
        return self.oracle.inverse(g) * self.prime + \
            (-e * self.chi[g]) % self.prime

    def label(self, i: int) -> str:
        e, g = self.decode(i)
        return "z^%d*%s" % (e, self.oracle.label(g))


def build_semidirect(spec: CoverSpec) -> SemidirectGroup:
    """The extension C_p x| Gbar for the given spec, with the conjugation
    identities z^a = z^-1 and z^h = z^root verified on the result."""
    chi = conjugation_character(spec.base, spec.prime, spec.root)
    group = SemidirectGroup(spec.base, spec.prime, chi)
    z = group.normal_gen
    a = group.lifted_involution
    h = group.encode(0, group._h_idx)
    conj_a = group.multiply(group.multiply(group.inverse(a), z), a)
    conj_h = group.multiply(group.multiply(group.inverse(h), z), h)
    if conj_a != group.encode(-1, group.oracle.identity):
        raise AssertionError("involution does not invert the normal generator")
    if conj_h != group.encode(spec.root, group.oracle.identity):
        raise AssertionError("rotation conjugation disagrees with the root")
    return group


@dataclass(frozen=True)
class CoverBuild:
    """A built cover with the data needed for structural checks."""

    spec: CoverSpec
    group: SemidirectGroup
    graph: Graph
    coset: CosetGraphResult

    @property
    def action(self) -> PermGroup:
        return self.coset.action

    def sylow_p_group(self) -> PermGroup:
        """The vertex action of the normal C_p."""
        return PermGroup(self.graph.n,
                         [self.coset.vertex_permutation(self.group.normal_gen)])


def build_cover_data(spec: CoverSpec) -> CoverBuild:
    group = build_semidirect(spec)
    subgroup = [group.identity]
    x = group.lifted_rotation
    while x != group.identity:
        subgroup.append(x)
        x = group.multiply(x, group.lifted_rotation)
    if len(subgroup) != spec.base.valency:
        raise AssertionError("lifted rotation has wrong order")
    coset = coset_graph(group, subgroup, group.lifted_involution)
    graph = coset.graph
    d = spec.base.valency
    k, p = spec.base.base_order, spec.prime
    if graph.n != k * p or graph.regular_degree() != d or not graph.is_connected():
        raise AssertionError("cover postconditions violated")
    build = CoverBuild(spec=spec, group=group, graph=graph, coset=coset)
    if k >= 3:
        quot = quotient_graph(graph, build.sylow_p_group())
        if not quot.is_covering:
            raise AssertionError("projection onto the base is not a covering")
    return build


def build_cover(spec: CoverSpec) -> Graph:
    """Connected arc-regular graph of order base_order * prime and the
    base's valency, covering the base graph when it has >= 3 vertices."""
    return build_cover_data(spec).graph


def base_graph(base: MarkedGroup) -> Graph:
    """Coset graph of the marked rotation subgroup in the base group.

    Raises MultiedgeError for the degenerate two-vertex (dipole) base.
    """
    oracle = _base_oracle(base)
    h_idx = oracle._index[base.rotation.images]
    a_idx = oracle._index[base.involution.images]
    subgroup = [oracle.identity]
    x = h_idx
    while x != oracle.identity:
        subgroup.append(x)
        x = oracle.multiply(x, h_idx)
    return coset_graph(oracle, subgroup, a_idx).graph


def covers_for_base(base: MarkedGroup, prime: int) -> list[tuple[int, Graph]]:
    """All (root, cover) pairs for one base, in increasing root order."""
    return [(root, build_cover(CoverSpec(base=base, prime=prime, root=root)))
            for root in root_candidates(prime, base.valency)]


def dedupe_by_isomorphism(graphs: Sequence[Graph]) -> list[Graph]:
    """Keep one representative per isomorphism class, canonically sorted."""
    by_cert: dict[bytes, Graph] = {}
    for g in graphs:
        cert = canonical_form(g).certificate
        by_cert.setdefault(cert, g)
    return [by_cert[c] for c in sorted(by_cert, key=lambda c: (len(c), c))]


def enumerate_covers(base_order: int, prime: int,
                     max_nodes: int | None = None) -> list[Graph]:
    """All pairwise non-isomorphic cyclic-cover graphs of order
    base_order * prime over the feasible cubic bases.

    Empty exactly when no base group qualifies.  Requires prime = 1 mod 6
    and prime coprime to 3 * base_order.
    """
    from .fp import DEFAULT_NODE_LIMIT, feasibility
    if not is_prime(prime):
        raise ValueError("%d is not prime" % prime)
    if prime % 6 != 1:
        raise ValueError("prime must be 1 mod 6")
    if (3 * base_order) % prime == 0:
        raise ValueError("prime must not divide 3 * base_order")
    nodes = DEFAULT_NODE_LIMIT if max_nodes is None else max_nodes
    _, witnesses = feasibility(base_order, nodes)
    graphs = [g for base in witnesses for _, g in covers_for_base(base, prime)]
    return dedupe_by_isomorphism(graphs)


def has_inverting_automorphism(base: MarkedGroup) -> bool:
    """Whether some automorphism of the base group inverts both marked
    generators; exactly then the root and its inverse give isomorphic covers.

    The assignment a -> a^-1, h -> h^-1 extends to an endomorphism iff the
    propagated images over the Cayley graph are conflict-free, and any
    endomorphism hitting both generator inverses is onto, hence bijective.
    """
    oracle = _base_oracle(base)
    a_idx = oracle._index[base.involution.images]
    h_idx = oracle._index[base.rotation.images]
    targets = {a_idx: oracle.inverse(a_idx), h_idx: oracle.inverse(h_idx)}
    images = [-1] * oracle.order
    images[oracle.identity] = oracle.identity
    frontier = [oracle.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s, s_img in targets.items():
                t = oracle.multiply(g, s)
                w = oracle.multiply(images[g], s_img)
                if images[t] == -1:
                    images[t] = w
                    nxt.append(t)
                elif images[t] != w:
                    return False
        frontier = nxt
    for g in range(oracle.order):
        for s, s_img in targets.items():
            if images[oracle.multiply(g, s)] != oracle.multiply(images[g], s_img):
                return False
    return len(set(images)) == oracle.order


@dataclass(frozen=True)
class StructureReport:
    """Computed structural facts for one cover; all booleans must hold."""

    sylow_p_normal: bool
    sylow_p_semiregular: bool
    abelianization: tuple[int, ...]
    p_mod_2d: int
    centralizer_complement_order: int

    @property
    def all_passed(self) -> bool:
        return (self.sylow_p_normal and self.sylow_p_semiregular and
                self.p_mod_2d == 1)


def structure_report(group: SemidirectGroup, graph: Graph) -> StructureReport:
    """Recompute the normal-Sylow facts for a cover built from `group`.

    The graph must be the one produced by build_cover for this group;
    the coset action is rebuilt to check against it.
    """
    base = group.base
    spec_like = coset_graph(group, _rotation_subgroup(group), group.lifted_involution)
    if spec_like.graph != graph:
        raise ValueError("graph was not built from this group")
    p = group.prime
    z = group.normal_gen
    normal = True
    for gen in group.generators:
        conj = group.multiply(group.multiply(group.inverse(gen), z), gen)
        e, g = group.decode(conj)
        if g != group.oracle.identity:
            normal = False
    p_grp = PermGroup(graph.n, [spec_like.vertex_permutation(z)])
    semiregular = is_semiregular(p_grp) and p_grp.order() == p
    action = spec_like.action
    invariants = tuple(abelian_invariants(action))
    d = base.valency
    cent = 0
    for i in range(group.order):
        if group.multiply(i, z) == group.multiply(z, i):
            cent += 1
    return StructureReport(
        sylow_p_normal=normal,
        sylow_p_semiregular=semiregular,
        abelianization=invariants,
        p_mod_2d=p % (2 * d),
        centralizer_complement_order=cent // p,
    )


def _rotation_subgroup(group: SemidirectGroup) -> list[int]:
    subgroup = [group.identity]
    x = group.lifted_rotation
    while x != group.identity:
        subgroup.append(x)
        x = group.multiply(x, group.lifted_rotation)
    return subgroup

import pytest

from arcgraphs.errors import BudgetExceededError
from arcgraphs.fp import (CosetTable, Presentation, coset_action,
                          enumerate_arc_regular_quotients, feasibility,
                          low_index_normal_subgroups, todd_coxeter,
                          universal_group)
from arcgraphs.perm import abelian_invariants


S3_PRES = Presentation(2, ((1, 1), (2, 2, 2), (1, 2, 1, 2)))
A4_PRES = Presentation(2, ((1, 1), (2, 2, 2), (1, 2, 1, 2, 1, 2)))
C6_PRES = Presentation(2, ((1, 1), (2, 2, 2), (-1, -2, 1, 2)))


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation(2, ((1, -1),))
    with pytest.raises(ValueError):
        Presentation(1, ((2,),))
    with pytest.raises(ValueError):
        Presentation(2, ((),))


def test_todd_coxeter_examples():
    assert todd_coxeter(S3_PRES, [(2,)], 100).index == 2
    table = todd_coxeter(A4_PRES, [(2,)], 100)
    assert table.index == 4
    assert coset_action(table).order() == 12
    table = todd_coxeter(C6_PRES, [], 100)
    assert table.index == 6
    assert coset_action(table).order() == 6


def test_todd_coxeter_budget_on_infinite_index():
    with pytest.raises(BudgetExceededError):
        todd_coxeter(universal_group(3), [(2,)], 100_000)


def test_coset_table_relator_traces():
    from arcgraphs.perm import point_stabilizer
    for pres, sub in ((S3_PRES, [(2,)]), (A4_PRES, [(2,)]), (C6_PRES, [])):
        table = todd_coxeter(pres, sub, 1000)
        assert table.satisfies(pres)
        group = coset_action(table)
        assert group.is_transitive()
        # index times the image of the subgroup (stabilizer of coset 0)
        assert group.order() == \
            table.index * point_stabilizer(group, 0).order()


def test_low_index_normal_subgroups_of_free_product():
    u = universal_group(3)
    found = low_index_normal_subgroups(u, 6)
    assert [nq.index for nq in found] == [1, 2, 3, 6, 6]
    quotient_types = sorted((nq.index, tuple(abelian_invariants(nq.group)))
                            for nq in found)
    assert quotient_types == [(1, ()), (2, (2,)), (3, (3,)), (6, (2,)), (6, (6,))]
    found12 = low_index_normal_subgroups(u, 12)
    assert [nq.index for nq in found12] == [1, 2, 3, 6, 6, 12]
    assert found12[-1].group.order() == 12
    assert abelian_invariants(found12[-1].group) == [3]  # alternating quotient


def test_low_index_normal_subgroups_of_s3_presentation():
    found = low_index_normal_subgroups(S3_PRES, 6)
    assert [nq.index for nq in found] == [1, 2, 6]


def test_low_index_tables_are_regular_and_standard():
    for nq in low_index_normal_subgroups(universal_group(3), 12):
        assert nq.table.satisfies(universal_group(3))
        assert nq.group.order() == nq.index
        assert nq.table.standardized() == nq.table


# ---------------------------------------------------------------------------
# exhaustive-epimorphism oracle
# ---------------------------------------------------------------------------
#
# A quotient of <x, y | x^2, y^3> is generated by an element of order <= 2
# and one of order <= 3.  If either image is trivial the quotient is C1, C2
# or C3; otherwise 2 and 3 both divide the order, so the order lies in
# {6, 12, 18, 24} up to index 24.  The catalog below contains every group
# of those orders (5 of order 12, 5 of order 18, 15 of order 24), so
# counting kernels of epimorphisms over it is exhaustive.

def _cyclic(n):
    return list(range(n)), (lambda a, b: (a + b) % n), 0


def _direct(g1, g2):
    e1, m1, i1 = g1
    e2, m2, i2 = g2
    elems = [(a, b) for a in e1 for b in e2]
    return elems, (lambda a, b: (m1(a[0], b[0]), m2(a[1], b[1]))), (i1, i2)


def _dihedral(n):
    # (rotation, flip); flip conjugates rotations to their inverses
    elems = [(i, e) for e in (0, 1) for i in range(n)]

    def mult(a, b):
        i, e = a
        j, f = b
        return ((i + j) % n if e == 0 else (i - j) % n, e ^ f)
    return elems, mult, (0, 0)


def _dicyclic(n):
    # order 4n: <a, b | a^(2n), b^2 = a^n, b a b^-1 = a^-1>
    elems = [(i, e) for e in (0, 1) for i in range(2 * n)]

    def mult(a, b):
        i, e = a
        j, f = b
        if e == 0:
            return ((i + j) % (2 * n), f)
        if f == 0:
            return ((i - j) % (2 * n), 1)
        return ((i - j + n) % (2 * n), 0)
    return elems, mult, (0, 0)


def _sym(n):
    from itertools import permutations
    elems = list(permutations(range(n)))
    return elems, (lambda a, b: tuple(b[x] for x in a)), tuple(range(n))


def _alt(n):
    elems, mult, ident = _sym(n)

    def parity(p):
        inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p))
                         if p[i] > p[j])
        return inversions % 2
    return [p for p in elems if parity(p) == 0], mult, ident


def _sl23():
    elems = [(a, b, c, d)
             for a in range(3) for b in range(3)
             for c in range(3) for d in range(3)
             if (a * d - b * c) % 3 == 1]

    def mult(m1, m2):
        a, b, c, d = m1
        e, f, g, h = m2
        return ((a * e + b * g) % 3, (a * f + b * h) % 3,
                (c * e + d * g) % 3, (c * f + d * h) % 3)
    return elems, mult, (1, 0, 0, 1)


def _c3_by_group(inner, sign_of):
    """C3 x| G where elements of G act by +1 or -1 via sign_of."""
    e_g, m_g, i_g = inner
    elems = [(x, d) for x in range(3) for d in e_g]

    def mult(a, b):
        x1, d1 = a
        x2, d2 = b
        return ((x1 + sign_of(d1) * x2) % 3, m_g(d1, d2))
    return elems, mult, (0, i_g)


def _gen_dihedral_c3sq():
    elems = [((u, v), e) for e in (0, 1) for u in range(3) for v in range(3)]

    def mult(a, b):
        (u1, v1), e = a
        (u2, v2), f = b
        s = 1 if e == 0 else -1
        return (((u1 + s * u2) % 3, (v1 + s * v2) % 3), e ^ f)
    return elems, mult, ((0, 0), 0)


def _catalog():
    c2, c3, c4, c6 = _cyclic(2), _cyclic(3), _cyclic(4), _cyclic(6)
    d4 = _dihedral(4)
    q8 = _dicyclic(2)
    s3 = _sym(3)
    sign_c8 = lambda d: 1 if d % 2 == 0 else -1
    sign_d4 = lambda d: 1 if d[1] == 0 else -1  # reflections invert
    return {
        "1": _cyclic(1), "C2": c2, "C3": c3,
        "C4": c4, "C5": _cyclic(5),
        "C6": c6, "S3": s3,
        "C12": _cyclic(12), "C2xC6": _direct(c2, c6),
        "D6": _dihedral(6), "A4": _alt(4), "Dic3": _dicyclic(3),
        "C18": _cyclic(18), "C3xC6": _direct(c3, c6),
        "D9": _dihedral(9), "C3xS3": _direct(c3, s3),
        "DihC3sq": _gen_dihedral_c3sq(),
        "C24": _cyclic(24), "C2xC12": _direct(c2, _cyclic(12)),
        "C2xC2xC6": _direct(c2, _direct(c2, c6)),
        "S4": _sym(4), "C2xA4": _direct(c2, _alt(4)),
        "SL23": _sl23(), "D12": _dihedral(12), "Dic6": _dicyclic(6),
        "C4xS3": _direct(c4, s3), "C2xD6": _direct(c2, _dihedral(6)),
        "C2xDic3": _direct(c2, _dicyclic(3)),
        "C3xD4": _direct(c3, d4), "C3xQ8": _direct(c3, q8),
        "C3:C8": _c3_by_group(_cyclic(8), sign_c8),
        "C3:D4": _c3_by_group(d4, sign_d4),
    }


def _oracle_kernel_tables(max_index):
    """Standardized regular coset tables of all kernels of epimorphisms from
    C2 * C3 onto catalog groups of order <= max_index."""
    tables = set()
    for name, (elems, mult, ident) in _catalog().items():
        order = len(elems)
        if order > max_index:
            continue
        # sanity: the claimed identity really is one
        assert all(mult(ident, g) == g and mult(g, ident) == g for g in elems)
        involutions = [g for g in elems if mult(g, g) == ident]
        order3 = [g for g in elems if mult(mult(g, g), g) == ident]
        idx = {g: i for i, g in enumerate(_rooted(elems, ident))}
        rooted = _rooted(elems, ident)
        for x in involutions:
            for y in order3:
                if not _pair_generates(elems, mult, ident, x, y):
                    continue
                y_inv = mult(y, y)
                rows = tuple((idx[mult(g, x)], idx[mult(g, x)],
                              idx[mult(g, y)], idx[mult(g, y_inv)])
                             for g in rooted)
                table = CosetTable(2, rows).standardized()
                tables.add(table.rows)
    return tables


def _rooted(elems, ident):
    return [ident] + [g for g in elems if g != ident]


def _pair_generates(elems, mult, ident, x, y):
    seen = {ident}
    frontier = [ident]
    while frontier:
        g = frontier.pop()
        for s in (x, y):
            t = mult(g, s)
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    return len(seen) == len(elems)


@pytest.mark.parametrize("max_index,expected_at_12", [(24, 6)])
def test_low_index_agrees_with_epimorphism_oracle(max_index, expected_at_12):
    u = universal_group(3)
    found = low_index_normal_subgroups(u, max_index)
    search_tables = {nq.table.rows for nq in found}
    oracle_tables = _oracle_kernel_tables(max_index)
    assert search_tables == oracle_tables
    assert sum(1 for nq in found if nq.index <= 12) == expected_at_12


# ---------------------------------------------------------------------------
# arc-regular quotients and feasibility
# ---------------------------------------------------------------------------

def test_enumerate_arc_regular_quotients_examples():
    only = enumerate_arc_regular_quotients(4, 3)
    assert len(only) == 1
    assert only[0].group.order() == 12
    assert abelian_invariants(only[0].group) == [3]

    dipoles = enumerate_arc_regular_quotients(2, 3)
    assert len(dipoles) == 2
    assert all(m.degenerate for m in dipoles)
    assert sorted(tuple(abelian_invariants(m.group)) for m in dipoles) == \
        [(2,), (6,)]

    pair = enumerate_arc_regular_quotients(14, 3)
    assert len(pair) == 2
    assert all(m.group.order() == 42 for m in pair)


def test_marked_group_invariants():
    for k in (2, 4, 6, 8):
        for marked in enumerate_arc_regular_quotients(k, 3):
            assert marked.involution.order() == 2
            assert marked.rotation.order() == 3
            assert marked.group.order() == 3 * k
            assert marked.group.contains(marked.involution)
            assert marked.group.contains(marked.rotation)


def test_feasibility_examples():
    feasible, wits = feasibility(2)
    assert feasible and len(wits) == 1
    assert abelian_invariants(wits[0].group) == [6]
    assert feasibility(4) == (False, [])
    assert feasibility(10) == (False, [])
    feasible14, wits14 = feasibility(14)
    assert feasible14 and len(wits14) == 2


def test_feasibility_parity_shortcut_agrees_with_search():
    for k in (1, 3, 5, 7, 9, 11, 13, 15):
        assert feasibility(k) == (False, [])
        # the full search agrees: no exact-order quotients at all for odd k
        assert enumerate_arc_regular_quotients(k, 3) == []

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcgraphs.analyze import (automorphism_group, canonical_form,
                               canonical_graph, find_arc_regular_subgroups,
                               local_action, s_arc_profile)
from arcgraphs.census import build_named
from arcgraphs.fp import feasibility
from arcgraphs.cover import CoverSpec, build_cover
from arcgraphs.graphs import Graph, complete_bipartite, complete_graph, lcf_parse
from arcgraphs.perm import PermGroup, Permutation
from helpers import (brute_automorphism_count, brute_find_isomorphism,
                     small_graph_corpus)


def test_canonical_form_trivial_examples():
    k4 = complete_graph(4)
    assert canonical_form(k4) == canonical_form(k4.relabel([3, 1, 0, 2]))
    assert canonical_form(build_named("F010")) != canonical_form(build_named("F014"))
    # same order, non-isomorphic:
    assert canonical_form(build_named("F020A")) != canonical_form(build_named("F020B"))


random_graph = st.integers(2, 9).flatmap(
    lambda n: st.tuples(
        st.builds(lambda pairs: Graph.from_edges(n, pairs),
                  st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                           .filter(lambda e: e[0] != e[1]), max_size=14)),
        st.permutations(range(n))))


@given(random_graph)
@settings(max_examples=60, deadline=None)
def test_canonical_form_is_relabeling_invariant(data):
    graph, relab = data
    assert canonical_form(graph) == canonical_form(graph.relabel(list(relab)))


@given(random_graph)
@settings(max_examples=40, deadline=None)
def test_canonical_graph_is_isomorphic_copy(data):
    graph, _ = data
    canon = canonical_graph(graph)
    assert canon.n == graph.n and canon.num_edges() == graph.num_edges()
    assert brute_find_isomorphism(graph, canon) is not None


def test_canonical_form_agrees_with_brute_isomorphism_on_corpus():
    corpus = {name: g for name, g in small_graph_corpus().items() if g.n <= 16}
    certs = {name: canonical_form(g) for name, g in corpus.items()}
    for (n1, g1), (n2, g2) in itertools.combinations(corpus.items(), 2):
        iso = brute_find_isomorphism(g1, g2) is not None
        assert (certs[n1] == certs[n2]) == iso, (n1, n2)


def test_automorphism_group_examples():
    assert automorphism_group(complete_graph(4)).order() == 24
    assert automorphism_group(build_named("F010")).order() == 120
    assert automorphism_group(lcf_parse("[5,-5]^7")).order() == 336


def test_automorphism_group_agrees_with_brute_force():
    corpus = {name: g for name, g in small_graph_corpus().items() if g.n <= 20}
    for name, graph in corpus.items():
        aut = automorphism_group(graph)
        assert aut.order() == brute_automorphism_count(graph), name
        for g in aut.generators:
            assert graph.is_automorphism(g)


def test_s_arc_counts_match_regular_formula():
    for gid in ("F004", "F006", "F014", "F030"):
        graph = build_named(gid)
        profile = s_arc_profile(graph)
        n, d = graph.n, 3
        for s in range(1, 8):
            assert profile.row(s).count == n * d * (d - 1) ** (s - 1)
        assert profile.row(0).count == n


def test_s_arc_profile_examples():
    k4 = complete_graph(4)
    prof = s_arc_profile(k4)
    assert prof.s_max_transitive == 2
    assert prof.row(2).regular and prof.row(2).count == 24

    tutte = build_named("F030")
    prof = s_arc_profile(tutte)
    assert prof.s_max_transitive == 5
    assert prof.row(5).regular and prof.row(5).count == 1440

    _, wits = feasibility(2)
    cover26 = build_cover(CoverSpec(base=wits[0], prime=13, root=3))
    prof = s_arc_profile(cover26)
    assert prof.s_max_transitive == 1
    assert prof.row(1).regular and prof.row(1).count == 78
    # monotone: transitivity never reappears after failing
    flags = [row.transitive for row in prof.rows]
    assert flags == sorted(flags, reverse=True)


def test_s_arc_profile_rejects_bad_input():
    from arcgraphs.graphs import cycle_graph
    with pytest.raises(ValueError):
        s_arc_profile(cycle_graph(6))
    with pytest.raises(ValueError):
        s_arc_profile(Graph.from_edges(4, [(0, 1), (2, 3)]))
    # a permutation mixing the parts of K3,3 is not an automorphism
    not_auto = PermGroup(6, [Permutation.from_cycles(6, [(0, 3)])])
    with pytest.raises(ValueError):
        s_arc_profile(complete_bipartite(3, 3), not_auto)


def test_local_action_examples():
    k4 = complete_graph(4)
    a4 = PermGroup(4, [Permutation.from_cycles(4, [(0, 1, 2)]),
                       Permutation.from_cycles(4, [(0, 1), (2, 3)])])
    act = local_action(k4, a4, 0)
    assert (act.name, act.order, act.transitive, act.quasiprimitive) == \
        ("C3", 3, True, True)

    k33 = complete_bipartite(3, 3)
    act = local_action(k33, automorphism_group(k33), 0)
    assert act.name == "S3" and act.order == 6

    _, wits = feasibility(2)
    cover26 = build_cover(CoverSpec(base=wits[0], prime=13, root=3))
    act = local_action(cover26, automorphism_group(cover26), 0)
    assert act.name == "C3"


def test_find_arc_regular_subgroups_examples():
    heawood = lcf_parse("[5,-5]^7")
    classes = find_arc_regular_subgroups(heawood)
    assert len(classes) == 2
    for action in classes:
        assert action.group.order() == 42
        assert action.rotation.order() == 3
        assert action.involution.order() == 2
        stab = action.group.stabilizer(action.vertex)
        assert stab.order() == 3 and stab.contains(action.rotation)
        assert action.involution.images[action.vertex] in heawood.adj[action.vertex]

    assert find_arc_regular_subgroups(build_named("F010")) == []
    assert len(find_arc_regular_subgroups(complete_graph(4))) == 1

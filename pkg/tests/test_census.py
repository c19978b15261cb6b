import pytest

from arcgraphs.analyze import canonical_form
from arcgraphs.census import (REGISTRY, build_named, coxeter_graph,
                              petersen_graph, verify_named)
from arcgraphs.cover import CoverSpec, build_cover
from arcgraphs.fp import feasibility
from arcgraphs.graphs import complete_graph, coset_graph
from arcgraphs.perm import PermGroup, Permutation, RegularOracle


def test_registry_shape():
    assert len(REGISTRY) == 12
    for record in REGISTRY.values():
        assert record.expected_aut_order == \
            3 * 2 ** (record.expected_s - 1) * record.order


def test_build_named_basics():
    for gid, record in REGISTRY.items():
        graph = build_named(gid)
        assert graph.n == record.order
        assert graph.regular_degree() == 3
        assert graph.is_connected()
    with pytest.raises(KeyError):
        build_named("F098B")


def test_coxeter_graph_has_girth_7():
    graph = coxeter_graph()
    # shortest cycle through BFS from each vertex
    girth = 10 ** 9
    for start in range(graph.n):
        dist = {start: 0}
        parent = {start: -1}
        queue = [start]
        while queue:
            v = queue.pop(0)
            for w in graph.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    girth = min(girth, dist[v] + dist[w] + 1)
    assert girth == 7


def test_verify_named_all_pass():
    for gid in REGISTRY:
        report = verify_named(gid)
        assert report.passed, (gid, report)


def test_verify_named_examples():
    rep = verify_named("F010")
    assert (rep.computed_s, rep.computed_aut_order) == (3, 120)
    rep = verify_named("F030")
    assert (rep.computed_s, rep.computed_aut_order) == (5, 1440)
    rep = verify_named("F008")
    assert (rep.computed_s, rep.computed_aut_order) == (2, 48)


def test_registry_identity_f004_as_coset_graph():
    a4 = PermGroup(4, [Permutation.from_cycles(4, [(0, 1, 2)]),
                       Permutation.from_cycles(4, [(0, 1), (2, 3)])])
    oracle = RegularOracle(a4)
    rot = Permutation.from_cycles(4, [(0, 1, 2)])
    subgroup = [oracle.identity, oracle._index[rot.images],
                oracle._index[(rot * rot).images]]
    swap = oracle._index[Permutation.from_cycles(4, [(0, 1), (2, 3)]).images]
    built = coset_graph(oracle, subgroup, swap).graph
    assert canonical_form(built) == canonical_form(build_named("F004"))
    assert canonical_form(build_named("F004")) == canonical_form(complete_graph(4))


def test_registry_identity_f014_as_cover():
    _, wits = feasibility(2)
    cover = build_cover(CoverSpec(base=wits[0], prime=7, root=2))
    assert canonical_form(cover) == canonical_form(build_named("F014"))


def test_petersen_is_kneser():
    graph = petersen_graph()
    assert graph.n == 10 and graph.num_edges() == 15
    # girth 5, triangle- and square-free
    for v in range(10):
        for w in graph.adj[v]:
            assert not set(graph.adj[v]) & set(graph.adj[w])

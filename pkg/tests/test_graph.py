import pytest

from netgoods.graph import (
    Graph,
    GraphError,
    connected_components,
    cube_graph,
    cycle_graph,
    degrees,
    dependants_and_guardians,
    disjoint_union,
    empty_graph,
    format_edge_list,
    induced_subgraph,
    is_dominating,
    is_forest,
    is_independent,
    is_matching,
    is_regular,
    is_well_covered_forest,
    neighbors,
    parse_edge_list,
    path_graph,
    pendant_edges,
    star_graph,
)


def test_degrees(P4, C4, K13):
    assert degrees(P4) == (1, 2, 2, 1)
    assert degrees(C4) == (2, 2, 2, 2)
    assert degrees(K13) == (3, 1, 1, 1)


def test_is_forest(P4, C4):
    assert is_forest(P4)
    assert not is_forest(C4)
    assert is_forest(empty_graph(3))
    assert is_forest(Graph(0))


def test_is_regular(P4, C4):
    assert is_regular(C4) == 2
    assert is_regular(P4) is None
    assert is_regular(empty_graph(1)) == 0
    assert is_regular(cube_graph()) == 3


def test_dependants(P2, K13, C4):
    assert sorted(dependants_and_guardians(P2)) == [(0, 1, True), (1, 0, True)]
    assert sorted(dependants_and_guardians(K13)) == [(1, 0, False), (2, 0, False), (3, 0, False)]
    assert dependants_and_guardians(C4) == []


def test_well_covered_forest(P3, P4):
    assert pendant_edges(P4) == [(0, 1), (2, 3)]
    assert is_well_covered_forest(P4)
    assert not is_well_covered_forest(P3)
    assert is_well_covered_forest(disjoint_union(path_graph(2), path_graph(2)))


def test_well_covered_forest_rejects_bad_input(C4):
    with pytest.raises(GraphError):
        is_well_covered_forest(C4)
    with pytest.raises(GraphError):
        is_well_covered_forest(Graph.from_edges(3, [(0, 1)]))


def test_independent_matches_quadratic_form(C4):
    a = C4.adjacency()
    for mask in range(16):
        s = [i for i in range(4) if mask >> i & 1]
        form = sum(a[i][j] for i in s for j in s)
        assert is_independent(C4, s) == (form == 0)


def test_plumbing(P4, K13):
    assert neighbors(P4, 1) == (0, 2)
    assert connected_components(disjoint_union(P4, Graph(1))) == [(0, 1, 2, 3), (4,)]
    assert is_dominating(P4, (1, 3))
    assert is_dominating(P4, (0, 3))
    assert not is_dominating(P4, (0,))
    assert is_matching(P4, [(0, 1), (2, 3)])
    assert not is_matching(P4, [(0, 1), (1, 2)])
    sub, keep = induced_subgraph(K13, [1, 2, 3])
    assert sub.n == 3 and not sub.edges and keep == (1, 2, 3)


def test_edge_list_round_trip():
    for g in (Graph(0), empty_graph(3), cycle_graph(5), star_graph(3), cube_graph()):
        assert parse_edge_list(format_edge_list(g)) == g


def test_parse_labels_and_comments():
    g = parse_edge_list("# a comment\nalice bob\nbob carol\n")
    assert g.n == 3 and g.labels == ("alice", "bob", "carol")
    assert g.sorted_edges() == [(0, 1), (1, 2)]
    g = parse_edge_list("10 2\n2 7\n")
    assert g.labels == ("2", "7", "10")
    assert g.sorted_edges() == [(0, 1), (0, 2)]


def test_header_allows_isolated_vertices():
    g = parse_edge_list("n 4\n0 1\n")
    assert g.n == 4 and degrees(g) == (1, 1, 0, 0)


@pytest.mark.parametrize(
    "text",
    ["0 0\n", "0 1\n1 0\n", "0 1\n0 1\n", "0 1 2\n", "n 2\n0 5\n", "n x\n", "n 2\na b\n"],
)
def test_parse_errors(text):
    with pytest.raises(GraphError):
        parse_edge_list(text)

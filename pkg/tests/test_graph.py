import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from awgraph.errors import GraphInputError, NotDistanceRegular, NotRegular
from awgraph.graph import FAMILIES, Graph, compute_distance_data, generate_family, load_graph

from graphs import path, petersen, prism
from oracles import floyd_warshall, isomorphic, pair_counts


# ---------------------------------------------------------------------------
# ingestion


def test_edge_list_triangle():
    g = load_graph("3 3\n0 1\n1 2\n2 0\n")
    assert g.n == 3
    assert g.adjacency.sum() == 6


def test_edge_list_crlf_and_trailing_blank_lines():
    g = load_graph("3 2\r\n0 1\r\n1 2\r\n\r\n")
    assert g.n == 3 and g.adjacency[0, 1] == 1 and g.adjacency[0, 2] == 0


def test_dense_path_is_accepted_but_irregular():
    g = load_graph("010\n101\n010", format="dense")
    assert g.n == 3
    with pytest.raises(NotRegular):
        compute_distance_data(g)


@pytest.mark.parametrize(
    "text, fmt, match",
    [
        ("2 1\n0 0\n", "edgelist", "loop"),
        ("3 2\n0 1\n1 0\n", "edgelist", "duplicate"),
        ("3 1\n0 5\n", "edgelist", "out of range"),
        ("3 2\n0 1\n", "edgelist", "announces"),
        ("x y\n", "edgelist", "header"),
        ("3 1\n0 a\n", "edgelist", "expected"),
        ("4 2\n0 1\n2 3\n", "edgelist", "disconnected"),
        ("010\n100\n000", "dense", "asymmetric|disconnected"),
        ("011\n101\n11", "dense", "characters"),
        ("110\n101\n011", "dense", "loop"),
        ("012\n101\n210", "dense", "characters"),
        ("", "dense", "empty"),
        ("3 3\n0 1\n1 2\n2 0\n", "graph6", "unknown input format"),
    ],
)
def test_malformed_input(text, fmt, match):
    with pytest.raises(GraphInputError, match=match):
        load_graph(text, format=fmt)


def test_graph_rejects_asymmetric_matrix():
    adj = np.array([[0, 1, 0], [0, 0, 1], [0, 1, 0]])
    with pytest.raises(GraphInputError, match="asymmetric"):
        Graph(3, adj)


def test_adjacency_is_read_only():
    g = generate_family("cycle", 6)
    with pytest.raises(ValueError):
        g.adjacency[0, 1] = 0


# ---------------------------------------------------------------------------
# families


@pytest.mark.parametrize(
    "family, size, n, k",
    [
        ("cycle", 6, 6, 2),
        ("cycle", 16, 16, 2),
        ("crown", 3, 6, 2),
        ("crown", 5, 10, 4),
        ("crown", 7, 14, 6),
        ("hadamard", 4, 16, 4),
        ("hadamard", 8, 32, 8),
        ("hypercube", 3, 8, 3),
        ("hypercube", 5, 32, 5),
    ],
)
def test_family_sizes(family, size, n, k):
    g = generate_family(family, size)
    assert g.n == n
    assert np.all(g.degrees == k)


@pytest.mark.parametrize(
    "family, size",
    [("cycle", 5), ("cycle", 4), ("crown", 2), ("hadamard", 6), ("hadamard", 16), ("hypercube", 2), ("petersen", 3)],
)
def test_family_invalid_size(family, size):
    with pytest.raises(ValueError):
        generate_family(family, size)


def test_crown_adjacency_rule():
    g = generate_family("crown", 5)
    for i in range(5):
        for j in range(5):
            assert g.adjacency[i, 5 + j] == (i != j)
    assert g.labels[0] == "u0" and g.labels[5] == "v0"


def test_hadamard_adjacency_rule():
    g = generate_family("hadamard", 4)
    H = np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]])
    signs = (1, -1)
    for r in range(4):
        for s_idx, s in enumerate(signs):
            for c in range(4):
                for t_idx, t in enumerate(signs):
                    u, v = 2 * r + s_idx, 8 + 2 * c + t_idx
                    assert g.adjacency[u, v] == (H[r, c] == s * t)


@pytest.mark.parametrize("a, b", [(("cycle", 6), ("crown", 3)), (("hypercube", 3), ("crown", 4))])
def test_small_family_isomorphisms(a, b):
    assert isomorphic(generate_family(*a).adjacency, generate_family(*b).adjacency)


def test_isomorphism_oracle_distinguishes():
    assert not isomorphic(generate_family("cycle", 8).adjacency, generate_family("crown", 4).adjacency)


# ---------------------------------------------------------------------------
# distance data


def test_cycle6_intersection_array():
    drg = compute_distance_data(generate_family("cycle", 6))
    assert drg.diameter == 3
    assert drg.b == [2, 1, 1]
    assert drg.c == [1, 1, 2]
    assert drg.warning is None


def test_crown5_distance_data():
    drg = compute_distance_data(generate_family("crown", 5))
    assert (drg.diameter, drg.valency) == (3, 4)
    assert drg.intersection_array == ([4, 3, 1], [1, 3, 4])


@pytest.mark.parametrize(
    "family, size",
    [("cycle", 6), ("cycle", 10), ("crown", 5), ("crown", 6), ("hadamard", 4), ("hadamard", 8), ("hypercube", 4)],
)
def test_intersection_numbers_match_pair_counting(family, size):
    g = generate_family(family, size)
    drg = compute_distance_data(g)
    counts = pair_counts(g.adjacency)
    for (h, i, j), values in counts.items():
        assert len(values) == 1
        assert drg.intersection_numbers[h, i, j] == values.pop()


@pytest.mark.parametrize("family", FAMILIES)
def test_bose_mesner_identities_exact(family):
    size = {"cycle": 8, "crown": 6, "hadamard": 8, "hypercube": 4}[family]
    drg = compute_distance_data(generate_family(family, size))
    A = drg.distance_matrices
    n = drg.n
    assert np.array_equal(A[0], np.eye(n, dtype=np.int64))
    assert np.array_equal(sum(A), np.ones((n, n), dtype=np.int64))
    p = drg.intersection_numbers
    D = drg.diameter
    for i in range(D + 1):
        for j in range(D + 1):
            rhs = sum(p[h, i, j] * A[h] for h in range(D + 1))
            assert np.array_equal(A[i] @ A[j], rhs)


def test_bfs_distances_agree_with_floyd_warshall():
    g = generate_family("hadamard", 8)
    assert np.array_equal(compute_distance_data(g).distance, floyd_warshall(g.adjacency))


def test_path_is_not_regular():
    with pytest.raises(NotRegular, match="not regular"):
        compute_distance_data(path(3))


def test_prism_witness():
    with pytest.raises(NotDistanceRegular) as info:
        compute_distance_data(prism())
    w = info.value.witness
    assert w["h"] == 1 and len(w["pairs"]) == 2
    lo, hi = w["counts"]
    assert lo != hi
    # the witness pairs really are at distance h and really give those counts
    dist = floyd_warshall(prism().adjacency)
    for (x, y), c in zip(w["pairs"], w["counts"]):
        assert dist[x, y] == w["h"]
        assert np.sum((dist[x] == w["i"]) & (dist[y] == w["j"])) == c


@pytest.mark.parametrize("g", [petersen(), load_graph("3 3\n0 1\n1 2\n2 0\n")], ids=["petersen", "triangle"])
def test_small_diameter_is_flagged(g):
    drg = compute_distance_data(g)
    assert drg.diameter < 3
    assert "diameter" in drg.warning


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=4, max_value=9), st.data())
def test_random_graphs_certified_or_refuted(n, data):
    # every connected input is either certified with exact identities or refuted with a genuine witness
    bits = data.draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    adj = np.zeros((n, n), dtype=int)
    adj[np.triu_indices(n, 1)] = bits
    adj = adj + adj.T
    # force connectivity with a Hamiltonian path
    for i in range(n - 1):
        adj[i, i + 1] = adj[i + 1, i] = 1
    g = Graph(n, adj)
    counts = pair_counts(adj)
    regular = len(set(adj.sum(1))) == 1
    try:
        drg = compute_distance_data(g)
    except NotRegular:
        assert not regular
        return
    except NotDistanceRegular as exc:
        assert regular
        w = exc.witness
        assert len(counts[(w["h"], w["i"], w["j"])]) > 1
        return
    assert all(len(v) == 1 for v in counts.values())
    assert np.array_equal(sum(drg.distance_matrices), np.ones((n, n), dtype=np.int64))

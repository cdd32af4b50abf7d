import itertools
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from awgraph.errors import SpectralError
from awgraph.graph import compute_distance_data, generate_family
from awgraph.spectral import (
    KreinTensor,
    QPolyOrdering,
    SpectralData,
    find_qpoly_orderings,
    krein_parameters,
    spectral_decomposition,
)

from oracles import cycle_idempotents, jacobi_eigenvalues

TOL = 1e-8

# Krein table of C_6 from the cosine-formula idempotents, q[h][i][j]
C6_KREIN = [
    [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]],
    [[0, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0]],
    [[0, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 0]],
    [[0, 0, 0, 1], [0, 0, 2, 0], [0, 2, 0, 0], [1, 0, 0, 0]],
]


def spectrum_of(family, size):
    return spectral_decomposition(compute_distance_data(generate_family(family, size)))


def brute_orderings(q, eps):
    D = q.shape[0] - 1
    out = []
    for perm in itertools.permutations(range(1, D + 1)):
        s = (0,) + perm
        ok = True
        for i in range(D + 1):
            for j in range(D + 1):
                v = abs(q[s[1], s[i], s[j]])
                if abs(i - j) > 1 and v > eps or abs(i - j) == 1 and v <= eps:
                    ok = False
        if ok:
            out.append(perm)
    return out


@pytest.mark.parametrize(
    "family, size, theta, mult",
    [
        ("cycle", 6, [2, 1, -1, -2], (1, 2, 2, 1)),
        ("crown", 5, [4, 1, -1, -4], (1, 4, 4, 1)),
        ("hypercube", 4, [4, 2, 0, -2, -4], (1, 4, 6, 4, 1)),
        ("hadamard", 8, [8, 2 * np.sqrt(2), 0, -2 * np.sqrt(2), -8], (1, 8, 14, 8, 1)),
    ],
)
def test_eigenvalues_and_multiplicities(family, size, theta, mult):
    spec = spectrum_of(family, size)
    np.testing.assert_allclose(spec.eigenvalues, theta, atol=1e-12)
    assert spec.multiplicities == mult


@pytest.mark.parametrize("family, size", [("cycle", 6), ("crown", 5), ("hadamard", 8)])
def test_eigenvalues_match_jacobi_oracle(family, size):
    g = generate_family(family, size)
    spec = spectrum_of(family, size)
    expanded = np.repeat(spec.eigenvalues, spec.multiplicities)
    np.testing.assert_allclose(np.sort(expanded), jacobi_eigenvalues(g.adjacency), atol=1e-9)


@pytest.mark.parametrize(
    "family, size", [("cycle", 8), ("cycle", 16), ("crown", 7), ("hadamard", 4), ("hadamard", 8), ("hypercube", 5)]
)
def test_idempotent_identities(family, size):
    drg = compute_distance_data(generate_family(family, size))
    spec = spectral_decomposition(drg)
    n = drg.n
    E = spec.idempotents
    assert np.linalg.norm(sum(E) - np.eye(n)) <= TOL * n
    assert np.linalg.norm(E[0] - np.full((n, n), 1 / n)) <= TOL * n
    A = drg.distance_matrices[1]
    assert np.linalg.norm(A - sum(t * e for t, e in zip(spec.eigenvalues, E))) <= TOL * n
    for i, j in itertools.product(range(len(E)), repeat=2):
        target = E[i] if i == j else 0
        assert np.linalg.norm(E[i] @ E[j] - target) <= TOL * n
    assert sum(spec.multiplicities) == n
    assert all(np.allclose(e, e.conj().T) for e in E)
    assert all(np.allclose(e.imag, 0) for e in E)


@pytest.mark.parametrize("family, size", [("cycle", 10), ("crown", 6), ("hadamard", 8), ("hypercube", 3)])
def test_bipartite_spectrum_is_symmetric(family, size):
    th = spectrum_of(family, size).eigenvalues
    np.testing.assert_allclose(th, -th[::-1], atol=1e-12)


def test_cluster_count_mismatch_raises():
    drg = compute_distance_data(generate_family("cycle", 8))
    with pytest.raises(SpectralError, match="distinct eigenvalues"):
        spectral_decomposition(replace(drg, diameter=3))


def test_reordered_moves_idempotents():
    spec = spectrum_of("cycle", 8)
    r = spec.reordered(QPolyOrdering((3, 2, 1, 4)))
    np.testing.assert_allclose(r.eigenvalues, spec.eigenvalues[[0, 3, 2, 1, 4]])
    assert r.idempotents[1] is spec.idempotents[3]


# ---------------------------------------------------------------------------
# Krein parameters


def test_cycle6_krein_table():
    kr = krein_parameters(spectrum_of("cycle", 6))
    np.testing.assert_allclose(kr.values, C6_KREIN, atol=1e-10)
    assert kr.negative == ()


@pytest.mark.parametrize("n", [8, 10, 12])
def test_cycle_krein_matches_cosine_oracle(n):
    E = cycle_idempotents(n)
    m = [np.trace(e) for e in E]
    D = len(E) - 1
    expect = np.array(
        [[[n * np.sum(E[i] * E[j] * E[h]) / m[h] for j in range(D + 1)] for i in range(D + 1)] for h in range(D + 1)]
    )
    np.testing.assert_allclose(krein_parameters(spectrum_of("cycle", n)).values, expect, atol=1e-10)


@pytest.mark.parametrize(
    "family, size", [("cycle", 6), ("cycle", 16), ("crown", 5), ("crown", 7), ("hadamard", 8), ("hypercube", 5)]
)
def test_krein_real_nonnegative_symmetric(family, size):
    kr = krein_parameters(spectrum_of(family, size))
    assert kr.values.min() >= -1e-9
    np.testing.assert_allclose(kr.values, kr.values.transpose(0, 2, 1), atol=0)
    assert kr.residual <= TOL


@pytest.mark.parametrize("family, size", [("cycle", 8), ("crown", 5), ("hadamard", 8)])
def test_krein_stable_under_perturb_and_reproject(family, size):
    spec = spectrum_of(family, size)
    base = krein_parameters(spec).values
    rng = np.random.default_rng(7)
    projected = []
    for e, m in zip(spec.idempotents, spec.multiplicities):
        noise = rng.standard_normal(e.shape) * 1e-10
        w, V = np.linalg.eigh(e.real + 0.5 * (noise + noise.T))
        top = V[:, np.argsort(w)[::-1][:m]]
        projected.append((top @ top.T).astype(complex))
    moved = SpectralData(spec.eigenvalues, tuple(projected), spec.multiplicities)
    assert np.abs(krein_parameters(moved).values - base).max() <= 10 * TOL


# ---------------------------------------------------------------------------
# Q-polynomial orderings


@pytest.mark.parametrize(
    "family, size, expected",
    [
        ("cycle", 6, [(1, 2, 3)]),
        ("cycle", 8, [(1, 2, 3, 4), (3, 2, 1, 4)]),
        ("crown", 5, [(1, 2, 3)]),
        ("hadamard", 8, [(1, 2, 3, 4), (3, 2, 1, 4)]),
        ("hypercube", 4, [(1, 2, 3, 4), (3, 2, 1, 4)]),
    ],
)
def test_orderings(family, size, expected):
    found = find_qpoly_orderings(krein_parameters(spectrum_of(family, size)))
    assert [o.ordering for o in found] == expected


@pytest.mark.parametrize("family, size", [("cycle", 12), ("cycle", 14), ("crown", 6), ("hypercube", 5)])
def test_pruned_search_equals_brute_force(family, size):
    kr = krein_parameters(spectrum_of(family, size))
    found = [o.ordering for o in find_qpoly_orderings(kr)]
    assert found == brute_orderings(kr.values, kr.zero_tol)


def test_cycle16_has_four_orderings():
    kr = krein_parameters(spectrum_of("cycle", 16))
    assert len(find_qpoly_orderings(kr)) == 4


def test_all_positive_tensor_has_no_ordering():
    q = np.ones((4, 4, 4))
    assert find_qpoly_orderings(KreinTensor(q, 10, 0.0)) == []


def test_ordering_diameter_limit():
    q = np.ones((14, 14, 14))
    with pytest.raises(ValueError, match="limited"):
        find_qpoly_orderings(KreinTensor(q, 100, 0.0))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=5), st.data())
def test_ordering_search_on_random_patterns(D, data):
    # symmetric random 0/1 tensors: pruned DFS must agree with exhaustive enumeration
    bits = data.draw(st.lists(st.booleans(), min_size=(D + 1) ** 3, max_size=(D + 1) ** 3))
    q = np.array(bits, dtype=float).reshape(D + 1, D + 1, D + 1)
    q = np.maximum(q, q.transpose(0, 2, 1))
    kr = KreinTensor(q, 10, 0.0)
    assert [o.ordering for o in find_qpoly_orderings(kr)] == brute_orderings(q, kr.zero_tol)


def test_spectral_decomposition_is_deterministic():
    a, b = spectrum_of("hadamard", 8), spectrum_of("hadamard", 8)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert all(np.array_equal(x, y) for x, y in zip(a.idempotents, b.idempotents))

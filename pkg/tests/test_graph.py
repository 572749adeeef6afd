import math
from collections import deque

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entropic_occ.exceptions import DataError, DegenerateError
from entropic_occ.graph import (
    EntropyConfig,
    KnnGraph,
    Partition,
    alpha_jensen,
    build_knn_graph,
    connected_components,
    log_graph_length,
    objective_eta,
    renyi_entropy,
)


def knn_oracle(X, k):
    """Plain-loop neighbour search: sort each vertex's others by (distance, index)."""
    n = len(X)
    edges = {}
    for i in range(n):
        cand = sorted((math.dist(X[i], X[j]), j) for j in range(n) if j != i)
        for dist, j in cand[:k]:
            edges[(min(i, j), max(i, j))] = dist
    return edges


def bfs_components(n, edges):
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, queue = [], deque([s])
        seen.add(s)
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def graph_from_edges(n, edges, k=1):
    edges = sorted((min(u, v), max(u, v), w) for u, v, w in edges)
    u, v, w = (np.array(c) for c in zip(*edges)) if edges else (np.array([], int),) * 2 + (np.array([]),)
    return KnnGraph(n, u.astype(int), v.astype(int), w.astype(float), k)


class TestBuildKnnGraph:
    def test_two_points(self):
        g = build_knn_graph(np.array([[0.0, 0.0], [3.0, 4.0]]), 1)
        assert g.edges() == [(0, 1, 5.0)]

    def test_collinear(self):
        g = build_knn_graph(np.array([[0.0], [1.0], [3.0]]), 1)
        assert g.edges() == [(0, 1, 1.0), (1, 2, 2.0)]

    def test_ties_to_lower_index(self):
        # vertex 1 is equidistant from 0 and 2
        g = build_knn_graph(np.array([[0.0], [1.0], [2.0]]), 1)
        assert (0, 1, 1.0) in g.edges()
        assert g.degrees()[1] == 2

    @pytest.mark.parametrize("seed", range(50))
    def test_matches_brute_force(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 25))
        X = rng.normal(size=(n, int(rng.integers(1, 5))))
        k = int(rng.integers(1, n))
        g = build_knn_graph(X, k)
        oracle = knn_oracle(X.tolist(), k)
        got = {(a, b): w for a, b, w in g.edges()}
        assert got.keys() == oracle.keys()
        for key, w in oracle.items():
            assert got[key] == pytest.approx(w, rel=1e-12, abs=1e-15)

    def test_minimum_degree(self):
        X = np.random.default_rng(0).normal(size=(30, 3))
        for k in (1, 4, 29):
            g = build_knn_graph(X, k)
            assert g.degrees().min() >= k
            assert np.all(g.u < g.v)

    def test_bad_k(self):
        X = np.zeros((3, 1))
        with pytest.raises(DataError):
            build_knn_graph(X, 3)
        with pytest.raises(DataError):
            build_knn_graph(X, 0)
        with pytest.raises(DataError):
            build_knn_graph(X[:1], 1)


class TestLogLength:
    def test_unit_edge(self):
        assert log_graph_length(np.array([1.0]), 2) == 0.0

    def test_two_edges(self):
        assert log_graph_length(np.array([1.0, 2.0]), 1) == pytest.approx(math.log(3), rel=1e-15)

    def test_zero_edge_ignored(self):
        assert log_graph_length(np.array([0.0, 2.0]), 3) == pytest.approx(math.log(8), rel=1e-15)

    def test_huge_exponent_stays_finite(self):
        # 10^400 overflows a double; the log does not
        assert log_graph_length(np.array([10.0, 10.0]), 400) == pytest.approx(400 * math.log(10) + math.log(2))

    def test_edgeless(self):
        with pytest.raises(DegenerateError):
            log_graph_length(graph_from_edges(3, []), 1.0)


class TestRenyiEntropy:
    def test_closed_form_with_bias(self):
        g = graph_from_edges(10, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 0.5)])
        cfg = EntropyConfig(m=20, alpha=0.5)
        assert cfg.gamma == 10
        log_l = math.log(1 + 2 ** 10 + 0.5 ** 10)
        bias = math.log(5 * math.log(20 / (2 * math.pi * math.e)))
        expected = 2 * (log_l - 0.5 * math.log(10) - bias)
        assert renyi_entropy(g, cfg, 10) == pytest.approx(expected, rel=1e-13)

    def test_bias_dropped_in_low_dimension(self):
        g = graph_from_edges(4, [(0, 1, 1.0), (1, 2, 2.0)])
        cfg = EntropyConfig(m=4, alpha=0.5)
        expected = 2 * (math.log(1 + 2 ** 2) - 0.5 * math.log(4))
        assert renyi_entropy(g, cfg) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("c", [0.5, 2.0, 10.0])
    def test_shift_law(self, c):
        X = np.random.default_rng(5).normal(size=(30, 6))
        cfg = EntropyConfig(m=6)
        h1 = renyi_entropy(build_knn_graph(X, 3), cfg)
        h2 = renyi_entropy(build_knn_graph(c * X, 3), cfg)
        assert h2 - h1 == pytest.approx(6 * math.log(c), rel=1e-9)

    def test_degenerate(self):
        with pytest.raises(DegenerateError):
            renyi_entropy(graph_from_edges(1, []), EntropyConfig(m=3))


class TestComponents:
    def test_path(self):
        g = graph_from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
        assert connected_components(g).d == 1

    def test_two_edges(self):
        p = connected_components(graph_from_edges(4, [(0, 1, 1), (2, 3, 1)]))
        assert p.d == 2
        assert [c.tolist() for c in p.components] == [[0, 1], [2, 3]]

    def test_ordered_by_smallest_member(self):
        p = connected_components(graph_from_edges(5, [(1, 4, 1), (0, 3, 1)]))
        assert [c.tolist() for c in p.components] == [[0, 3], [1, 4], [2]]
        assert p.labels.tolist() == [0, 1, 2, 0, 1]

    @pytest.mark.parametrize("seed", range(50))
    def test_matches_bfs(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 30))
        m = int(rng.integers(0, 2 * n))
        pairs = {(int(a), int(b)) for a, b in rng.integers(0, n, size=(m, 2)) if a != b}
        edges = [(a, b, 1.0) for a, b in {(min(p), max(p)) for p in pairs}]
        p = connected_components(graph_from_edges(n, edges))
        assert [c.tolist() for c in p.components] == bfs_components(n, [(a, b) for a, b, _ in edges])


class TestAlphaJensen:
    def test_telescopes_to_zero(self):
        X = np.random.default_rng(2).normal(size=(40, 3))
        part = Partition.from_labels(np.zeros(40, dtype=int))
        assert alpha_jensen(X, part, 4, EntropyConfig(m=3), whole_k=4) == 0.0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(6, 40), st.integers(1, 4), st.integers(1, 5))
    def test_non_negative(self, seed, n, k, groups):
        rng = np.random.default_rng(seed)
        X = rng.normal(size=(n, 3))
        part = Partition.from_labels(rng.integers(0, groups, n))
        assert alpha_jensen(X, part, min(k, n - 2), EntropyConfig(m=3)) >= 0.0

    def test_separated_split_beats_arbitrary_split(self):
        sep, arb = [], []
        cfg = EntropyConfig(m=2)
        labels = np.repeat([0, 1], 30)
        for seed in range(20):
            rng = np.random.default_rng(seed)
            two = np.vstack([rng.normal(size=(30, 2)), rng.normal(size=(30, 2)) + [12.0, 0.0]])
            one = rng.normal(size=(60, 2))
            sep.append(alpha_jensen(two, Partition.from_labels(labels), 3, cfg))
            arb.append(alpha_jensen(one, Partition.from_labels(labels), 3, cfg))
        assert np.mean(sep) > np.mean(arb)

    def test_singletons_contribute_zero(self):
        X = np.array([[0.0], [1.0], [2.0], [10.0]])
        part = Partition.from_labels([0, 0, 0, 1])
        cfg = EntropyConfig(m=1)
        # m = 1: gamma = 0.5, no bias term; only the 3-vertex component carries entropy
        whole = build_knn_graph(X, 2)
        sub_w = np.array([1.0, 1.0])  # 1-NN edges 0-1 and 1-2 inside the component
        h_whole = 2 * (log_graph_length(whole, 0.5) - 0.5 * math.log(4))
        h_comp = 2 * (log_graph_length(sub_w, 0.5) - 0.5 * math.log(3))
        assert alpha_jensen(X, part, 1, cfg) == pytest.approx(max(h_whole - 0.75 * h_comp, 0), rel=1e-12)

    def test_coincident_points(self):
        X = np.zeros((6, 2))
        assert alpha_jensen(X, Partition.from_labels(np.zeros(6, int)), 2, EntropyConfig(m=2)) == 0.0


class TestEta:
    @pytest.mark.parametrize("delta, eta", [(0, 1.0), (1, 0.5), (3, 0.25)])
    def test_values(self, delta, eta):
        assert objective_eta(delta) == eta

    def test_negative(self):
        with pytest.raises(ValueError):
            objective_eta(-0.1)

    @given(st.floats(0, 1e6), st.floats(0, 1e6))
    def test_monotone(self, a, b):
        lo, hi = sorted((a, b))
        assert objective_eta(lo) >= objective_eta(hi)

    def test_strictly_decreasing_on_grid(self):
        etas = [objective_eta(d) for d in np.linspace(0, 50, 200)]
        assert all(x > y for x, y in zip(etas, etas[1:]))


@pytest.mark.parametrize("seed", range(10))
def test_component_entropies_match_per_component_graphs(seed):
    rng = np.random.default_rng(seed)
    X = np.vstack([rng.normal(size=(15, 3)), rng.normal(size=(20, 3)) + 9.0])
    k = 3
    part = connected_components(build_knn_graph(X, k))
    cfg = EntropyConfig(m=3)
    h_whole = renyi_entropy(build_knn_graph(X, k + 1), cfg)
    mixture = sum(c.size / len(X) * renyi_entropy(build_knn_graph(X[c], min(k, c.size - 1)), cfg)
                  for c in part.components if c.size > 1)
    assert alpha_jensen(X, part, k, cfg) == pytest.approx(max(h_whole - mixture, 0.0), rel=1e-12, abs=1e-12)

"""kNN entropic spanning graphs, Renyi entropy estimation and the alpha-Jensen difference.

All graphs are built by exact all-pairs search in the embedding space.  The
k nearest neighbours of a vertex are the first ``k`` entries of its row of
the distance matrix after a stable sort, so equal distances resolve to the
lower vertex index.  An undirected edge ``{u, v}`` is present whenever
either endpoint selects the other.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc
from scipy.spatial.distance import cdist
from scipy.special import logsumexp

from .dissimilarity import EmbeddedPoints
from .exceptions import DataError, DegenerateError


@dataclass
class KnnGraph:
    """Undirected weighted graph stored as edge arrays with ``u < v``.

    Edges are sorted lexicographically by ``(u, v)``.
    """

    n_vertices: int
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    k: int

    @property
    def n_edges(self) -> int:
        return int(self.u.size)

    def edges(self) -> list[tuple[int, int, float]]:
        return [(int(a), int(b), float(c)) for a, b, c in zip(self.u, self.v, self.w)]

    def degrees(self) -> np.ndarray:
        return np.bincount(np.concatenate([self.u, self.v]), minlength=self.n_vertices)

    def subgraph(self, vertices) -> "KnnGraph":
        """Induced subgraph on ``vertices``, relabelled ``0..len(vertices)-1`` in the given order."""
        vertices = np.asarray(vertices, dtype=int)
        relabel = np.full(self.n_vertices, -1)
        relabel[vertices] = np.arange(vertices.size)
        keep = (relabel[self.u] >= 0) & (relabel[self.v] >= 0)
        a, b = relabel[self.u[keep]], relabel[self.v[keep]]
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        order = np.lexsort((hi, lo))
        return KnnGraph(int(vertices.size), lo[order], hi[order], self.w[keep][order], self.k)

    def to_edge_list(self) -> str:
        """One ``u v w`` line per edge, weights with 17 significant digits."""
        return "".join(f"{a} {b} {c:.17g}\n" for a, b, c in self.edges())


@dataclass
class Partition:
    """Connected components, ordered by their smallest member vertex."""

    labels: np.ndarray
    components: list[np.ndarray]

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        """Partition from arbitrary group labels, renumbered by smallest member."""
        labels = np.asarray(labels)
        _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
        rank = np.empty(first.size, dtype=int)
        rank[np.argsort(first)] = np.arange(first.size)
        ids = rank[inverse.ravel()]
        return cls(ids, [np.flatnonzero(ids == c) for c in range(first.size)])

    @property
    def d(self) -> int:
        return len(self.components)

    @property
    def sizes(self) -> np.ndarray:
        return np.array([c.size for c in self.components])


@dataclass(frozen=True)
class EntropyConfig:
    """Order ``alpha`` of the Renyi entropy and the embedding dimension ``m``.

    The edge-length exponent follows from ``alpha = (m - gamma) / m``.
    """

    m: int
    alpha: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if self.m < 1:
            raise ValueError("embedding dimension must be positive")

    @property
    def gamma(self) -> float:
        return self.m * (1.0 - self.alpha)


class NeighbourIndex:
    """Pairwise distances and neighbour ranking of a point set, computed once.

    Building graphs for several ``k`` from the same index avoids repeating
    the ``O(n^2 m)`` distance computation.
    """

    def __init__(self, points):
        X = points.matrix if isinstance(points, EmbeddedPoints) else np.asarray(points, dtype=float)
        X = np.atleast_2d(X)
        if X.shape[0] < 2:
            raise DataError("a kNN graph needs at least 2 points")
        self._set_distances(cdist(X, X, "euclidean"))

    def _set_distances(self, dist: np.ndarray) -> None:
        self.n = dist.shape[0]
        self.dist = dist
        ranked = dist.copy()
        np.fill_diagonal(ranked, np.inf)
        # stable sort: ties go to the lower vertex index; self sorts last
        self.order = np.argsort(ranked, axis=1, kind="stable")[:, : self.n - 1]

    def restrict(self, vertices) -> "NeighbourIndex":
        """Index over a subset of the vertices, relabelled in the given order."""
        vertices = np.asarray(vertices, dtype=int)
        sub = NeighbourIndex.__new__(NeighbourIndex)
        sub._set_distances(self.dist[np.ix_(vertices, vertices)])
        return sub

    def graph(self, k: int) -> KnnGraph:
        if not 1 <= k <= self.n - 1:
            raise DataError(f"k={k} out of range [1, {self.n - 1}]")
        rows = np.repeat(np.arange(self.n), k)
        cols = self.order[:, :k].ravel()
        lo, hi = np.minimum(rows, cols), np.maximum(rows, cols)
        keys = np.unique(lo * self.n + hi)
        u, v = keys // self.n, keys % self.n
        return KnnGraph(self.n, u, v, self.dist[u, v], k)


def build_knn_graph(points, k: int) -> KnnGraph:
    """Union-symmetrized kNN graph with exact Euclidean edge weights."""
    return NeighbourIndex(points).graph(k)


def connected_components(graph: KnnGraph) -> Partition:
    n = graph.n_vertices
    adj = coo_matrix((np.ones(graph.n_edges), (graph.u, graph.v)), shape=(n, n))
    _, raw = _cc(adj, directed=False)
    return Partition.from_labels(raw)


def _log_length(w: np.ndarray, gamma: float) -> float:
    positive = w[w > 0]
    if positive.size == 0:
        return -np.inf
    return float(logsumexp(gamma * np.log(positive)))


def log_graph_length(graph, gamma: float) -> float:
    """Natural log of ``L_gamma = sum_e |e|^gamma``, evaluated in log space.

    Zero-weight edges contribute nothing; a graph whose edges all have zero
    weight returns ``-inf``.  ``graph`` may also be a bare array of weights.
    """
    w = np.asarray(graph.w if isinstance(graph, KnnGraph) else graph, dtype=float)
    if w.size == 0:
        raise DegenerateError("degenerate component: graph has no edges")
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return _log_length(w, gamma)


def bias_term(m: int, gamma: float) -> float:
    """Log of the data-independent constant ``(gamma/2) ln(m / (2 pi e))``, or 0 when that is not positive."""
    beta = 0.5 * gamma * np.log(m / (2.0 * np.pi * np.e))
    return float(np.log(beta)) if beta > 0 else 0.0


def entropy_from_log_length(log_length: float, n: int, config: EntropyConfig) -> float:
    g = config.gamma
    return float(config.m / g * (log_length - config.alpha * np.log(n) - bias_term(config.m, g)))


def renyi_entropy(graph, config: EntropyConfig, n: int | None = None) -> float:
    """Graph-length estimate of the order-``alpha`` Renyi entropy (natural log).

    ``n`` defaults to the number of vertices of ``graph``.
    """
    if n is None:
        n = graph.n_vertices
    if n < 2:
        raise DegenerateError("degenerate component: fewer than 2 samples")
    return entropy_from_log_length(log_graph_length(graph, config.gamma), n, config)


def _jensen(index: NeighbourIndex, labels: np.ndarray, sizes: np.ndarray, k: int,
            whole_k: int, config: EntropyConfig) -> float:
    n = index.n
    whole = index.graph(whole_k)
    log_whole = _log_length(whole.w, config.gamma)
    if not np.isfinite(log_whole):
        # every edge has zero length: all points coincide, nothing to separate
        return 0.0
    h_whole = entropy_from_log_length(log_whole, n, config)

    sub = whole if whole_k == k else index.graph(k)
    closed = np.array_equal(labels[sub.u], labels[sub.v])
    mixture = 0.0
    for c, size in enumerate(sizes):
        if size < 2:
            continue
        if closed:
            # components of the k-NN graph: their kNN graphs are the induced subgraphs
            w = sub.w[labels[sub.u] == c]
        else:
            members = np.flatnonzero(labels == c)
            w = index.restrict(members).graph(min(k, int(size) - 1)).w
        log_c = _log_length(w, config.gamma)
        if np.isfinite(log_c):
            mixture += size / n * entropy_from_log_length(log_c, int(size), config)
    return float(max(h_whole - mixture, 0.0))


def alpha_jensen(points, partition: Partition, k: int, config: EntropyConfig,
                 whole_k: int | None = None) -> float:
    """Estimated alpha-Jensen difference between the components of a kNN graph.

    The whole-set entropy uses the ``(k+1)``-NN graph over all points (or the
    ``whole_k``-NN graph when given); each group's entropy uses a k-NN graph
    over that group's points with its own sample count.  For partitions into
    connected components of the k-NN graph this is the induced subgraph.  Groups
    with fewer than two vertices, or whose edges all have zero length,
    contribute zero entropy but keep their mixture weight.  The result is
    clamped at zero.
    """
    index = points if isinstance(points, NeighbourIndex) else NeighbourIndex(points)
    if whole_k is None:
        whole_k = k + 1
    return _jensen(index, partition.labels, partition.sizes, k, whole_k, config)


def objective_eta(delta: float) -> float:
    """Map a non-negative Jensen difference to ``1 / (1 + delta)``."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    return 1.0 / (1.0 + delta)

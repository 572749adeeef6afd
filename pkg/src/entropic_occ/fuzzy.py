"""Fuzzy membership from closeness centrality inside each decision region.

Every connected component of the trained graph becomes a fuzzy set.  A
vertex's centrality is ``chi(v) = sum_{u != v} 2 ** -dist(v, u)`` with
``dist`` the weighted shortest-path length; its deficit with respect to the
most central vertex is mapped through a Gaussian kernel whose width is a
percentile of the deficits seen during training.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dissimilarity import embed
from .exceptions import DataError
from .graph import KnnGraph, NeighbourIndex


def all_pairs_shortest_paths(graph: KnnGraph) -> np.ndarray:
    """Dense Floyd-Warshall; unreachable pairs are ``inf``."""
    n = graph.n_vertices
    D = np.full((n, n), np.inf)
    np.fill_diagonal(D, 0.0)
    D[graph.u, graph.v] = graph.w
    D[graph.v, graph.u] = graph.w
    for k in range(n):
        np.minimum(D, D[:, k, None] + D[None, k, :], out=D)
    return D


def closeness_centrality(graph: KnnGraph) -> np.ndarray:
    """Per-vertex ``sum_{u != v} 2 ** -d(v, u)``; unreachable vertices add 0."""
    if graph.n_vertices == 1:
        return np.zeros(1)
    P = np.exp2(-all_pairs_shortest_paths(graph))
    np.fill_diagonal(P, 0.0)
    return P.sum(axis=1)


@dataclass
class CentralityProfile:
    centrality: np.ndarray
    chi_star: float
    differences: np.ndarray
    threshold: float


def centrality_profile(graph: KnnGraph, percentile: float = 50.0) -> CentralityProfile:
    if not 0 < percentile <= 100:
        raise ValueError("percentile must lie in (0, 100]")
    chi = closeness_centrality(graph)
    chi_star = float(chi.max())
    diffs = chi_star - chi
    return CentralityProfile(chi, chi_star, diffs, float(np.percentile(diffs, percentile)))


def membership_degree(chi_hat_v: float, threshold: float) -> float:
    """Gaussian kernel ``exp(-chi_hat_v^2 / (2 threshold^2))``.

    A zero threshold gives the pointwise limit: 1 for a zero deficit, else 0.
    """
    if chi_hat_v < 0 or threshold < 0:
        raise ValueError("centrality deficits must be non-negative")
    if threshold == 0:
        return 1.0 if chi_hat_v == 0 else 0.0
    return float(np.exp(-(chi_hat_v ** 2) / (2.0 * threshold ** 2)))


@dataclass
class Decision:
    membership: float
    accepted: bool
    component: int
    memberships: list[float]
    deficits: list[float]


def _insert_and_measure(rows: np.ndarray, x_row: np.ndarray, k: int) -> tuple[float, float]:
    """Centrality deficit of ``x_row`` after adding it to ``rows`` and rebuilding the kNN graph."""
    pts = np.vstack([rows, x_row[None, :]])
    graph = NeighbourIndex(pts).graph(min(k, pts.shape[0] - 1))
    chi = closeness_centrality(graph)
    chi_star = float(chi.max())
    return chi_star, max(chi_star - float(chi[-1]), 0.0)


def score_embedded(model, x_row: np.ndarray) -> Decision:
    """Score an already embedded sample against every decision region of ``model``."""
    if model.thresholds is None or len(model.thresholds) != model.partition.d:
        raise DataError("model lacks per-component centrality thresholds")
    X = model.embedded_train.matrix
    memberships, deficits = [], []
    for comp, thr in zip(model.partition.components, model.thresholds):
        _, deficit = _insert_and_measure(X[comp], x_row, model.k_star)
        memberships.append(membership_degree(deficit, thr))
        deficits.append(deficit)
    j = int(np.argmax(memberships))
    accepted = bool(deficits[j] <= model.thresholds[j])
    return Decision(memberships[j], accepted, j, memberships, deficits)


def score_sample(model, x) -> Decision:
    """Membership degree and binary decision for a raw sample ``x``.

    ``x`` is embedded against the model's prototypes with its trained
    parameters, then inserted into each region in turn.  The training-time
    percentile thresholds are reused unchanged.
    """
    protos = model.prototypes
    row = embed([x], protos, model.p_star, model.measure, kind=protos.kind,
                alphabet=model.alphabet).matrix[0]
    return score_embedded(model, row)


def score_samples(model, samples) -> list[Decision]:
    """Vectorised embedding followed by per-sample scoring."""
    protos = model.prototypes
    rows = embed(samples, protos, model.p_star, model.measure, kind=protos.kind,
                 alphabet=model.alphabet).matrix
    return [score_embedded(model, r) for r in rows]

"""Parametric dissimilarity measures and the dissimilarity-space embedding.

A sample ``x`` is mapped to the row vector ``(d(x, r_1), ..., d(x, r_m))`` of
its dissimilarities to ``m`` prototype samples.  Two measures are provided:

* ``"weighted_euclidean"`` for numeric vectors, ``sqrt(sum_i p_i (x_i - y_i)^2)``
  with ``p`` in ``[0, 1]^F``;
* ``"weighted_edit"`` for symbol sequences, a Levenshtein distance with
  per-operation costs ``p = (w_ins, w_del, w_sub)`` in ``(0, 1]^3``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .exceptions import DataError

VECTOR = "vector"
SEQUENCE = "sequence"

WEIGHTED_EUCLIDEAN = "weighted_euclidean"
WEIGHTED_EDIT = "weighted_edit"
MEASURES = (WEIGHTED_EUCLIDEAN, WEIGHTED_EDIT)

# lower bound for edit costs; the box (0, 1] is open at zero
EDIT_COST_FLOOR = 1e-3
DEFAULT_MAX_PROTOTYPES = 500


@dataclass
class Dataset:
    """An ordered, homogeneous collection of samples.

    ``samples`` is an ``(n, F)`` float array for vector data, or a list of
    tuples of symbols for sequence data.  ``labels`` is either ``None`` or a
    list of strings aligned with ``samples``.
    """

    samples: object
    kind: str = VECTOR
    labels: list[str] | None = None
    alphabet: tuple[str, ...] | None = None
    name: str = "dataset"

    def __post_init__(self):
        if self.kind == VECTOR:
            arr = np.asarray(self.samples, dtype=float)
            if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
                raise DataError("vector dataset must be a non-empty 2-D array")
            if not np.all(np.isfinite(arr)):
                raise DataError("vector dataset contains NaN or Inf")
            self.samples = arr
        elif self.kind == SEQUENCE:
            seqs = [tuple(s) for s in self.samples]
            if not seqs:
                raise DataError("sequence dataset is empty")
            symbols = sorted({c for s in seqs for c in s})
            if self.alphabet is None:
                self.alphabet = tuple(symbols)
            else:
                self.alphabet = tuple(self.alphabet)
                unknown = set(symbols) - set(self.alphabet)
                if unknown:
                    raise DataError(f"symbols outside alphabet: {sorted(unknown)}")
            self.samples = seqs
        else:
            raise DataError(f"unknown dataset kind {self.kind!r}")
        if self.labels is not None:
            self.labels = [str(lab) for lab in self.labels]
            if len(self.labels) != len(self):
                raise DataError("labels and samples differ in length")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def n_features(self) -> int | None:
        return self.samples.shape[1] if self.kind == VECTOR else None

    def subset(self, indices) -> "Dataset":
        indices = [int(i) for i in indices]
        if self.kind == VECTOR:
            samples = self.samples[indices]
        else:
            samples = [self.samples[i] for i in indices]
        labels = None if self.labels is None else [self.labels[i] for i in indices]
        return Dataset(samples, self.kind, labels, self.alphabet, self.name)


@dataclass
class MeasureParams:
    """Parameter vector ``p`` of a dissimilarity measure with its box bounds."""

    values: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).ravel()
        self.lower = np.broadcast_to(np.asarray(self.lower, dtype=float), self.values.shape).copy()
        self.upper = np.broadcast_to(np.asarray(self.upper, dtype=float), self.values.shape).copy()
        if self.values.size == 0:
            raise DataError("empty parameter vector")
        if np.any(self.values < self.lower) or np.any(self.values > self.upper):
            raise DataError("parameter value outside its bounds")

    def __len__(self) -> int:
        return self.values.size

    def with_values(self, values) -> "MeasureParams":
        return MeasureParams(values, self.lower, self.upper)


def default_params(measure: str, dataset: Dataset) -> MeasureParams:
    """The neutral parameter point of ``measure``: unit weights or unit costs."""
    check_compatible(measure, dataset.kind)
    if measure == WEIGHTED_EUCLIDEAN:
        f = dataset.n_features
        return MeasureParams(np.ones(f), np.zeros(f), np.ones(f))
    return MeasureParams(np.ones(3), np.full(3, EDIT_COST_FLOOR), np.ones(3))


def check_compatible(measure: str, kind: str) -> None:
    expected = {WEIGHTED_EUCLIDEAN: VECTOR, WEIGHTED_EDIT: SEQUENCE}
    if measure not in expected:
        raise DataError(f"unknown measure {measure!r}")
    if expected[measure] != kind:
        raise DataError(f"measure {measure!r} cannot be applied to {kind} samples")


def _weights(p) -> np.ndarray:
    return np.asarray(p.values if isinstance(p, MeasureParams) else p, dtype=float).ravel()


def weighted_euclidean(x, y, p) -> float:
    """``sqrt(sum_i p_i (x_i - y_i)^2)`` for two equal-length real vectors."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    w = _weights(p)
    if x.shape != y.shape or w.shape != x.shape:
        raise DataError(f"dimension mismatch: {x.size}, {y.size}, {w.size} weights")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise DataError("non-finite input vector")
    return float(cdist(x[None, :], y[None, :], "euclidean", w=w)[0, 0])


def weighted_edit_distance(s: Sequence, t: Sequence, p, alphabet=None) -> float:
    """Levenshtein distance with insertion, deletion and substitution costs.

    Deleting a symbol of ``s`` costs ``w_del``, inserting a symbol of ``t``
    costs ``w_ins`` and replacing one symbol by a different one costs
    ``w_sub``.
    """
    w = _weights(p)
    if w.size != 3:
        raise DataError("edit distance needs exactly 3 parameters (ins, del, sub)")
    w_ins, w_del, w_sub = (float(c) for c in w)
    if alphabet is not None:
        allowed = set(alphabet)
        if not (set(s) <= allowed and set(t) <= allowed):
            raise DataError("symbol outside the declared alphabet")

    prev = [j * w_ins for j in range(len(t) + 1)]
    for i, a in enumerate(s, start=1):
        cur = [i * w_del]
        for j, b in enumerate(t, start=1):
            cur.append(min(
                prev[j] + w_del,
                cur[j - 1] + w_ins,
                prev[j - 1] + (0.0 if a == b else w_sub),
            ))
        prev = cur
    return prev[-1]


@dataclass
class PrototypeSet:
    """Indices of the representation set in the training data, with copies of the samples."""

    indices: list[int]
    samples: object
    kind: str = VECTOR

    def __len__(self) -> int:
        return len(self.indices)


def select_prototypes(dataset: Dataset, max_size: int = DEFAULT_MAX_PROTOTYPES,
                      seed: int = 0) -> PrototypeSet:
    """All samples when ``n <= max_size``, else a seeded uniform subsample.

    Sub-sampled indices are returned in increasing order.
    """
    if max_size < 2:
        raise DataError("max_size must be at least 2")
    n = len(dataset)
    if n <= max_size:
        indices = list(range(n))
    else:
        rng = np.random.default_rng(seed)
        indices = sorted(int(i) for i in rng.choice(n, size=max_size, replace=False))
    sub = dataset.subset(indices)
    return PrototypeSet(indices, sub.samples, dataset.kind)


@dataclass
class EmbeddedPoints:
    """Rows of the dissimilarity matrix; ``matrix[i, j] = d(x_i, r_j)``."""

    matrix: np.ndarray
    prototype_indices: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=float)
        if self.matrix.ndim != 2:
            raise DataError("embedding must be 2-D")
        if not np.all(np.isfinite(self.matrix)) or np.any(self.matrix < 0):
            raise DataError("embedding entries must be finite and non-negative")

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def m(self) -> int:
        return self.matrix.shape[1]


def embed(samples, prototypes: PrototypeSet, p, measure: str,
          kind: str | None = None, alphabet=None) -> EmbeddedPoints:
    """Dissimilarity-space representation of ``samples`` against ``prototypes``.

    ``samples`` may be a :class:`Dataset` or raw samples of the same kind as
    the prototypes.
    """
    if isinstance(samples, Dataset):
        kind = samples.kind
        alphabet = samples.alphabet if alphabet is None else alphabet
        samples = samples.samples
    kind = kind or prototypes.kind
    check_compatible(measure, kind)
    if kind != prototypes.kind:
        raise DataError("samples and prototypes are of different kinds")
    if len(prototypes) == 0:
        raise DataError("empty prototype set")
    w = _weights(p)

    if measure == WEIGHTED_EUCLIDEAN:
        X = np.atleast_2d(np.asarray(samples, dtype=float))
        R = np.atleast_2d(np.asarray(prototypes.samples, dtype=float))
        if X.shape[1] != R.shape[1] or w.size != X.shape[1]:
            raise DataError("dimension mismatch between samples, prototypes and weights")
        if not np.all(np.isfinite(X)):
            raise DataError("non-finite input vector")
        D = cdist(X, R, "euclidean", w=w)
    else:
        rows = [[weighted_edit_distance(s, r, w, alphabet) for r in prototypes.samples]
                for s in samples]
        D = np.array(rows, dtype=float).reshape(len(rows), len(prototypes))
    return EmbeddedPoints(D, list(prototypes.indices))

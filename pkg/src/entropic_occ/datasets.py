"""Dataset ingestion (CSV vectors, line-oriented sequences) and synthetic generators."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dissimilarity import SEQUENCE, VECTOR, Dataset
from .exceptions import DataError

GENERATORS = ("gaussians3", "uniform", "crescent_full_moon", "highdim2")


def load_csv(path, label_col=None, name=None) -> Dataset:
    """Vector dataset from a CSV file with a header row.

    ``label_col`` selects the label column by header name or 0-based index;
    every other column must be numeric and finite.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DataError(f"{path}: empty file")
    header, body = rows[0], [r for r in rows[1:] if r]
    if not body:
        raise DataError(f"{path}: no data rows")

    label_idx = None
    if label_col is not None:
        if isinstance(label_col, int) or str(label_col).lstrip("-").isdigit():
            label_idx = int(label_col)
            if not -len(header) <= label_idx < len(header):
                raise DataError(f"{path}: label column index {label_idx} out of range")
            label_idx %= len(header)
        elif label_col in header:
            label_idx = header.index(label_col)
        else:
            raise DataError(f"{path}: no column named {label_col!r}")

    values, labels = [], []
    for lineno, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise DataError(f"{path}, line {lineno}: expected {len(header)} fields, got {len(row)}")
        feats = []
        for j, cell in enumerate(row):
            if j == label_idx:
                labels.append(cell.strip())
                continue
            try:
                val = float(cell)
            except ValueError:
                raise DataError(f"{path}, line {lineno}: non-numeric value {cell!r}") from None
            if not math.isfinite(val):
                raise DataError(f"{path}, line {lineno}: non-finite value {cell!r}")
            feats.append(val)
        values.append(feats)
    return Dataset(np.array(values), VECTOR, labels if label_idx is not None else None,
                   name=name or path.stem)


def load_sequences(path, name=None) -> Dataset:
    """One sequence per line, optionally followed by a tab and a label.

    Each character is a symbol; the alphabet is every symbol seen in the file.
    """
    path = Path(path)
    seqs, labels = [], []
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            seq, sep, label = line.partition("\t")
            if not seq:
                raise DataError(f"{path}, line {lineno}: empty sequence")
            seqs.append(tuple(seq))
            labels.append(label.strip() if sep else None)
    if not seqs:
        raise DataError(f"{path}: no sequences")
    have = [lab is not None for lab in labels]
    if any(have) and not all(have):
        raise DataError(f"{path}: labels given for some lines only")
    return Dataset(seqs, SEQUENCE, labels if all(have) else None, name=name or path.stem)


def load_dataset(path, fmt="csv", label_col=None) -> Dataset:
    if fmt == "csv":
        return load_csv(path, label_col)
    if fmt == "seq":
        return load_sequences(path)
    raise DataError(f"unknown format {fmt!r}")


@dataclass
class SyntheticSpec:
    generator: str
    n: int = 90
    dim: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise DataError(f"unknown generator {self.generator!r}; choose from {GENERATORS}")
        if self.n < 10:
            raise DataError("synthetic datasets need at least 10 samples")


def _split(n: int, parts: int) -> list[int]:
    return [n // parts + (1 if i < n % parts else 0) for i in range(parts)]


def gaussians3(n=90, seed=0, sigma=0.05) -> Dataset:
    """Three isotropic 2-D blobs on an equilateral triangle of side ``12 sigma``."""
    rng = np.random.default_rng(seed)
    side = 12 * sigma
    centres = side * np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
    X, y = [], []
    for c, size in enumerate(_split(n, 3)):
        X.append(centres[c] + sigma * rng.standard_normal((size, 2)))
        y += [f"blob{c}"] * size
    return Dataset(np.vstack(X), VECTOR, y, name="gaussians3")


def uniform(n=100, seed=0) -> Dataset:
    rng = np.random.default_rng(seed)
    return Dataset(rng.uniform(0.0, 1.0, (n, 2)), VECTOR, ["uniform"] * n, name="uniform")


def crescent_full_moon(n=200, seed=0, r_moon=1 / 6, r_inner=1 / 3, r_outer=0.5) -> Dataset:
    """A uniformly filled disc and, around it, the lower half of an annulus.

    Half the points go to each part; radii keep the ``1 : 2 : 3`` proportions
    of the classic ``(5, 10, 15)`` construction with an outer radius of 0.5.
    """
    rng = np.random.default_rng(seed)
    n_moon, n_cres = _split(n, 2)
    r = r_moon * np.sqrt(rng.uniform(0, 1, n_moon))
    t = rng.uniform(0, 2 * np.pi, n_moon)
    moon = np.column_stack([r * np.cos(t), r * np.sin(t)])
    r = np.sqrt(rng.uniform(r_inner ** 2, r_outer ** 2, n_cres))
    t = rng.uniform(np.pi, 2 * np.pi, n_cres)
    crescent = np.column_stack([r * np.cos(t), r * np.sin(t)])
    return Dataset(np.vstack([moon, crescent]), VECTOR,
                   ["moon"] * n_moon + ["crescent"] * n_cres, name="crescent_full_moon")


def highdim2(n=100, dim=100, seed=0, sigma=0.01, spread_ratio=2.0, separation=60.0) -> Dataset:
    """Two isotropic Gaussian clusters whose centres are ``separation * sigma`` apart.

    The first cluster has standard deviation ``sigma``, the second
    ``spread_ratio * sigma``.
    """
    rng = np.random.default_rng(seed)
    direction = rng.standard_normal(dim)
    direction /= np.linalg.norm(direction)
    offset = 0.5 * separation * sigma * direction
    sizes = _split(n, 2)
    X = np.vstack([-offset + sigma * rng.standard_normal((sizes[0], dim)),
                   offset + spread_ratio * sigma * rng.standard_normal((sizes[1], dim))])
    return Dataset(X, VECTOR, ["a"] * sizes[0] + ["b"] * sizes[1], name="highdim2")


def generate_synthetic(spec: SyntheticSpec) -> Dataset:
    if spec.generator == "gaussians3":
        return gaussians3(spec.n, spec.seed)
    if spec.generator == "uniform":
        return uniform(spec.n, spec.seed)
    if spec.generator == "crescent_full_moon":
        return crescent_full_moon(spec.n, spec.seed)
    return highdim2(spec.n, spec.dim, spec.seed)

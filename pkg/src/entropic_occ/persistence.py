"""JSON serialisation of trained models.

Floats are written with Python's shortest round-trip representation, so a
saved model reloads bit-for-bit and scores identically.
"""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .dissimilarity import SEQUENCE, EmbeddedPoints, MeasureParams, PrototypeSet
from .exceptions import DataError
from .graph import Partition
from .trainer import TrainedModel

FORMAT_VERSION = 1


def atomic_write_text(path, text: str) -> None:
    """Write ``text`` to a temporary sibling file, then rename it over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _floats(a) -> list:
    return np.asarray(a, dtype=float).tolist()


def model_to_dict(model: TrainedModel) -> dict:
    protos = model.prototypes
    if protos.kind == SEQUENCE:
        samples = [list(s) for s in protos.samples]
    else:
        samples = _floats(protos.samples)
    return {
        "format_version": FORMAT_VERSION,
        "measure": model.measure,
        "p_star": {
            "values": _floats(model.p_star.values),
            "lower": _floats(model.p_star.lower),
            "upper": _floats(model.p_star.upper),
        },
        "k_star": int(model.k_star),
        "alpha": float(model.alpha),
        "gamma": float(model.gamma),
        "percentile_l": float(model.percentile_l),
        "prototypes": {"kind": protos.kind, "indices": [int(i) for i in protos.indices],
                       "samples": samples},
        "alphabet": None if model.alphabet is None else list(model.alphabet),
        "embedded_train": _floats(model.embedded_train.matrix),
        "components": [[int(v) for v in c] for c in model.partition.components],
        "chi_star": [float(c) for c in model.chi_star],
        "thresholds": [float(t) for t in model.thresholds],
        "seed": int(model.seed),
        "eta": float(model.eta),
        "iterations": int(model.iterations),
        "history": [float(h) for h in model.history],
    }


def model_from_dict(doc: dict) -> TrainedModel:
    try:
        if doc["format_version"] != FORMAT_VERSION:
            raise DataError(f"unsupported model format version {doc['format_version']}")
        kind = doc["prototypes"]["kind"]
        raw = doc["prototypes"]["samples"]
        samples = [tuple(s) for s in raw] if kind == SEQUENCE else np.array(raw, dtype=float)
        protos = PrototypeSet(list(doc["prototypes"]["indices"]), samples, kind)
        components = [np.array(c, dtype=int) for c in doc["components"]]
        matrix = np.array(doc["embedded_train"], dtype=float)
        labels = np.empty(matrix.shape[0], dtype=int)
        for c, members in enumerate(components):
            labels[members] = c
        p = doc["p_star"]
        return TrainedModel(
            measure=doc["measure"],
            p_star=MeasureParams(p["values"], p["lower"], p["upper"]),
            k_star=int(doc["k_star"]),
            prototypes=protos,
            embedded_train=EmbeddedPoints(matrix, list(protos.indices)),
            partition=Partition(labels, components),
            chi_star=list(doc["chi_star"]),
            thresholds=list(doc["thresholds"]),
            alpha=float(doc["alpha"]),
            percentile_l=float(doc["percentile_l"]),
            eta=float(doc["eta"]),
            iterations=int(doc["iterations"]),
            seed=int(doc["seed"]),
            alphabet=None if doc.get("alphabet") is None else tuple(doc["alphabet"]),
            history=list(doc.get("history", [])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DataError):
            raise
        raise DataError(f"malformed model document: {exc}") from exc


def dumps_model(model: TrainedModel) -> str:
    return json.dumps(model_to_dict(model), indent=1) + "\n"


def save_model(model: TrainedModel, path) -> None:
    atomic_write_text(path, dumps_model(model))


def load_model(path) -> TrainedModel:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: not a JSON model file ({exc})") from exc
    return model_from_dict(doc)

import json

import numpy as np
import pytest

from entropic_occ.datasets import SyntheticSpec, generate_synthetic
from entropic_occ.dissimilarity import Dataset
from entropic_occ.exceptions import DataError
from entropic_occ.fuzzy import score_samples
from entropic_occ.persistence import dumps_model, load_model, model_from_dict, model_to_dict, save_model
from entropic_occ.trainer import TrainerConfig, train


@pytest.fixture(scope="module")
def model_and_data():
    ds = generate_synthetic(SyntheticSpec("crescent_full_moon", n=120, seed=2))
    return train(ds, config=TrainerConfig(seed=2)), ds


def test_round_trip_scores_bit_identical(tmp_path, model_and_data):
    model, ds = model_and_data
    path = tmp_path / "m.json"
    save_model(model, path)
    loaded = load_model(path)
    probes = ds.samples[::7] + 0.003
    assert [d.membership for d in score_samples(model, probes)] == \
           [d.membership for d in score_samples(loaded, probes)]
    assert loaded.p_star.values.tobytes() == model.p_star.values.tobytes()
    assert loaded.embedded_train.matrix.tobytes() == model.embedded_train.matrix.tobytes()
    assert loaded.partition.labels.tolist() == model.partition.labels.tolist()
    assert (loaded.k_star, loaded.eta, loaded.history) == (model.k_star, model.eta, model.history)


def test_same_seed_same_file(model_and_data):
    model, ds = model_and_data
    again = train(ds, config=TrainerConfig(seed=2))
    assert dumps_model(again) == dumps_model(model)


def test_document_fields(model_and_data):
    doc = model_to_dict(model_and_data[0])
    for key in ("measure", "p_star", "k_star", "alpha", "gamma", "percentile_l", "prototypes",
                "components", "chi_star", "thresholds", "seed"):
        assert key in doc
    assert len(doc["thresholds"]) == len(doc["components"])


def test_sequence_model_round_trip(tmp_path):
    seqs = ["abab", "abba", "aabb", "baba", "bbaa", "ccdd", "cdcd", "dcdc", "ddcc", "cddc"]
    model = train(Dataset(seqs, kind="sequence"), "weighted_edit",
                  TrainerConfig(max_iterations=2, population=4))
    save_model(model, tmp_path / "s.json")
    loaded = load_model(tmp_path / "s.json")
    assert loaded.alphabet == model.alphabet
    assert [d.membership for d in score_samples(loaded, ["abab", "dddd"])] == \
           [d.membership for d in score_samples(model, ["abab", "dddd"])]


def test_malformed(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(DataError):
        load_model(bad)
    with pytest.raises(DataError):
        model_from_dict({"format_version": 1})
    with pytest.raises(DataError):
        model_from_dict({"format_version": 99})


def test_atomic_write_leaves_no_temp_files(tmp_path, model_and_data):
    save_model(model_and_data[0], tmp_path / "m.json")
    assert [p.name for p in tmp_path.iterdir()] == ["m.json"]
    json.loads((tmp_path / "m.json").read_text())
    assert np.isfinite(model_and_data[0].eta)

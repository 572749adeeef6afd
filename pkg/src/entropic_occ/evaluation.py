"""AUC evaluation of the one-class classifier under a fixed split protocol."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import rankdata

from .dissimilarity import Dataset
from .exceptions import DataError
from .fuzzy import score_samples
from .trainer import TrainerConfig, train

PROTOCOL = (
    "protocol v1: per repeat r, nominal class shuffled with seed (seed, r) and split "
    "50/50 into train/test; model trained on the nominal train half with trainer seed "
    "seed + r; test set = nominal test half + all non-nominal samples; "
    "AUC of membership degrees (Mann-Whitney, ties count 1/2)"
)
MIN_NOMINAL = 8


def compute_auc(nominal_scores, outlier_scores) -> float:
    """Probability that a nominal score exceeds an outlier score, ties counting 1/2."""
    pos = np.asarray(nominal_scores, dtype=float).ravel()
    neg = np.asarray(outlier_scores, dtype=float).ravel()
    if pos.size == 0 or neg.size == 0:
        raise DataError("AUC needs at least one nominal and one outlier score")
    ranks = rankdata(np.concatenate([pos, neg]))
    u = ranks[: pos.size].sum() - pos.size * (pos.size + 1) / 2.0
    return float(u / (pos.size * neg.size))


@dataclass
class EvalReport:
    aucs: list[float]
    n_nominal_test: int
    n_outlier_test: int
    seeds: list[int] = field(default_factory=list)
    protocol: str = PROTOCOL
    # trained model of each repeat; kept in memory only, never written to the CSV
    models: list = field(default_factory=list, repr=False, compare=False)

    @property
    def auc(self) -> float:
        return float(np.mean(self.aucs))

    @property
    def mean(self) -> float:
        return self.auc

    @property
    def std(self) -> float:
        return float(np.std(self.aucs))

    def to_csv(self) -> str:
        lines = [f"# {self.protocol}",
                 "repeat,trainer_seed,auc,n_nominal_test,n_outlier_test"]
        for r, (seed, auc) in enumerate(zip(self.seeds, self.aucs)):
            lines.append(f"{r},{seed},{auc!r},{self.n_nominal_test},{self.n_outlier_test}")
        lines.append(f"# mean,{self.mean!r}")
        lines.append(f"# std,{self.std!r}")
        return "\n".join(lines) + "\n"


def split_nominal(indices, fraction: float, rng: np.random.Generator):
    perm = rng.permutation(np.asarray(indices))
    cut = int(round(fraction * perm.size))
    return np.sort(perm[:cut]), np.sort(perm[cut:])


def run_experiment(dataset: Dataset, nominal: str, split_fraction: float = 0.5,
                   repeats: int = 10, config: TrainerConfig | None = None,
                   measure: str = "weighted_euclidean") -> EvalReport:
    """Repeated train/test evaluation with one class declared nominal."""
    config = config or TrainerConfig()
    if dataset.labels is None:
        raise DataError("evaluation needs a labelled dataset")
    labels = np.array(dataset.labels)
    nominal_idx = np.flatnonzero(labels == str(nominal))
    outlier_idx = np.flatnonzero(labels != str(nominal))
    if nominal_idx.size == 0:
        raise DataError(f"nominal label {nominal!r} not present in the dataset")
    if nominal_idx.size < MIN_NOMINAL:
        raise DataError(f"nominal class has {nominal_idx.size} samples, need {MIN_NOMINAL}")
    if outlier_idx.size == 0:
        raise DataError("no non-nominal samples to evaluate against")
    if not 0 < split_fraction < 1:
        raise DataError("split fraction must lie in (0, 1)")

    outliers = dataset.subset(outlier_idx)
    aucs, seeds, models = [], [], []
    n_test = 0
    for r in range(repeats):
        rng = np.random.default_rng([config.seed, r])
        train_idx, test_idx = split_nominal(nominal_idx, split_fraction, rng)
        run_cfg = dataclasses.replace(config, seed=config.seed + r)
        model = train(dataset.subset(train_idx), measure, run_cfg)
        nominal_scores = [d.membership for d in score_samples(model, dataset.subset(test_idx).samples)]
        outlier_scores = [d.membership for d in score_samples(model, outliers.samples)]
        aucs.append(compute_auc(nominal_scores, outlier_scores))
        seeds.append(run_cfg.seed)
        models.append(model)
        n_test = test_idx.size
    return EvalReport(aucs, n_test, int(outlier_idx.size), seeds, models=models)

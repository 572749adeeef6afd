"""One-class classification with kNN entropic spanning graphs.

Training embeds the nominal samples in a dissimilarity space, searches the
measure parameters and the neighbourhood size that maximise the
alpha-Jensen difference between the connected components of a kNN graph,
and keeps those components as decision regions.  Test samples are scored by
their closeness centrality after insertion into each region.
"""
from .datasets import SyntheticSpec, generate_synthetic, load_csv, load_dataset, load_sequences
from .dissimilarity import (
    Dataset,
    EmbeddedPoints,
    MeasureParams,
    PrototypeSet,
    embed,
    select_prototypes,
    weighted_edit_distance,
    weighted_euclidean,
)
from .evaluation import EvalReport, compute_auc, run_experiment
from .exceptions import DataError, DegenerateError, EntropicOCCError
from .fuzzy import (
    Decision,
    centrality_profile,
    closeness_centrality,
    membership_degree,
    score_sample,
    score_samples,
)
from .graph import (
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
from .persistence import load_model, save_model
from .trainer import TrainedModel, TrainerConfig, evaluate_candidate, train

__version__ = "0.1.0"

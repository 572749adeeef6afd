"""Model synthesis: search over measure parameters and the neighbourhood size k.

For a fixed parameter vector ``p`` the training set is embedded once and
``k`` is decreased from ``floor(sqrt(n))`` towards 1.  At each ``k`` the
kNN graph is split into connected components and scored with
``eta = 1 / (1 + Delta)``, ``Delta`` being the alpha-Jensen difference
between the components.  The descent stops as soon as ``eta`` rises above
its value at the previous ``k``.  A real-coded genetic algorithm searches
``p`` to minimise the best ``eta`` found this way.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .dissimilarity import (
    DEFAULT_MAX_PROTOTYPES,
    Dataset,
    EmbeddedPoints,
    MeasureParams,
    PrototypeSet,
    check_compatible,
    default_params,
    embed,
    select_prototypes,
)
from .exceptions import DataError, DegenerateError
from .fuzzy import centrality_profile
from .graph import (
    EntropyConfig,
    NeighbourIndex,
    Partition,
    alpha_jensen,
    connected_components,
    objective_eta,
)

logger = logging.getLogger(__name__)


@dataclass
class TrainerConfig:
    tau: float = 0.05
    max_iterations: int = 50
    population: int = 20
    mutation_sigma: float = 0.1
    mutation_rate: float = 0.1
    crossover_rate: float = 0.9
    tournament: int = 3
    seed: int = 0
    alpha: float = 0.5
    percentile_l: float = 50.0
    max_train_size: int = DEFAULT_MAX_PROTOTYPES

    def __post_init__(self):
        if self.tau < 0:
            raise ValueError("tau must be non-negative")
        if self.population < 2:
            raise ValueError("population must be at least 2")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if not 0 < self.percentile_l <= 100:
            raise ValueError("percentile_l must lie in (0, 100]")
        if self.max_iterations < 0 or self.tournament < 1:
            raise ValueError("max_iterations must be >= 0 and tournament >= 1")


@dataclass
class CandidateResult:
    p: MeasureParams
    k_best: int
    eta: float
    partition: Partition
    trace: list[tuple[int, float]] = field(default_factory=list)


@dataclass
class TrainedModel:
    measure: str
    p_star: MeasureParams
    k_star: int
    prototypes: PrototypeSet
    embedded_train: EmbeddedPoints
    partition: Partition
    chi_star: list[float]
    thresholds: list[float]
    alpha: float
    percentile_l: float
    eta: float
    iterations: int
    seed: int
    alphabet: tuple[str, ...] | None = None
    history: list[float] = field(default_factory=list)

    @property
    def d(self) -> int:
        return self.partition.d

    @property
    def gamma(self) -> float:
        return self.embedded_train.m * (1.0 - self.alpha)


def k_start(n: int) -> int:
    return math.isqrt(n)


def greedy_descent(k0: int, evaluate):
    """Visit ``k = k0, k0-1, ..., 1`` until ``eta`` rises above the previous value.

    ``evaluate(k)`` returns ``(eta, payload)``.  The first visited ``k`` has
    no predecessor and never stops the loop.  Returns the visited iterate
    with the smallest ``eta`` (the earliest one on ties) as
    ``(k, eta, payload)``, together with the list of visited ``(k, eta)``.
    """
    best = None
    trace = []
    prev_eta = None
    for k in range(k0, 0, -1):
        eta, payload = evaluate(k)
        trace.append((k, eta))
        if best is None or eta < best[1]:
            best = (k, eta, payload)
        if prev_eta is not None and eta > prev_eta:
            break
        prev_eta = eta
    return best, trace


def descend_k(index: NeighbourIndex, config: EntropyConfig):
    """Inner loop over k for one embedding.

    Returns ``(k_best, eta_best, partition_best, trace)``.
    """
    n = index.n
    k0 = k_start(n)
    if k0 + 1 > n - 1:
        raise DataError(f"n={n} is too small for k={k0} with a (k+1)-NN whole graph")

    def evaluate(k):
        partition = connected_components(index.graph(k))
        return objective_eta(alpha_jensen(index, partition, k, config)), partition

    (k, eta, partition), trace = greedy_descent(k0, evaluate)
    return k, eta, partition, trace


def evaluate_candidate(dataset: Dataset, prototypes: PrototypeSet, p: MeasureParams,
                       config: TrainerConfig, measure: str) -> CandidateResult:
    """Fitness of one parameter vector: the best ``eta`` over the visited ``k``."""
    points = embed(dataset, prototypes, p, measure)
    index = NeighbourIndex(points)
    ent = EntropyConfig(points.m, config.alpha)
    k, eta, partition, trace = descend_k(index, ent)
    return CandidateResult(p, k, eta, partition, trace)


class GeneticSearch:
    """Real-coded GA over a box: tournament selection, uniform crossover,
    per-gene Gaussian mutation and a single elite.

    Offspring slot ``i`` of generation ``g`` draws from its own generator
    seeded with ``(seed, g, i)``, so results do not depend on the order in
    which fitness values are computed.
    """

    def __init__(self, lower, upper, config: TrainerConfig):
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        self.span = self.upper - self.lower
        self.config = config

    def _rng(self, generation: int, slot: int) -> np.random.Generator:
        return np.random.default_rng([self.config.seed, generation, slot])

    def initial(self, neutral) -> np.ndarray:
        cfg = self.config
        pop = np.empty((cfg.population, self.lower.size))
        pop[0] = neutral
        for i in range(1, cfg.population):
            pop[i] = self._rng(0, i).uniform(self.lower, self.upper)
        return pop

    def _tournament(self, rng, fitness) -> int:
        entrants = rng.choice(fitness.size, size=min(self.config.tournament, fitness.size),
                              replace=False)
        return int(entrants[np.argmin(fitness[entrants])])

    def offspring(self, pop: np.ndarray, fitness: np.ndarray, generation: int) -> np.ndarray:
        cfg = self.config
        new = np.empty_like(pop)
        new[0] = pop[int(np.argmin(fitness))]
        for i in range(1, pop.shape[0]):
            rng = self._rng(generation, i)
            a = pop[self._tournament(rng, fitness)]
            b = pop[self._tournament(rng, fitness)]
            child = a.copy()
            if rng.random() < cfg.crossover_rate:
                mask = rng.random(child.size) < 0.5
                child[mask] = b[mask]
            mutate = rng.random(child.size) < cfg.mutation_rate
            child[mutate] += rng.normal(0.0, 1.0, mutate.sum()) * cfg.mutation_sigma * self.span[mutate]
            new[i] = np.clip(child, self.lower, self.upper)
        return new


def _check_structure(dataset: Dataset) -> None:
    if dataset.kind == "vector":
        same = bool(np.all(dataset.samples == dataset.samples[0]))
    else:
        same = all(s == dataset.samples[0] for s in dataset.samples)
    if same:
        raise DegenerateError("no structure: all training samples are identical")


def fuzzify(embedded: EmbeddedPoints, partition: Partition, k: int, percentile: float):
    """Per-component maximum centrality and percentile threshold of the deficits."""
    graph = NeighbourIndex(embedded).graph(k)
    chi_star, thresholds = [], []
    for comp in partition.components:
        prof = centrality_profile(graph.subgraph(comp), percentile)
        chi_star.append(prof.chi_star)
        thresholds.append(prof.threshold)
    return chi_star, thresholds


def train(dataset: Dataset, measure: str = "weighted_euclidean",
          config: TrainerConfig | None = None) -> TrainedModel:
    """Fit a one-class model on ``dataset`` (all samples are taken as nominal)."""
    config = config or TrainerConfig()
    check_compatible(measure, dataset.kind)
    if len(dataset) < 4:
        raise DataError("training needs at least 4 samples")
    _check_structure(dataset)

    prototypes = select_prototypes(dataset, config.max_train_size, config.seed)
    neutral = default_params(measure, dataset)
    ga = GeneticSearch(neutral.lower, neutral.upper, config)
    cache: dict[bytes, CandidateResult] = {}

    def fitness(values: np.ndarray) -> CandidateResult:
        key = values.tobytes()
        if key not in cache:
            cache[key] = evaluate_candidate(dataset, prototypes, neutral.with_values(values),
                                            config, measure)
        return cache[key]

    best: CandidateResult | None = None
    history: list[float] = []

    def run_generation(pop: np.ndarray) -> np.ndarray | None:
        # convergence is tested after every parameter instance, not per generation
        nonlocal best
        scores = np.full(pop.shape[0], np.inf)
        for i, ind in enumerate(pop):
            res = fitness(ind)
            scores[i] = res.eta
            if best is None or res.eta < best.eta:
                best = res
            if best.eta <= config.tau:
                return None
        return scores

    pop = ga.initial(neutral.values)
    scores = run_generation(pop)
    history.append(best.eta)
    generation = 0
    while scores is not None and generation < config.max_iterations:
        generation += 1
        pop = ga.offspring(pop, scores, generation)
        scores = run_generation(pop)
        history.append(best.eta)
        logger.debug("generation %d: best eta %.6g (k=%d, d=%d)",
                     generation, best.eta, best.k_best, best.partition.d)

    embedded = embed(dataset, prototypes, best.p, measure)
    chi_star, thresholds = fuzzify(embedded, best.partition, best.k_best, config.percentile_l)
    return TrainedModel(
        measure=measure,
        p_star=best.p,
        k_star=best.k_best,
        prototypes=prototypes,
        embedded_train=embedded,
        partition=best.partition,
        chi_star=chi_star,
        thresholds=thresholds,
        alpha=config.alpha,
        percentile_l=config.percentile_l,
        eta=best.eta,
        iterations=generation,
        seed=config.seed,
        alphabet=dataset.alphabet,
        history=history,
    )

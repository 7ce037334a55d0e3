"""Monte Carlo simulation experiments and their CSV emission.

Replicates are fully determined by (rng_seed, cell index, replicate index),
so results are byte-identical across runs and independent of scheduling.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .assignment import evaluate_match, gap_match
from .graph import CloneParams, bit_flip, clone_vertices, sample_er
from .pipeline import PipelineConfig, jofc_match
from .seeding import Matching, Seeding
from .sgm import sgm


@dataclass(frozen=True)
class ReplicateRecord:
    experiment: str
    m: int
    rho: float
    algorithm: str
    replicate: int
    r_m: float
    chosen_dim: int
    wall_time_s: float
    stage_seconds: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CellAggregate:
    m: int
    rho: float
    algorithm: str
    mean_rm: float
    se_rm: float
    n_reps: int


@dataclass(frozen=True)
class ExperimentResult:
    records: tuple
    config: dict

    def aggregates(self):
        cells = {}
        for rec in self.records:
            cells.setdefault((rec.m, rec.rho, rec.algorithm), []).append(rec.r_m)
        out = []
        for (m, rho, algorithm), values in sorted(cells.items()):
            n = len(values)
            mean = float(np.mean(values))
            se = float(np.std(values, ddof=1) / math.sqrt(n)) if n >= 2 else float("nan")
            out.append(CellAggregate(m, rho, algorithm, mean, se, n))
        return out

    def cell_mean(self, m, rho, algorithm):
        for agg in self.aggregates():
            if (agg.m, agg.rho, agg.algorithm) == (m, rho, algorithm):
                return agg
        raise KeyError((m, rho, algorithm))


def _config_header(config):
    return "".join(f"# {k}={v}\n" for k, v in sorted(config.items()))


def save_replicates_csv(result, path):
    with open(path, "w") as fh:
        fh.write(_config_header(result.config))
        stages = ["dissimilarity", "omnibus", "select_dimension", "embed", "oos", "match"]
        fh.write("m,rho,algorithm,replicate,r_m,chosen_dim,wall_time_s,"
                 + ",".join(f"{s}_s" for s in stages) + "\n")
        for rec in result.records:
            stage_cols = [f"{rec.stage_seconds.get(s, 0.0):.6f}" for s in stages]
            fh.write(
                f"{rec.m},{rec.rho!r},{rec.algorithm},{rec.replicate},{rec.r_m!r},"
                f"{rec.chosen_dim},{rec.wall_time_s:.6f}," + ",".join(stage_cols) + "\n"
            )


def save_aggregates_csv(result, path):
    """Aggregate CSV; deterministic byte-for-byte for a fixed config + seed."""
    with open(path, "w") as fh:
        fh.write(_config_header(result.config))
        fh.write("m,rho,algorithm,mean_Rm,se_Rm,n_reps\n")
        for agg in result.aggregates():
            fh.write(
                f"{agg.m},{agg.rho!r},{agg.algorithm},{agg.mean_rm!r},{agg.se_rm!r},{agg.n_reps}\n"
            )


def _replicate_seeds(root_seed, cell_index, replicate):
    ss = np.random.SeedSequence(entropy=root_seed, spawn_key=(cell_index, replicate))
    return ss.generate_state(4)


def _uniform_seed_pairs(rng, n, m):
    chosen = rng.choice(n, size=m, replace=False)
    return [(int(i), int(i)) for i in chosen]


def _bitflip_replicate(task):
    n, p, m, rho, algorithms, cfg_dict, root_seed, cell_index, replicate = task
    cfg = PipelineConfig(**cfg_dict)
    seed_er, seed_flip, seed_pick, seed_smacof = (int(s) for s in _replicate_seeds(root_seed, cell_index, replicate))
    g1 = sample_er(n, p, seed_er)
    g2 = bit_flip(g1, rho, seed_flip)
    pairs = _uniform_seed_pairs(np.random.default_rng(seed_pick), n, m)
    seeding = Seeding(pairs, n, n)
    truth = Matching((i, i) for i in range(n))
    records = []
    for algorithm in algorithms:
        start = time.perf_counter()
        if algorithm == "jofc":
            result = jofc_match(g1, g2, seeding, replace(cfg, rng_seed=seed_smacof))
            est, dim, stages = result.matching, result.chosen_dim, result.stage_seconds
        elif algorithm == "sgm":
            est, dim, stages = sgm(g1, g2, seeding).matching, 0, {}
        else:
            raise ValueError(f"unknown algorithm {algorithm!r}")
        r_m = evaluate_match(est, truth, seeding).match_ratio
        records.append(
            ReplicateRecord(
                "bitflip", m, rho, algorithm, replicate, float(r_m),
                dim, time.perf_counter() - start, stages,
            )
        )
    return records


def _run_tasks(worker, tasks, n_workers):
    if n_workers <= 1:
        batches = [worker(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            batches = list(pool.map(worker, tasks, chunksize=1))
    return tuple(rec for batch in batches for rec in batch)


def run_bitflip_experiment(
    n, p, m_grid, rho_grid, replicates, cfg=PipelineConfig(),
    algorithms=("jofc", "sgm"), n_workers=1,
):
    """Bijective bit-flip simulation: G1 ~ ER(n, p), G2 a rho-flipped copy,
    m uniform seeds, match with each algorithm, record the match ratio."""
    cells = [(m, rho) for m in m_grid for rho in rho_grid]
    tasks = [
        (n, p, m, rho, tuple(algorithms), cfg.as_dict_internal(), cfg.rng_seed, ci, rep)
        for ci, (m, rho) in enumerate(cells)
        for rep in range(replicates)
    ]
    records = _run_tasks(_bitflip_replicate, tasks, n_workers)
    config = dict(cfg.as_dict(), experiment="bitflip", n=n, p=p,
                  m_grid=list(m_grid), rho_grid=list(rho_grid),
                  replicates=replicates, algorithms=list(algorithms))
    return ExperimentResult(records, config)


def clone_seeding(truth, chosen_g1_seeds, n1, n2):
    """Seed rule for the many-to-one experiment: each chosen graph-1 seed
    brings all of its matched graph-2 copies into the seeding."""
    chosen = set(int(i) for i in chosen_g1_seeds)
    pairs = [(i, j) for i, j in truth.pairs if i in chosen]
    return Seeding(pairs, n1, n2)


def clone_match_fraction(est, truth, seeding):
    """Fraction of unseeded graph-2 vertices matched to their true original."""
    u2 = seeding.unseeded2
    if not u2:
        return 1.0
    true_orig = {j: next(iter(truth.image2(j))) for j in u2}
    hits = sum(1 for j in u2 if (true_orig[j], j) in est.pairs)
    return hits / len(u2)


def _clone_replicate(task):
    n, p, clone_dict, m, rho, cfg_dict, root_seed, cell_index, replicate = task
    cfg = PipelineConfig(**cfg_dict)
    seeds = _replicate_seeds(root_seed, cell_index, replicate)
    seed_er, seed_clone, seed_flip, seed_rest = (int(s) for s in seeds)
    g1 = sample_er(n, p, seed_er)
    cloned, truth = clone_vertices(g1, CloneParams(rng_seed=seed_clone, **clone_dict))
    g2 = bit_flip(cloned, rho, seed_flip)
    rng = np.random.default_rng(seed_rest)
    chosen = rng.choice(n, size=m, replace=False)
    seeding = clone_seeding(truth, chosen, n, g2.n)
    start = time.perf_counter()
    result = jofc_match(g1, g2, seeding, replace(cfg, matcher="gap", rng_seed=int(seed_rest)))
    frac = clone_match_fraction(result.matching, truth, seeding)
    covered = {i for i, _ in result.matching.pairs}
    assert covered == set(seeding.unseeded1), "gap matcher violated row coverage"
    rec = ReplicateRecord(
        "clone", m, rho, "jofc-gap", replicate, float(frac),
        result.chosen_dim, time.perf_counter() - start, result.stage_seconds,
    )
    return [rec]


def run_clone_experiment(
    n, p, clone_params, m_grid, rho_grid, replicates, cfg=PipelineConfig(), n_workers=1,
):
    """Many-to-one simulation: clone G1's vertices, bit-flip the clone graph,
    seed chosen originals together with all their copies, match with the
    generalized matcher."""
    clone_dict = {
        "clone_success_prob": clone_params.clone_success_prob,
        "max_clones": clone_params.max_clones,
    }
    cells = [(m, rho) for m in m_grid for rho in rho_grid]
    tasks = [
        (n, p, clone_dict, m, rho, cfg.as_dict_internal(), cfg.rng_seed, ci, rep)
        for ci, (m, rho) in enumerate(cells)
        for rep in range(replicates)
    ]
    records = _run_tasks(_clone_replicate, tasks, n_workers)
    config = dict(cfg.as_dict(), experiment="clone", n=n, p=p,
                  clone_success_prob=clone_params.clone_success_prob,
                  max_clones=clone_params.max_clones,
                  m_grid=list(m_grid), rho_grid=list(rho_grid), replicates=replicates)
    return ExperimentResult(records, config)


def random_gap_baseline(true_rows, u1, u2, n_samples, rng_seed):
    """Monte Carlo chance level for the many-to-one experiment.

    true_rows[b] is the true row partner of column b.  Returns the mean and
    standard error of the correct-match fraction of the generalized matcher
    applied to i.i.d. uniform random costs (coverage-feasible by
    construction)."""
    rng = np.random.default_rng(rng_seed)
    true_rows = np.asarray(true_rows, dtype=int)
    fractions = []
    for _ in range(n_samples):
        est = gap_match(rng.random((u1, u2)))
        hits = sum(1 for b in range(u2) if (int(true_rows[b]), b) in est.pairs)
        fractions.append(hits / u2)
    return float(np.mean(fractions)), float(np.std(fractions, ddof=1) / math.sqrt(n_samples))

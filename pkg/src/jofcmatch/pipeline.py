"""End-to-end matching pipeline: dissimilarity -> omnibus -> joint embedding
-> out-of-sample embedding -> assignment."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from .assignment import distance_costs, gap_match, hungarian
from .dissimilarity import compute_dissimilarity, normalize
from .embedding import (
    EmbeddingConfig,
    SmacofOptions,
    embed_omnibus,
    oos_embed,
    select_dimension,
    smacof,
)
from .seeding import Matching, Seeding, build_omnibus


class PipelineError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    dissimilarity: str = "shortest_path"
    w: float = 0.8
    dim: int | None = None  # None selects the dimension automatically
    alpha: float = 0.05
    matcher: str = "hungarian"
    max_iters: int = 500
    rel_stress_tol: float = 1e-6
    n_restarts: int = 4
    rng_seed: int = 0

    def __post_init__(self):
        if self.matcher not in ("hungarian", "gap"):
            raise PipelineError(f"unknown matcher {self.matcher!r}")
        if self.dim is None and not 0 < self.alpha < 1:
            raise PipelineError(f"alpha={self.alpha} outside (0, 1)")

    def smacof_options(self, rng_seed=None):
        return SmacofOptions(
            w=self.w,
            max_iters=self.max_iters,
            rel_stress_tol=self.rel_stress_tol,
            n_restarts=self.n_restarts,
            rng_seed=self.rng_seed if rng_seed is None else rng_seed,
        )

    def as_dict_internal(self):
        """Constructor kwargs, for shipping configs to worker processes."""
        from dataclasses import asdict

        return asdict(self)

    def as_dict(self):
        return {
            "dissimilarity": self.dissimilarity,
            "w": self.w,
            "dim": "auto" if self.dim is None else self.dim,
            "alpha": self.alpha,
            "matcher": self.matcher,
            "max_iters": self.max_iters,
            "rel_stress_tol": self.rel_stress_tol,
            "n_restarts": self.n_restarts,
            "rng_seed": self.rng_seed,
        }


@dataclass(frozen=True)
class JofcResult:
    matching: Matching  # estimated pairs among unseeded vertices, original labels
    embedding: EmbeddingConfig
    chosen_dim: int
    stage_seconds: dict = field(default_factory=dict)


def _match_points(points1, points2, matcher):
    if matcher == "hungarian":
        return hungarian(distance_costs(points1, points2, squared=True))
    return gap_match(distance_costs(points1, points2, squared=False))


def _label(matching, ids1, ids2):
    return Matching((ids1[i], ids2[j]) for i, j in matching.pairs)


def _stage(timings, name, fn):
    start = time.perf_counter()
    try:
        return fn()
    except Exception as exc:
        raise PipelineError(f"stage {name!r} failed: {exc}") from exc
    finally:
        timings[name] = time.perf_counter() - start


def _seedless_match(d1, d2, cfg, timings):
    """No seeds: embed each graph independently and match at chance level."""
    dim = cfg.dim if cfg.dim is not None else 2
    opts = cfg.smacof_options()

    def embed(d):
        x, stress, _ = smacof(d, 1.0 - np.eye(d.shape[0]), dim, opts)
        return x, stress

    (x1, stress1) = _stage(timings, "embed", lambda: embed(d1))
    (x2, _) = _stage(timings, "oos", lambda: embed(d2))
    matching = _stage(timings, "match", lambda: _match_points(x1, x2, cfg.matcher))
    seeding = Seeding([], d1.shape[0], d2.shape[0])
    config = EmbeddingConfig(
        dim=dim,
        seed_points1=np.zeros((0, dim)),
        seed_points2=np.zeros((0, dim)),
        seeding=seeding,
        stress=stress1,
        oos_points1=x1,
        oos_points2=x2,
    )
    return JofcResult(matching, config, dim, timings)


def jofc_match(g1, g2, seeding, cfg=PipelineConfig()):
    """Run the full pipeline; returns the estimated unseeded matching plus
    the embedding and per-stage timings."""
    timings = {}
    d1, d2 = _stage(
        timings,
        "dissimilarity",
        lambda: (
            normalize(compute_dissimilarity(g1, cfg.dissimilarity)),
            normalize(compute_dissimilarity(g2, cfg.dissimilarity)),
        ),
    )
    if len(seeding.pairs) == 0:
        return _seedless_match(d1, d2, cfg, timings)
    omni = _stage(timings, "omnibus", lambda: build_omnibus(d1, d2, seeding))
    opts = cfg.smacof_options()
    if cfg.dim is None:
        dim = _stage(timings, "select_dimension", lambda: select_dimension(omni, cfg.alpha, opts))
    else:
        dim = cfg.dim
    config = _stage(timings, "embed", lambda: embed_omnibus(omni, dim, opts))
    config = _stage(timings, "oos", lambda: oos_embed(config, d1, d2, seeding, opts))
    matching = _stage(
        timings, "match", lambda: _match_points(config.oos_points1, config.oos_points2, cfg.matcher)
    )
    matching = _label(matching, seeding.unseeded1, seeding.unseeded2)
    return JofcResult(matching, config, dim, timings)

"""Weighted raw-stress MDS by majorization and the joint-embedding weights.

The stress of a configuration X for dissimilarities D and symmetric weights
W is sigma(X) = sum over unordered pairs i<j of W_ij (d(x_i, x_j) - D_ij)^2.
Majorization (the Guttman transform) never increases it.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..seeding import OmnibusMatrix, Seeding
from ._backend import get_kernels


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class SmacofOptions:
    w: float = 0.8
    max_iters: int = 500
    rel_stress_tol: float = 1e-6
    n_restarts: int = 4
    rng_seed: int = 0
    backend: str | None = None  # kernel backend override, None = auto

    def __post_init__(self):
        if not 0 < self.w < 1:
            raise EmbeddingError(f"fidelity weight w={self.w} outside (0, 1)")


@dataclass(frozen=True)
class StressReport:
    fidelity1: float
    fidelity2: float
    commensurability: float
    separability: float
    total: float


@dataclass(frozen=True)
class EmbeddingConfig:
    """Point configuration in R^d with the seeds of both graphs (and
    optionally the out-of-sample unseeded vertices) plus stress diagnostics."""

    dim: int
    seed_points1: np.ndarray
    seed_points2: np.ndarray
    seeding: Seeding
    stress: float
    stress_history: tuple = ()
    stress_report: StressReport | None = None
    oos_points1: np.ndarray | None = None
    oos_points2: np.ndarray | None = None

    @property
    def seed_points(self):
        return np.vstack([self.seed_points1, self.seed_points2])


def jofc_weights(seeding, w):
    """Weight matrix over the omnibus index set implementing the stress mixture.

    Within-graph pairs carry weight w.  Cross-graph pairs carry 1 - w when
    matched in the seeding and w otherwise, so that the total stress equals
    w (fid1 + fid2 + sep) + (1 - w) comm exactly.  Unknown-status pairs get
    zero weight (missing data).
    """
    if not 0 < w < 1:
        raise EmbeddingError(f"fidelity weight w={w} outside (0, 1)")
    s1_idx, s2_idx = seeding.seeds1, seeding.seeds2
    s1, s2 = len(s1_idx), len(s2_idx)
    n = s1 + s2
    weights = np.full((n, n), w)
    for a, i in enumerate(s1_idx):
        for b, j in enumerate(s2_idx):
            if (i, j) in seeding.unknown:
                cross = 0.0
            elif (i, j) in seeding.pairs:
                cross = 1.0 - w
            else:
                cross = w
            weights[a, s1 + b] = weights[s1 + b, a] = cross
    np.fill_diagonal(weights, 0.0)
    return weights


def _classical_scaling_init(diss, dim):
    """Double-centered spectral (Torgerson) start."""
    n = diss.shape[0]
    sq = diss**2
    b = -(sq - sq.mean(axis=0) - sq.mean(axis=1)[:, None] + sq.mean()) / 2.0
    evals, evecs = np.linalg.eigh(b)
    order = np.argsort(evals)[::-1][:dim]
    x = evecs[:, order] * np.sqrt(np.clip(evals[order], 0.0, None))
    if x.shape[1] < dim:
        x = np.hstack([x, np.zeros((n, dim - x.shape[1]))])
    return x


def stress(diss, weights, x, backend=None):
    """Recompute the weighted raw stress of a configuration."""
    kern = get_kernels(backend)
    return kern.stress_value(
        np.ascontiguousarray(diss, dtype=float),
        np.ascontiguousarray(weights, dtype=float),
        np.ascontiguousarray(x, dtype=float),
    )


def stress_gradient(diss, weights, x):
    """Analytic gradient of the raw stress at a configuration with distinct points."""
    from scipy.spatial.distance import cdist

    dx = cdist(x, x)
    np.fill_diagonal(dx, 1.0)
    b = -weights * diss / dx
    np.fill_diagonal(b, 0.0)
    np.fill_diagonal(b, -b.sum(axis=1))
    v = -weights.copy()
    np.fill_diagonal(v, 0.0)
    np.fill_diagonal(v, weights.sum(axis=1))
    return 2.0 * (v @ x - b @ x)


def _smacof_single(diss, weights, x, v_pinv, opts, kern):
    diss = np.ascontiguousarray(diss, dtype=float)
    weights = np.ascontiguousarray(weights, dtype=float)
    x = np.ascontiguousarray(x, dtype=float)
    history = [kern.stress_value(diss, weights, x)]
    for _ in range(opts.max_iters):
        x = np.ascontiguousarray(v_pinv @ kern.guttman_bx(diss, weights, x))
        s = kern.stress_value(diss, weights, x)
        history.append(s)
        prev = history[-2]
        if prev - s <= opts.rel_stress_tol * max(prev, 1e-300):
            break
    return x, history


def smacof(diss, weights, dim, opts=SmacofOptions()):
    """Minimize weighted raw stress over configurations of points in R^dim.

    Runs one classical-scaling start plus (n_restarts - 1) random Gaussian
    starts and returns the best final configuration, its stress, and the
    per-iteration stress history of the winning run.
    """
    diss = np.asarray(diss, dtype=float)
    weights = np.asarray(weights, dtype=float)
    n = diss.shape[0]
    if dim < 1:
        raise EmbeddingError("embedding dimension must be >= 1")
    if weights.shape != diss.shape or not np.allclose(weights, weights.T):
        raise EmbeddingError("weight matrix must be symmetric and match the dissimilarity")
    offdiag = weights.copy()
    np.fill_diagonal(offdiag, 0.0)
    dead = np.flatnonzero(offdiag.sum(axis=1) == 0)
    if dead.size:
        raise EmbeddingError(
            f"degenerate weights: points {dead.tolist()} have zero weight to all others"
        )
    kern = get_kernels(opts.backend)
    v = -offdiag
    np.fill_diagonal(v, offdiag.sum(axis=1))
    v_pinv = np.linalg.pinv(v)
    rng = np.random.default_rng(opts.rng_seed)
    scale = diss[diss > 0].mean() if np.any(diss > 0) else 1.0
    inits = [_classical_scaling_init(diss, dim)]
    inits += [rng.normal(scale=scale, size=(n, dim)) for _ in range(opts.n_restarts - 1)]
    best = None
    for x0 in inits:
        x, history = _smacof_single(diss, offdiag, x0, v_pinv, opts, kern)
        if best is None or history[-1] < best[1][-1]:
            best = (x, history)
    x, history = best
    return x, history[-1], history


def stress_report(omni, x, w):
    """Decompose the joint-embedding stress of a seed configuration.

    Returns the two within-graph fidelity errors, the across-graph
    commensurability and separability errors, and their mixture
    w (fid1 + fid2 + sep) + (1 - w) comm.
    """
    from scipy.spatial.distance import cdist

    seeding = omni.seeding
    s1 = seeding.s1
    d = cdist(x, x)
    iu1 = np.triu_indices(s1, 1)
    iu2 = np.triu_indices(seeding.s2, 1)
    fid1 = float((((d[:s1, :s1] - omni.values[:s1, :s1])[iu1]) ** 2).sum())
    fid2 = float((((d[s1:, s1:] - omni.values[s1:, s1:])[iu2]) ** 2).sum())
    comm = sep = 0.0
    for a, i in enumerate(seeding.seeds1):
        for b, j in enumerate(seeding.seeds2):
            if (i, j) in seeding.unknown:
                continue
            resid = (d[a, s1 + b] - omni.values[a, s1 + b]) ** 2
            if (i, j) in seeding.pairs:
                comm += resid
            else:
                sep += resid
    total = w * (fid1 + fid2 + sep) + (1.0 - w) * comm
    return StressReport(fid1, fid2, float(comm), float(sep), float(total))


def embed_omnibus(omni, dim, opts=SmacofOptions()):
    """Jointly embed the seeds of both graphs from their omnibus matrix."""
    weights = jofc_weights(omni.seeding, opts.w)
    x, final_stress, history = smacof(omni.values, weights, dim, opts)
    s1 = omni.seeding.s1
    return EmbeddingConfig(
        dim=dim,
        seed_points1=x[:s1],
        seed_points2=x[s1:],
        seeding=omni.seeding,
        stress=final_stress,
        stress_history=tuple(history),
        stress_report=stress_report(omni, x, opts.w),
    )


def save_embedding_csv(config, path):
    """CSV: block, original_vertex_id (1-based), x_1 ... x_d."""
    blocks = [
        ("seeds1", config.seeding.seeds1, config.seed_points1),
        ("seeds2", config.seeding.seeds2, config.seed_points2),
        ("unseeded1", config.seeding.unseeded1, config.oos_points1),
        ("unseeded2", config.seeding.unseeded2, config.oos_points2),
    ]
    with open(path, "w") as fh:
        header = ",".join(["block", "original_vertex_id"] + [f"x_{k + 1}" for k in range(config.dim)])
        fh.write(header + "\n")
        for name, ids, points in blocks:
            if points is None:
                continue
            for vid, row in zip(ids, points):
                fh.write(",".join([name, str(vid + 1)] + [repr(float(v)) for v in row]) + "\n")


def format_stress_report(report):
    lines = [
        f"fidelity1 = {report.fidelity1!r}",
        f"fidelity2 = {report.fidelity2!r}",
        f"commensurability = {report.commensurability!r}",
        f"separability = {report.separability!r}",
        f"total = {report.total!r}",
    ]
    return "\n".join(lines) + "\n"

"""Out-of-sample embedding of unseeded vertices against fixed seed anchors.

With unseeded-unseeded and cross-graph unseeded weights zeroed out, the
out-of-sample stress separates into one independent problem per unseeded
vertex: minimize sum_i (||y - x_i|| - delta_i)^2 over the anchors x_i of its
own graph.  Each problem is solved by majorization.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np
from scipy.spatial.distance import cdist

from .smacof import EmbeddingError, SmacofOptions


def _majorize_points(anchors, targets, weights, opts):
    """Solve the per-point anchored stress problems jointly (they are independent).

    anchors: (s, d); targets, weights: (u, s).  Returns (u, d) positions and
    the per-point final stresses.  Points are updated until their own stress
    converges, so results do not depend on the other points.
    """
    u, s = targets.shape
    wsum = weights.sum(axis=1)
    if np.any(wsum == 0):
        dead = np.flatnonzero(wsum == 0).tolist()
        raise EmbeddingError(f"unseeded points {dead} have zero weight to every anchor")

    def run(y):
        dist = cdist(y, anchors)
        stress = (weights * (dist - targets) ** 2).sum(axis=1)
        active = np.ones(u, dtype=bool)
        for _ in range(opts.max_iters):
            if not active.any():
                break
            ya = y[active]
            dist = cdist(ya, anchors)
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(dist > 0, weights[active] * targets[active] / dist, 0.0)
            pull = weights[active] @ anchors + np.einsum(
                "us,usd->ud", ratio, ya[:, None, :] - anchors[None, :, :]
            )
            ya_new = pull / wsum[active, None]
            new_stress = (
                weights[active] * (cdist(ya_new, anchors) - targets[active]) ** 2
            ).sum(axis=1)
            y[active] = ya_new
            prev = stress[active]
            done = prev - new_stress <= opts.rel_stress_tol * np.maximum(prev, 1e-300)
            stress[active] = new_stress
            idx = np.flatnonzero(active)
            active[idx[done]] = False
        return y, stress

    # two deterministic starts: anchor centroid, and the anchor each point
    # is closest to in dissimilarity; keep the per-point best
    y0 = weights @ anchors / wsum[:, None]
    y1 = anchors[np.argmin(np.where(weights > 0, targets, np.inf), axis=1)].copy()
    ya, sa = run(y0.copy())
    yb, sb = run(y1)
    better = sb < sa
    ya[better] = yb[better]
    sa[better] = sb[better]
    return ya, sa


def oos_embed(anchors_config, d1, d2, seeding, opts=SmacofOptions()):
    """Embed the unseeded vertices of both graphs against the fixed seeds.

    d1 and d2 must be the same normalized dissimilarities the omnibus was
    built from.  Returns a copy of the configuration with the out-of-sample
    blocks filled in.
    """
    out = {}
    specs = [
        ("oos_points1", anchors_config.seed_points1, d1, seeding.seeds1, seeding.unseeded1),
        ("oos_points2", anchors_config.seed_points2, d2, seeding.seeds2, seeding.unseeded2),
    ]
    for name, anchors, diss, seed_ids, unseeded_ids in specs:
        if len(unseeded_ids) == 0:
            out[name] = np.zeros((0, anchors_config.dim))
            continue
        targets = np.asarray(diss)[np.ix_(unseeded_ids, seed_ids)]
        weights = np.ones_like(targets)
        points, _ = _majorize_points(np.asarray(anchors, dtype=float), targets, weights, opts)
        out[name] = points
    return replace(anchors_config, **out)

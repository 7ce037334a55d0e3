"""Embedding dimension selection by seed self-matching.

Embed the seeds at d = 1, 2, 3, ... and stop at the first dimension where a
coverage-constrained assignment between the two embedded seed sets recovers
almost all of the seeding itself.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from .smacof import EmbeddingError, SmacofOptions, embed_omnibus


class DimensionSelectionError(EmbeddingError):
    pass


def seed_assignment(costs):
    """Min-cost matching in which every row and every column is covered.

    A rectangular minimum-cost assignment covers the smaller side; leftover
    vertices on the larger side attach to their cheapest counterpart.
    """
    rows, cols = linear_sum_assignment(costs)
    pairs = set(zip(rows.tolist(), cols.tolist()))
    for i in set(range(costs.shape[0])) - {i for i, _ in pairs}:
        pairs.add((i, int(np.argmin(costs[i]))))
    for j in set(range(costs.shape[1])) - {j for _, j in pairs}:
        pairs.add((int(np.argmin(costs[:, j])), j))
    return pairs


def seed_recovery_fraction(config):
    """Fraction of seeds whose assignment partner set equals their seeding set."""
    seeding = config.seeding
    costs = cdist(config.seed_points1, config.seed_points2)
    pairs = seed_assignment(costs)
    got1, got2 = {}, {}
    for a, b in pairs:
        i, j = seeding.seeds1[a], seeding.seeds2[b]
        got1.setdefault(i, set()).add(j)
        got2.setdefault(j, set()).add(i)
    hits = sum(1 for i in seeding.seeds1 if got1.get(i, set()) == seeding.image1(i))
    hits += sum(1 for j in seeding.seeds2 if got2.get(j, set()) == seeding.image2(j))
    return hits / (seeding.s1 + seeding.s2)


def select_dimension(omni, alpha=0.05, opts=SmacofOptions(), d_max=20):
    """Smallest d whose embedded seed assignment recovers the seeding.

    Returns the first d (starting from 1) where the recovered fraction
    exceeds 1 - alpha; raises if no d <= d_max passes.
    """
    if not 0 < alpha < 1:
        raise DimensionSelectionError(f"alpha={alpha} outside (0, 1)")
    for d in range(1, d_max + 1):
        config = embed_omnibus(omni, d, opts)
        if seed_recovery_fraction(config) > 1.0 - alpha:
            return d
    raise DimensionSelectionError(
        f"no dimension <= {d_max} recovers the seeding at threshold 1 - {alpha}"
    )

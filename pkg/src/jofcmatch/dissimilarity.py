"""Within-graph dissimilarity representations and their normalization.

Dissimilarity matrices are plain square numpy arrays: symmetric, zero
diagonal, finite and nonnegative.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse.csgraph import connected_components, shortest_path as _sp


class DissimilarityError(ValueError):
    pass


def check_dissimilarity(d, atol=0.0):
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise DissimilarityError("dissimilarity matrix must be square")
    if not np.all(np.isfinite(d)) or np.any(d < -atol):
        raise DissimilarityError("entries must be finite and nonnegative")
    if not np.allclose(d, d.T, atol=atol) or np.any(np.abs(np.diag(d)) > atol):
        raise DissimilarityError("matrix must be symmetric with zero diagonal")
    return d


def shortest_path_dissimilarity(g):
    """All-pairs shortest path distances.

    Edge length is 1 for unweighted graphs and 1/weight otherwise (stronger
    ties are shorter).  Directed graphs are first symmetrized by the max
    weight of the two directions.  Raises on disconnected input.
    """
    g = g.undirected()
    w = g.weights
    n_comp, labels = connected_components(w > 0, directed=False)
    if n_comp > 1:
        sizes = np.bincount(labels)
        raise DissimilarityError(
            f"graph is disconnected: {n_comp} components with sizes {sizes.tolist()}"
        )
    lengths = np.zeros_like(w)
    nz = w > 0
    lengths[nz] = 1.0 if g.is_unweighted() else 1.0 / w[nz]
    d = _sp(lengths, method="D", directed=False)
    np.fill_diagonal(d, 0.0)
    return d


def weighted_dice_dissimilarity(g):
    """Weighted Dice dissimilarity of closed neighborhoods.

    d(i, j) = 1 - 2 s(i, j) / (s(i, i) + s(j, j)) with s the entrywise-min
    overlap of the closed neighborhood weight profiles; directed graphs sum
    separate out- and in-profiles.  A vertex belongs to its own closed
    neighborhood with weight equal to its largest incident weight.  Reduces
    to the classical Dice set dissimilarity on simple graphs.
    """
    w = g.weights
    n = g.n
    incident = np.maximum(g.weights.max(axis=0), g.weights.max(axis=1))
    if np.any(incident == 0):
        isolated = np.flatnonzero(incident == 0).tolist()
        raise DissimilarityError(f"isolated vertices {isolated}: Dice overlap undefined")
    profiles = []
    for rows in ([w] if not g.directed else [w, w.T]):
        closed = rows.copy()
        idx = np.arange(n)
        closed[idx, idx] = np.maximum(closed[idx, idx], incident)
        profiles.append(closed)
    # s(i,j) = sum_k min(profile_i(k), profile_j(k)), summed over directions
    s = np.zeros((n, n))
    for closed in profiles:
        s += np.minimum(closed[:, None, :], closed[None, :, :]).sum(axis=2)
    self_mass = np.diag(s)
    d = 1.0 - 2.0 * s / (self_mass[:, None] + self_mass[None, :])
    np.fill_diagonal(d, 0.0)
    return np.clip(d, 0.0, 1.0)


def normalize(d):
    """Divide by the maximum entry so the output maximum is 1."""
    d = np.asarray(d, dtype=float)
    top = d.max()
    if top <= 0:
        raise DissimilarityError("cannot normalize an all-zero dissimilarity matrix")
    return d / top


DISSIMILARITIES = {
    "shortest_path": shortest_path_dissimilarity,
    "weighted_dice": weighted_dice_dissimilarity,
}


def compute_dissimilarity(g, kind):
    try:
        fn = DISSIMILARITIES[kind]
    except KeyError:
        raise DissimilarityError(
            f"unknown dissimilarity {kind!r}; choose from {sorted(DISSIMILARITIES)}"
        ) from None
    return fn(g)


def save_dissimilarity_csv(d, path):
    """Dense CSV interchange format: header row "n", then n rows of n reals."""
    d = np.asarray(d)
    with open(path, "w") as fh:
        fh.write(f"{d.shape[0]}\n")
        for row in d:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def load_dissimilarity_csv(path):
    with open(path) as fh:
        n = int(fh.readline())
        rows = [[float(v) for v in fh.readline().split(",")] for _ in range(n)]
    return check_dissimilarity(np.asarray(rows))

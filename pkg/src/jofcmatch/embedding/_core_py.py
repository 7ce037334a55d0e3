"""Pure numpy fallback for the SMACOF hot kernels."""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

BACKEND = "python"


def pairwise_distances(x):
    return cdist(x, x)


def stress_value(diss, weights, x):
    """Weighted raw stress: sum over unordered pairs of w (d(x_i,x_j) - D_ij)^2."""
    dx = cdist(x, x)
    s = weights * (dx - diss) ** 2
    return float(np.triu(s, 1).sum())


def guttman_bx(diss, weights, x):
    """B(X) @ X, the numerator of the Guttman transform update."""
    dx = cdist(x, x)
    np.fill_diagonal(dx, 1.0)
    b = np.zeros_like(dx)
    pos = dx > 0  # coincident points contribute zero
    b[pos] = -(weights * diss)[pos] / dx[pos]
    np.fill_diagonal(b, 0.0)
    np.fill_diagonal(b, -b.sum(axis=1))
    return b @ x

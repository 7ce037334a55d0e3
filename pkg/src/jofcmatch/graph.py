"""Graph representation, edge-list IO, and correlated random graph models."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .seeding import Matching


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """A weighted, optionally directed, optionally loopy graph.

    ``weights`` is the dense n x n nonnegative adjacency matrix; entry (i, j)
    is the weight of edge i -> j, 0 meaning no edge.  Undirected graphs keep
    a symmetric matrix.  Instances are immutable and safe to share.
    """

    weights: np.ndarray
    directed: bool = False
    loopy: bool = False

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise GraphError("weights must be a square matrix")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise GraphError("weights must be finite and nonnegative")
        if not self.directed and not np.array_equal(w, w.T):
            raise GraphError("undirected graph requires a symmetric weight matrix")
        if not self.loopy and np.any(np.diag(w) != 0):
            raise GraphError("non-loopy graph has nonzero diagonal entries")
        w.flags.writeable = False

    @property
    def n(self):
        return self.weights.shape[0]

    def is_unweighted(self):
        w = self.weights
        return bool(np.all((w == 0) | (w == 1)))

    def is_simple(self):
        return not self.directed and not self.loopy and self.is_unweighted()

    def edges(self):
        """Iterate edges as (i, j, weight); one entry per unordered pair if undirected."""
        w = self.weights
        ii, jj = np.nonzero(w)
        for i, j in zip(ii, jj):
            if not self.directed and j < i:
                continue
            yield int(i), int(j), float(w[i, j])

    def edge_count(self):
        return sum(1 for _ in self.edges())

    def binarized(self):
        return Graph((self.weights > 0).astype(float), self.directed, self.loopy)

    def undirected(self):
        """Symmetrize by the entrywise max of the two directions."""
        if not self.directed:
            return self
        return Graph(np.maximum(self.weights, self.weights.T), False, self.loopy)


def load_edge_list(path, directed=False, loopy=False):
    """Read a graph from a 1-based "u v [w]" text edge list.

    The vertex count is the largest id seen.  Undirected input is
    symmetrized; duplicate edges (including the reverse direction of an
    undirected edge) are rejected.
    """
    edges = []
    max_id = 0
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise GraphError(f"{path}:{lineno}: expected 'u v [w]', got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
                w = float(parts[2]) if len(parts) == 3 else 1.0
            except ValueError as exc:
                raise GraphError(f"{path}:{lineno}: parse failure: {line!r}") from exc
            if u < 1 or v < 1:
                raise GraphError(f"{path}:{lineno}: vertex ids are 1-based")
            if w < 0:
                raise GraphError(f"{path}:{lineno}: negative weight {w}")
            if u == v and not loopy:
                raise GraphError(f"{path}:{lineno}: self-loop on vertex {u}")
            edges.append((u - 1, v - 1, w))
            max_id = max(max_id, u, v)
    weights = np.zeros((max_id, max_id))
    seen = set()
    for u, v, w in edges:
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"duplicate edge {u + 1} {v + 1}")
        seen.add(key)
        weights[u, v] = w
        if not directed:
            weights[v, u] = w
    return Graph(weights, directed=directed, loopy=loopy)


def save_edge_list(g, path):
    """Write the canonical 1-based edge list; round-trips bit-exactly."""
    with open(path, "w") as fh:
        for i, j, w in g.edges():
            fh.write(f"{i + 1} {j + 1} {w!r}\n")


@dataclass(frozen=True)
class BitFlipParams:
    n: int
    p: float
    rho: float
    rng_seed: int = 0

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise GraphError(f"edge probability p={self.p} outside (0, 1)")
        if not 0 <= self.rho <= 0.5:
            raise GraphError(f"flip probability rho={self.rho} outside [0, 0.5]")


@dataclass(frozen=True)
class CloneParams:
    clone_success_prob: float = 0.2
    max_clones: int = 10
    rng_seed: int = 0

    def __post_init__(self):
        if not 0 < self.clone_success_prob < 1:
            raise GraphError("clone_success_prob must lie in (0, 1)")
        if self.max_clones < 1:
            raise GraphError("max_clones must be >= 1")


def sample_er(n, p, rng_seed):
    """Sample a simple Erdos-Renyi graph: each pair present with probability p."""
    if not 0 < p < 1:
        raise GraphError(f"edge probability p={p} outside (0, 1)")
    rng = np.random.default_rng(rng_seed)
    upper = rng.random((n, n)) < p
    weights = np.triu(upper, 1).astype(float)
    weights += weights.T
    return Graph(weights, directed=False, loopy=False)


def bit_flip(g, rho, rng_seed):
    """Independently flip each unordered pair's edge indicator with probability rho.

    rho=0 returns an identical graph, rho=0.5 an independent one.
    """
    if not 0 <= rho <= 0.5:
        raise GraphError(f"flip probability rho={rho} outside [0, 0.5]")
    if g.directed or g.loopy or not g.is_unweighted():
        raise GraphError("bit_flip requires a simple undirected unweighted graph")
    rng = np.random.default_rng(rng_seed)
    flips = np.triu(rng.random((g.n, g.n)) < rho, 1)
    flips = flips | flips.T
    weights = np.where(flips, 1.0 - g.weights, g.weights)
    return Graph(weights, directed=False, loopy=False)


def clone_vertices(g, params):
    """Replicate each vertex a truncated-Geometric number of times.

    Vertex i appears k_i = min(Geometric(clone_success_prob), max_clones)
    times in the output (counting the original, so k_i >= 1).  Clones inherit
    all adjacencies of the original; clones of the same vertex are mutually
    non-adjacent in simple graphs.  Returns the cloned graph and the true
    matching pairing each original with all of its copies.
    """
    if g.directed or g.loopy:
        raise GraphError("clone_vertices requires a simple undirected graph")
    rng = np.random.default_rng(params.rng_seed)
    counts = np.minimum(rng.geometric(params.clone_success_prob, size=g.n), params.max_clones)
    copy_of = np.repeat(np.arange(g.n), counts)
    weights = g.weights[np.ix_(copy_of, copy_of)].copy()
    np.fill_diagonal(weights, 0.0)  # same-vertex copies stay non-adjacent
    pairs = [(int(orig), new) for new, orig in enumerate(copy_of)]
    return Graph(weights, False, False), Matching(pairs)


def connected_components(g):
    """Vertex sets of the connected components (directed edges ignored)."""
    from scipy.sparse.csgraph import connected_components as _cc

    n_comp, labels = _cc(g.undirected().weights > 0, directed=False)
    return [np.flatnonzero(labels == c) for c in range(n_comp)]


def induced_subgraph(g, vertices):
    idx = np.asarray(vertices, dtype=int)
    return Graph(g.weights[np.ix_(idx, idx)], g.directed, g.loopy)


def sample_connected_component(g, size, rng_seed):
    """Pick a random connected induced subgraph of the given size.

    Grows a randomized breadth-first tree from a random start inside a
    component of at least ``size`` vertices (under edge symmetrization).
    Returns the selected original vertex ids.
    """
    rng = np.random.default_rng(rng_seed)
    sym = g.undirected().weights > 0
    comps = [c for c in connected_components(g) if len(c) >= size]
    if not comps:
        raise GraphError(f"no connected component has {size} or more vertices")
    comp = comps[rng.integers(len(comps))]
    start = int(rng.choice(comp))
    chosen = {start}
    frontier = list(np.flatnonzero(sym[start]))
    while len(chosen) < size:
        frontier = [v for v in frontier if v not in chosen]
        if not frontier:
            raise GraphError("component exhausted before reaching the requested size")
        v = int(frontier.pop(rng.integers(len(frontier))))
        chosen.add(v)
        frontier.extend(int(u) for u in np.flatnonzero(sym[v]) if u not in chosen)
    return np.asarray(sorted(chosen), dtype=int)

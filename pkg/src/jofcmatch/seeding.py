"""Matchings, seedings, cross-graph imputation and the omnibus matrix.

Vertex indices are 0-based everywhere in the Python API; the text file
formats (edge lists, seed files) are 1-based and converted at the boundary.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np


class SeedingError(ValueError):
    pass


@dataclass(frozen=True)
class Matching:
    """A set of matched vertex pairs (i in graph 1, j in graph 2).

    Not necessarily one-to-one: a vertex may appear in several pairs, or in
    none.
    """

    pairs: frozenset

    def __init__(self, pairs):
        object.__setattr__(self, "pairs", frozenset((int(i), int(j)) for i, j in pairs))

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        return tuple(pair) in self.pairs

    def image1(self, i):
        """Partners of graph-1 vertex i."""
        return {j for (a, j) in self.pairs if a == i}

    def image2(self, j):
        """Partners of graph-2 vertex j."""
        return {i for (i, b) in self.pairs if b == j}

    def left(self):
        return {i for i, _ in self.pairs}

    def right(self):
        return {j for _, j in self.pairs}

    def is_bijection(self):
        return len(self.pairs) == len(self.left()) == len(self.right())

    def as_dict1(self):
        """Graph-1 vertex -> set of graph-2 partners."""
        out = {}
        for i, j in self.pairs:
            out.setdefault(i, set()).add(j)
        return out

    def as_dict2(self):
        out = {}
        for i, j in self.pairs:
            out.setdefault(j, set()).add(i)
        return out


def save_matching(matching, path, name1="graph1", name2="graph2"):
    """Write a matching as 1-based "i j" pair lines with a naming header."""
    with open(path, "w") as fh:
        fh.write(f"# matching {name1} -> {name2}\n")
        for i, j in sorted(matching.pairs):
            fh.write(f"{i + 1} {j + 1}\n")


def load_matching(path):
    pairs = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            i, j = line.split()
            pairs.append((int(i) - 1, int(j) - 1))
    return Matching(pairs)


@dataclass(frozen=True)
class Seeding:
    """A known partial matching between two graphs.

    ``pairs`` are the known matched seed pairs.  ``unknown`` optionally marks
    seed-seed pairs whose matched/unmatched status is not known (they receive
    zero weight downstream instead of an imputed dissimilarity).
    """

    pairs: frozenset
    n1: int
    n2: int
    unknown: frozenset = field(default_factory=frozenset)

    def __init__(self, pairs, n1, n2, unknown=()):
        object.__setattr__(self, "pairs", frozenset((int(i), int(j)) for i, j in pairs))
        object.__setattr__(self, "n1", int(n1))
        object.__setattr__(self, "n2", int(n2))
        object.__setattr__(self, "unknown", frozenset((int(i), int(j)) for i, j in unknown))
        for i, j in self.pairs:
            if not (0 <= i < self.n1 and 0 <= j < self.n2):
                raise SeedingError(f"seed pair ({i}, {j}) outside vertex ranges")

    @property
    def seeds1(self):
        """Sorted graph-1 seed vertices (defines omnibus row order)."""
        return sorted({i for i, _ in self.pairs})

    @property
    def seeds2(self):
        return sorted({j for _, j in self.pairs})

    @property
    def unseeded1(self):
        s = {i for i, _ in self.pairs}
        return [i for i in range(self.n1) if i not in s]

    @property
    def unseeded2(self):
        s = {j for _, j in self.pairs}
        return [j for j in range(self.n2) if j not in s]

    @property
    def s1(self):
        return len(self.seeds1)

    @property
    def s2(self):
        return len(self.seeds2)

    @property
    def u1(self):
        return self.n1 - self.s1

    @property
    def u2(self):
        return self.n2 - self.s2

    def image1(self, i):
        return {j for (a, j) in self.pairs if a == i}

    def image2(self, j):
        return {i for (i, b) in self.pairs if b == j}

    def matching(self):
        return Matching(self.pairs)

    def validate_against(self, truth):
        """Check the seeding property against a reference matching.

        Seeded vertices may only be matched to other seeded vertices, and
        seed-seed matches must be listed in the seeding itself.  Violations
        are warned about, not rejected.
        """
        s1, s2 = set(self.seeds1), set(self.seeds2)
        for i, j in truth.pairs:
            if (i, j) in self.pairs or (i, j) in self.unknown:
                continue
            if i in s1 or j in s2:
                warnings.warn(
                    f"matching pair ({i}, {j}) involves a seed but is absent "
                    "from the seeding; the seeding property is violated",
                    stacklevel=2,
                )


def save_seeding(seeding, path):
    with open(path, "w") as fh:
        for i, j in sorted(seeding.pairs):
            fh.write(f"{i + 1} {j + 1}\n")


def load_seeding(path, n1, n2):
    return Seeding(load_matching(path).pairs, n1, n2)


def impute_delta(d1, d2, seeding, i, j):
    """Cross-graph dissimilarity between seeds i (graph 1) and j (graph 2).

    Zero for matched pairs; otherwise the average of the mean dissimilarity
    from i to j's partners in graph 1 and from i's partners to j in graph 2.
    """
    if (i, j) in seeding.pairs:
        return 0.0
    si = sorted(seeding.image1(i))
    sj = sorted(seeding.image2(j))
    if not si:
        raise SeedingError(f"vertex {i} is not a graph-1 seed")
    if not sj:
        raise SeedingError(f"vertex {j} is not a graph-2 seed")
    term2 = np.mean([d2[y, j] for y in si])
    term1 = np.mean([d1[i, x] for x in sj])
    return float((term1 + term2) / 2.0)


@dataclass(frozen=True)
class OmnibusMatrix:
    """Joint dissimilarity over the s1 + s2 seeds of both graphs.

    ``values`` has block structure [[D1_seeds, delta], [delta.T, D2_seeds]]
    with rows/columns ordered by ``seeds1`` then ``seeds2`` of the seeding.
    ``unknown_mask`` flags cross entries whose status is unknown (to be
    zero-weighted, never read as dissimilarities).
    """

    values: np.ndarray
    seeding: Seeding
    unknown_mask: np.ndarray

    @property
    def size(self):
        return self.values.shape[0]


def build_omnibus(d1, d2, seeding):
    """Assemble the omnibus matrix from two normalized dissimilarities."""
    if len(seeding.pairs) == 0:
        raise SeedingError("empty seeding: the omnibus matrix needs seeds")
    s1_idx = np.asarray(seeding.seeds1, dtype=int)
    s2_idx = np.asarray(seeding.seeds2, dtype=int)
    s1, s2 = len(s1_idx), len(s2_idx)
    n = s1 + s2
    values = np.zeros((n, n))
    values[:s1, :s1] = np.asarray(d1)[np.ix_(s1_idx, s1_idx)]
    values[s1:, s1:] = np.asarray(d2)[np.ix_(s2_idx, s2_idx)]
    unknown = np.zeros((n, n), dtype=bool)
    for a, i in enumerate(s1_idx):
        for b, j in enumerate(s2_idx):
            if (i, j) in seeding.unknown:
                unknown[a, s1 + b] = unknown[s1 + b, a] = True
                continue
            delta = impute_delta(d1, d2, seeding, i, j)
            values[a, s1 + b] = values[s1 + b, a] = delta
    return OmnibusMatrix(values=values, seeding=seeding, unknown_mask=unknown)

"""Turning cost matrices into matchings, and match-quality metrics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from .seeding import Matching


class AssignmentError(ValueError):
    pass


def _check_costs(costs):
    costs = np.asarray(costs, dtype=float)
    if costs.ndim != 2 or costs.size == 0:
        raise AssignmentError("cost matrix must be a non-empty 2-d array")
    if not np.all(np.isfinite(costs)) or np.any(costs < 0):
        raise AssignmentError("costs must be finite and nonnegative")
    return costs


def distance_costs(points1, points2, squared=False):
    """Euclidean cost matrix between two embedded point sets."""
    d = cdist(np.atleast_2d(points1), np.atleast_2d(points2))
    return d**2 if squared else d


def hungarian(costs):
    """Minimum-cost bijective assignment.

    Rectangular inputs are padded with 10x the largest entry; padded
    assignments are dropped, so only min(rows, cols) pairs are returned.
    """
    costs = _check_costs(costs)
    r, c = costs.shape
    if r != c:
        pad_value = 10.0 * max(costs.max(), 1.0)
        n = max(r, c)
        padded = np.full((n, n), pad_value)
        padded[:r, :c] = costs
        rows, cols = linear_sum_assignment(padded)
        pairs = [(i, j) for i, j in zip(rows, cols) if i < r and j < c]
    else:
        rows, cols = linear_sum_assignment(costs)
        pairs = list(zip(rows, cols))
    return Matching(pairs)


def matching_cost(matching, costs):
    return float(sum(costs[i, j] for i, j in matching.pairs))


def gap_match(costs):
    """Generalized assignment: every row vertex gets at least one partner.

    Two-stage approximation: a rectangular minimum-cost assignment
    guarantees coverage (rows left uncovered when rows > cols attach to
    their cheapest column); then each still-unmatched column attaches to its
    cheapest row iff that edge costs strictly less than the current mean
    matched edge cost.  The second stage inflates the stage-one cost by at
    most a factor (u1 + k) / u1 after k attachments.
    """
    costs = _check_costs(costs)
    u1, u2 = costs.shape
    pairs = set(hungarian(costs).pairs)
    covered_rows = {i for i, _ in pairs}
    for i in range(u1):
        if i not in covered_rows:
            pairs.add((i, int(np.argmin(costs[i]))))
    matched_cols = {j for _, j in pairs}
    total = float(sum(costs[i, j] for i, j in pairs))
    for j in range(u2):
        if j in matched_cols:
            continue
        i = int(np.argmin(costs[:, j]))
        if costs[i, j] < total / len(pairs):
            pairs.add((i, j))
            total += costs[i, j]
    return Matching(sorted(pairs))


@dataclass(frozen=True)
class MatchEvaluation:
    n_correct1: int  # graph-1 vertices whose estimated partner set is exactly right
    n_correct2: int
    n_unseeded1: int
    n_unseeded2: int
    bijective: bool

    @property
    def match_ratio(self):
        """R_m in the equal-size bijective case, R_{s1,s2} otherwise."""
        if self.bijective:
            return self.n_correct1 / self.n_unseeded1 if self.n_unseeded1 else 1.0
        total = self.n_unseeded1 + self.n_unseeded2
        return (self.n_correct1 + self.n_correct2) / total if total else 1.0


def evaluate_match(est, truth, seeding):
    """Fraction of unseeded vertices whose estimated partner set equals the truth.

    Partner sets are compared as whole sets; a vertex with no estimated
    partner counts as correct only if the truth also leaves it unmatched.
    """
    u1, u2 = set(seeding.unseeded1), set(seeding.unseeded2)
    est1, truth1 = est.as_dict1(), truth.as_dict1()
    est2, truth2 = est.as_dict2(), truth.as_dict2()
    n_correct1 = sum(1 for i in u1 if est1.get(i, set()) == truth1.get(i, set()))
    n_correct2 = sum(1 for j in u2 if est2.get(j, set()) == truth2.get(j, set()))
    bijective = seeding.n1 == seeding.n2 and truth.is_bijection()
    return MatchEvaluation(n_correct1, n_correct2, len(u1), len(u2), bijective)


def edge_disagreement(g1, g2, phi):
    """Ordered-pair edge disagreements between g1 and g2 under a bijection.

    phi is a length-n array mapping graph-1 vertices to graph-2 vertices.
    Equals ||A - P B P^T||_F^2 for simple graphs.
    """
    if g1.n != g2.n:
        raise AssignmentError("edge_disagreement requires equal vertex counts")
    if not (g1.is_simple() and g2.is_simple()):
        raise AssignmentError("edge_disagreement is defined for simple graphs")
    phi = np.asarray(phi, dtype=int)
    if sorted(phi.tolist()) != list(range(g1.n)):
        raise AssignmentError("phi must be a bijection on the vertex set")
    b_mapped = g2.weights[np.ix_(phi, phi)]
    return int(np.sum(g1.weights != b_mapped))


def save_cost_matrix(costs, path):
    np.savetxt(path, costs, delimiter=",")

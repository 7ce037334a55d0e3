"""Frank-Wolfe baseline for the seeded graph matching problem.

Relaxes the search over permutations of the form I_s (+) P' to doubly
stochastic P' and minimizes ||A - P B P^T||_F^2 directly: linearize at the
current iterate, solve the assignment direction subproblem, take an exact
line-search step, and finally project the relaxed solution back to the
nearest permutation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .seeding import Matching, SeedingError


class SgmError(ValueError):
    pass


@dataclass(frozen=True)
class SgmResult:
    matching: Matching  # estimated pairs for the unseeded vertices
    objective: float  # ||A - P B P^T||_F^2 at the projected permutation
    objective_history: tuple  # relaxed objective at each Frank-Wolfe iterate
    n_iters: int


def _blocks(m, s):
    return m[:s, :s], m[:s, s:], m[s:, :s], m[s:, s:]


def _objective(a_blocks, b_blocks, p):
    a11, a12, a21, a22 = a_blocks
    b11, b12, b21, b22 = b_blocks
    r0 = a11 - b11
    r1 = a12 - b12 @ p.T
    r2 = a21 - p @ b21
    r3 = a22 - p @ b22 @ p.T
    return float((r0**2).sum() + (r1**2).sum() + (r2**2).sum() + (r3**2).sum())


def _gradient(a_blocks, b_blocks, p):
    _, a12, a21, a22 = a_blocks
    _, b12, b21, b22 = b_blocks
    r1 = a12 - b12 @ p.T
    r2 = a21 - p @ b21
    r3 = a22 - p @ b22 @ p.T
    return -2.0 * (r1.T @ b12 + r2 @ b21.T + r3 @ p @ b22.T + r3.T @ p @ b22)


def _exact_line_search(a_blocks, b_blocks, p, direction):
    """Minimize the quartic objective along p + alpha * direction on [0, 1]."""
    alphas = np.linspace(0.0, 1.0, 5)
    values = [_objective(a_blocks, b_blocks, p + a * direction) for a in alphas]
    coeffs = np.polyfit(alphas, values, 4)
    crit = [0.0, 1.0]
    for root in np.roots(np.polyder(coeffs)):
        if abs(root.imag) < 1e-12 and 0.0 < root.real < 1.0:
            crit.append(float(root.real))
    best = min(crit, key=lambda a: np.polyval(coeffs, a))
    return best, _objective(a_blocks, b_blocks, p + best * direction)


def sgm(g1, g2, seeding, max_iters=50, step_tol=1e-8, iterate_callback=None):
    """Match two equal-size graphs with a bijective seeding.

    Returns the estimated bijection on the unseeded vertices (in original
    labels) plus convergence diagnostics.  Every iterate stays doubly
    stochastic; the relaxed objective is non-increasing under the exact
    line search.
    """
    if g1.n != g2.n:
        raise SgmError(f"SGM needs equal vertex counts, got {g1.n} and {g2.n}")
    if not seeding.matching().is_bijection():
        raise SeedingError("SGM requires a bijective seeding")
    n = g1.n
    seeds1 = seeding.seeds1
    partner = dict(seeding.pairs)
    order1 = seeds1 + seeding.unseeded1
    order2 = [partner[i] for i in seeds1] + seeding.unseeded2
    a = g1.weights[np.ix_(order1, order1)]
    b = g2.weights[np.ix_(order2, order2)]
    s = len(seeds1)
    u = n - s
    if u == 0:
        return SgmResult(Matching([]), _objective(_blocks(a, s), _blocks(b, s), np.eye(0)), (), 0)
    a_blocks = _blocks(a, s)
    b_blocks = _blocks(b, s)

    p = np.full((u, u), 1.0 / u)  # barycenter start
    history = [_objective(a_blocks, b_blocks, p)]
    if iterate_callback is not None:
        iterate_callback(p)
    iters = 0
    for iters in range(1, max_iters + 1):
        grad = _gradient(a_blocks, b_blocks, p)
        rows, cols = linear_sum_assignment(grad)
        q = np.zeros((u, u))
        q[rows, cols] = 1.0
        direction = q - p
        alpha, value = _exact_line_search(a_blocks, b_blocks, p, direction)
        if alpha <= step_tol:
            break
        p = p + alpha * direction
        history.append(value)
        if iterate_callback is not None:
            iterate_callback(p)

    rows, cols = linear_sum_assignment(-p)  # nearest permutation projection
    perm = np.zeros((u, u))
    perm[rows, cols] = 1.0
    final = _objective(a_blocks, b_blocks, perm)
    pairs = [(order1[s + i], order2[s + j]) for i, j in zip(rows, cols)]
    return SgmResult(Matching(pairs), final, tuple(history), iters)

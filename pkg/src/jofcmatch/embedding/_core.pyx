# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled SMACOF hot kernels: stress evaluation and the Guttman numerator.

Mirrors _core_py exactly; selected at import by the embedding package.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

BACKEND = "cython"


def pairwise_distances(double[:, ::1] x):
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double acc, diff
    out_arr = np.zeros((n, n))
    cdef double[:, ::1] out = out_arr
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for k in range(d):
                diff = x[i, k] - x[j, k]
                acc += diff * diff
            acc = sqrt(acc)
            out[i, j] = acc
            out[j, i] = acc
    return out_arr


def stress_value(double[:, ::1] diss, double[:, ::1] weights, double[:, ::1] x):
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double acc, diff, resid, total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for k in range(d):
                diff = x[i, k] - x[j, k]
                acc += diff * diff
            resid = sqrt(acc) - diss[i, j]
            total += weights[i, j] * resid * resid
    return total


def guttman_bx(double[:, ::1] diss, double[:, ::1] weights, double[:, ::1] x):
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double acc, diff, bij, dist
    bx_arr = np.zeros((n, d))
    cdef double[:, ::1] bx = bx_arr
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for k in range(d):
                diff = x[i, k] - x[j, k]
                acc += diff * diff
            dist = sqrt(acc)
            if dist <= 0.0:
                continue
            bij = weights[i, j] * diss[i, j] / dist
            # off-diagonal B entries are -bij; the diagonal absorbs the sum
            for k in range(d):
                bx[i, k] += bij * (x[i, k] - x[j, k])
                bx[j, k] += bij * (x[j, k] - x[i, k])
    return bx_arr

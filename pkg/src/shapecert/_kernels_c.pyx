# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see _kernels_py for the reference semantics.

The float kernel performs the same operations in the same order as the pure
version (and the build disables FMA contraction), so results are
bit-identical.  The integer/Fraction kernels run in object mode and only gain
from typed loop indices.
"""

from libc.math cimport sqrt

import numpy as np


def run_embed_phase(double[:, ::1] pos, long[::1] edge_i, long[::1] edge_j,
                    double[::1] target, double rep_k, double spring_k,
                    double dt, int iters, bint with_repulsion):
    cdef Py_ssize_t n = pos.shape[0]
    cdef Py_ssize_t d = pos.shape[1]
    cdef Py_ssize_t m = edge_i.shape[0]
    cdef Py_ssize_t i, j, k, e, a, b, it
    cdef double r2, diff, mag, norm, u
    buf = np.zeros((n, d))
    cdef double[:, ::1] forces = buf

    for it in range(iters):
        forces[:, :] = 0.0
        if with_repulsion:
            for i in range(n):
                for j in range(i + 1, n):
                    r2 = 0.0
                    for k in range(d):
                        diff = pos[i, k] - pos[j, k]
                        r2 += diff * diff
                    mag = rep_k / (r2 + 1e-9)
                    norm = sqrt(r2)
                    if norm > 0.0:
                        for k in range(d):
                            u = (pos[i, k] - pos[j, k]) / norm
                            forces[i, k] += mag * u
                            forces[j, k] -= mag * u
        for e in range(m):
            a = edge_i[e]
            b = edge_j[e]
            r2 = 0.0
            for k in range(d):
                diff = pos[a, k] - pos[b, k]
                r2 += diff * diff
            norm = sqrt(r2)
            if norm > 0.0:
                mag = spring_k * (norm - target[e])
                for k in range(d):
                    u = (pos[a, k] - pos[b, k]) / norm
                    forces[a, k] -= mag * u
                    forces[b, k] += mag * u
        for i in range(n):
            for k in range(d):
                pos[i, k] += dt * forces[i, k]


def bareiss_leading_minors(rows, bint stop_on_nonpositive=False):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k
    cdef list M = [list(r) for r in rows]
    cdef list minors = []
    cdef list Mk, Mi
    prev = 1
    for k in range(n):
        piv = (<list>M[k])[k]
        minors.append(piv)
        if stop_on_nonpositive and piv <= 0:
            break
        if k == n - 1 or piv == 0:
            break
        Mk = <list>M[k]
        for i in range(k + 1, n):
            Mi = <list>M[i]
            mik = Mi[k]
            for j in range(k + 1, n):
                Mi[j] = (piv * Mi[j] - mik * Mk[j]) // prev
        prev = piv
    return minors


def lcp_pivot(list tableau, Py_ssize_t r, Py_ssize_t c):
    cdef list row = <list>tableau[r]
    cdef Py_ssize_t width = len(row)
    cdef Py_ssize_t i, j
    piv = row[c]
    inv = 1 / piv
    for j in range(width):
        row[j] = row[j] * inv
    for i in range(len(tableau)):
        if i == r:
            continue
        ti = <list>tableau[i]
        f = ti[c]
        if f:
            for j in range(width):
                ti[j] = ti[j] - f * row[j]

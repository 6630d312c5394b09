# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled brute-force loops for the enumeration oracle.

Elements of O_d are integer pairs (x0, x1) on the basis (1, omega) with
omega^2 = s*omega + c.  Inputs are int64 arrays; values are assumed small
enough that all products fit in 64 bits (the caller checks the box size).
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t


def oracle_pairs(cnp.int64_t[:, :] E, cnp.int64_t[:] rank, int64_t a0, int64_t a1,
                 int64_t s, int64_t c):
    """All (i, j, k, l) with w1=E[i], h1=E[j], w2=E[k], h2=E[l], w1 < w2,
    w1 h1 + w2 h2 = (a0, a1) and w1 conj(h1) + w2 conj(h2) = 0."""
    cdef Py_ssize_t n = E.shape[0]
    cdef Py_ssize_t i, j, k, l
    cdef int64_t x0, x1, y0, y1, hb0, hb1
    cdef int64_t p0, p1, q0, q1, r0, r1, m0, m1, x0k, x1k
    out = []
    for i in range(n):
        x0 = E[i, 0]; x1 = E[i, 1]
        for j in range(n):
            y0 = E[j, 0]; y1 = E[j, 1]
            hb0 = y0 + s * y1; hb1 = -y1
            p0 = x0 * y0 + c * x1 * y1
            p1 = x0 * y1 + x1 * y0 + s * x1 * y1
            q0 = x0 * hb0 + c * x1 * hb1
            q1 = x0 * hb1 + x1 * hb0 + s * x1 * hb1
            r0 = a0 - p0; r1 = a1 - p1
            m0 = -q0; m1 = -q1
            for k in range(n):
                if rank[k] <= rank[i]:
                    continue
                x0k = E[k, 0]; x1k = E[k, 1]
                for l in range(n):
                    y0 = E[l, 0]; y1 = E[l, 1]
                    if x0k * y0 + c * x1k * y1 != r0:
                        continue
                    if x0k * y1 + x1k * y0 + s * x1k * y1 != r1:
                        continue
                    hb0 = y0 + s * y1; hb1 = -y1
                    if x0k * hb0 + c * x1k * hb1 != m0:
                        continue
                    if x0k * hb1 + x1k * hb0 + s * x1k * hb1 != m1:
                        continue
                    out.append((i, j, k, l))
    return out


def oracle_twists(cnp.int64_t[:, :] T, cnp.int64_t[:] trank, int64_t w10, int64_t w11,
                  int64_t rw1, int64_t w20, int64_t w21, int64_t rw2, int64_t s, int64_t c):
    """All (p, q) with t1=T[p] < w1, t2=T[q] < w2 and the omega coordinate of
    conj(w1) t1 + conj(w2) t2 + conj(w1) w2 equal to zero."""
    cdef Py_ssize_t m = T.shape[0]
    cdef Py_ssize_t p, q
    cdef int64_t b10 = w10 + s * w11, b11 = -w11
    cdef int64_t b20 = w20 + s * w21, b21 = -w21
    cdef int64_t base = b10 * w21 + b11 * w20 + s * b11 * w21
    cdef int64_t e1, e2
    out = []
    for p in range(m):
        if trank[p] >= rw1:
            continue
        e1 = base + b10 * T[p, 1] + b11 * T[p, 0] + s * b11 * T[p, 1]
        for q in range(m):
            if trank[q] >= rw2:
                continue
            e2 = b20 * T[q, 1] + b21 * T[q, 0] + s * b21 * T[q, 1]
            if e1 + e2 == 0:
                out.append((p, q))
    return out

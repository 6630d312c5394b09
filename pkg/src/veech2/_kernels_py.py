"""Numpy versions of the oracle loops, used when the extension is not built.

Same contract as the compiled module: elements are integer pairs on the
basis (1, omega) with omega^2 = s*omega + c.
"""

import numpy as np


def _mul(x0, x1, y0, y1, s, c):
    return x0 * y0 + c * x1 * y1, x0 * y1 + x1 * y0 + s * x1 * y1


def oracle_pairs(E, rank, a0, a1, s, c):
    E = np.asarray(E, dtype=np.int64)
    rank = np.asarray(rank, dtype=np.int64)
    n = len(E)
    # every (w2, h2) pair at once
    k, l = np.divmod(np.arange(n * n), n)
    wx0, wx1 = E[k, 0], E[k, 1]
    hy0, hy1 = E[l, 0], E[l, 1]
    pr0, pr1 = _mul(wx0, wx1, hy0, hy1, s, c)
    cj0, cj1 = _mul(wx0, wx1, hy0 + s * hy1, -hy1, s, c)
    rk = rank[k]
    out = []
    for i in range(n):
        x0, x1 = int(E[i, 0]), int(E[i, 1])
        for j in range(n):
            y0, y1 = int(E[j, 0]), int(E[j, 1])
            p0, p1 = _mul(x0, x1, y0, y1, s, c)
            q0, q1 = _mul(x0, x1, y0 + s * y1, -y1, s, c)
            hit = (pr0 == a0 - p0) & (pr1 == a1 - p1) & (cj0 == -q0) & (cj1 == -q1)
            hit &= rk > rank[i]
            for idx in np.flatnonzero(hit):
                out.append((i, j, int(k[idx]), int(l[idx])))
    return out


def oracle_twists(T, trank, w10, w11, rw1, w20, w21, rw2, s, c):
    T = np.asarray(T, dtype=np.int64)
    trank = np.asarray(trank, dtype=np.int64)
    b10, b11 = w10 + s * w11, -w11
    b20, b21 = w20 + s * w21, -w21
    base = _mul(b10, b11, w20, w21, s, c)[1]
    e1 = base + _mul(b10, b11, T[:, 0], T[:, 1], s, c)[1]
    e2 = _mul(b20, b21, T[:, 0], T[:, 1], s, c)[1]
    ps = np.flatnonzero(trank < rw1)
    qs = np.flatnonzero(trank < rw2)
    out = []
    for p in ps:
        for q in qs[e2[qs] == -e1[p]]:
            out.append((int(p), int(q)))
    return out

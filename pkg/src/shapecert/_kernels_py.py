"""Pure-Python kernels.

These are the reference implementations of the three inner loops that the
compiled extension (``_kernels_c``) accelerates.  Both backends must agree
exactly: integer/Fraction kernels bit-for-bit by construction, the float
kernel because the compiled version is built without FMA contraction and
performs the same operations in the same order.
"""

from math import sqrt


def run_embed_phase(pos, edge_i, edge_j, target, rep_k, spring_k, dt, iters,
                    with_repulsion):
    """Advance the force simulation in place for `iters` Euler steps.

    pos is an (n, d) float64 array.  edge_i/edge_j/target describe the springs.
    Repulsion acts between every vertex pair, springs only along edges.
    """
    n, d = pos.shape
    m = len(edge_i)
    p = pos.tolist()
    ei = [int(v) for v in edge_i]
    ej = [int(v) for v in edge_j]
    tgt = [float(v) for v in target]

    for _ in range(iters):
        forces = [[0.0] * d for _ in range(n)]
        if with_repulsion:
            for i in range(n):
                pi = p[i]
                fi = forces[i]
                for j in range(i + 1, n):
                    pj = p[j]
                    r2 = 0.0
                    for k in range(d):
                        diff = pi[k] - pj[k]
                        r2 += diff * diff
                    mag = rep_k / (r2 + 1e-9)
                    norm = sqrt(r2)
                    if norm > 0.0:
                        fj = forces[j]
                        for k in range(d):
                            u = (pi[k] - pj[k]) / norm
                            fi[k] += mag * u
                            fj[k] -= mag * u
        for e in range(m):
            a = ei[e]
            b = ej[e]
            pa = p[a]
            pb = p[b]
            r2 = 0.0
            for k in range(d):
                diff = pa[k] - pb[k]
                r2 += diff * diff
            norm = sqrt(r2)
            if norm > 0.0:
                mag = spring_k * (norm - tgt[e])
                fa = forces[a]
                fb = forces[b]
                for k in range(d):
                    u = (pa[k] - pb[k]) / norm
                    fa[k] -= mag * u
                    fb[k] += mag * u
        for i in range(n):
            pi = p[i]
            fi = forces[i]
            for k in range(d):
                pi[k] += dt * fi[k]

    for i in range(n):
        for k in range(d):
            pos[i, k] = p[i][k]


def bareiss_leading_minors(rows, stop_on_nonpositive=False):
    """Leading principal minors of an integer matrix, fraction-free.

    Returns the minors in order 1..n.  The list is truncated at the first
    zero pivot (no row pivoting is attempted) and, when stop_on_nonpositive
    is set, at the first minor <= 0 -- which is all a positive-definiteness
    check needs.
    """
    n = len(rows)
    M = [list(r) for r in rows]
    minors = []
    prev = 1
    for k in range(n):
        piv = M[k][k]
        minors.append(piv)
        if stop_on_nonpositive and piv <= 0:
            break
        if k == n - 1 or piv == 0:
            break
        Mk = M[k]
        for i in range(k + 1, n):
            Mi = M[i]
            mik = Mi[k]
            for j in range(k + 1, n):
                Mi[j] = (piv * Mi[j] - mik * Mk[j]) // prev
        prev = piv
    return minors


def lcp_pivot(tableau, r, c):
    """One exchange pivot on a list-of-lists Fraction tableau, in place."""
    row = tableau[r]
    piv = row[c]
    inv = 1 / piv
    for j in range(len(row)):
        row[j] = row[j] * inv
    for i in range(len(tableau)):
        if i == r:
            continue
        ti = tableau[i]
        f = ti[c]
        if f:
            for j in range(len(ti)):
                ti[j] = ti[j] - f * row[j]

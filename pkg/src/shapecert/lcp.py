"""Exact convex QP over the rationals via Lemke's complementary pivoting.

Everything here stays in Fraction arithmetic: the tableau, the lexicographic
ratio tests that rule out cycling, and the final complementarity check
(z . w == 0 is verified as an identity, not to a tolerance).  Convex QPs are
reduced to a linear complementarity problem through their KKT conditions; the
resulting matrix is positive semidefinite, for which Lemke's method is
guaranteed to terminate meaningfully.

The two geometric entry points are simplex_square_distance (exact squared
distance between convex hulls of point sets, with witnesses) and
simplices_intersect (a phase-1 feasibility LP pushed through the same
pivoting engine).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from . import _kernels as kernels
from .linalg import RatMatrix

__all__ = [
    "LCPStatus",
    "LCPProblem",
    "LCPSolution",
    "LemkeError",
    "lemke_solve",
    "QPProblem",
    "qp_to_lcp",
    "solve_qp",
    "DistanceWitness",
    "simplex_square_distance",
    "simplices_intersect",
]

# Generous pivot budget; lexicographic pivoting cannot cycle, so hitting this
# means a bug, not a hard instance.
MAX_PIVOTS = 10000


class LemkeError(RuntimeError):
    """A pivoting invariant failed; indicates a bug, not a hard instance."""


class LCPStatus(Enum):
    SOLVED = "solved"
    RAY_TERMINATION = "ray_termination"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LCPProblem:
    """Find z >= 0, w = M z + q >= 0 with z . w = 0."""

    M: RatMatrix
    q: tuple

    def __post_init__(self):
        if self.M.rows != self.M.cols:
            raise ValueError("LCP matrix must be square")
        q = tuple(Fraction(v) for v in self.q)
        if len(q) != self.M.rows:
            raise ValueError("q length does not match M")
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class LCPSolution:
    status: LCPStatus
    z: Optional[tuple] = None
    w: Optional[tuple] = None


def _lex_smaller(row_a, row_b, den_a, den_b, cols):
    """Compare ratio vectors row_a/den_a < row_b/den_b lexicographically.

    Both denominators are positive, so cross-multiplication preserves order
    and avoids building new Fractions in the common case.
    """
    for c in cols:
        lhs = row_a[c] * den_b
        rhs = row_b[c] * den_a
        if lhs != rhs:
            return lhs < rhs
    return False


def lemke_solve(problem: LCPProblem) -> LCPSolution:
    """Lemke's algorithm with the all-ones covering vector.

    Column layout of the tableau: w_0..w_{n-1} | z_0..z_{n-1} | t | rhs,
    where t is the artificial covering variable.  The leaving-row choice uses
    a lexicographic ratio test over (rhs, w-columns); since the w-columns
    carry the inverse basis, ties are broken consistently and cycling is
    impossible.
    """
    n = problem.M.rows
    q = list(problem.q)
    if all(v >= 0 for v in q):
        return LCPSolution(LCPStatus.SOLVED, z=tuple(Fraction(0) for _ in q),
                           w=tuple(q))

    cover_col = 2 * n
    rhs_col = 2 * n + 1
    lex_cols = (rhs_col,) + tuple(range(n))
    tableau = []
    for i in range(n):
        row = [Fraction(0)] * (2 * n + 2)
        row[i] = Fraction(1)
        for j in range(n):
            row[n + j] = -problem.M.data[i][j]
        row[cover_col] = Fraction(-1)
        row[rhs_col] = q[i]
        tableau.append(row)
    basis = list(range(n))

    # Initial pivot: the covering variable enters; the leaving row is the
    # lexicographic minimum of (q_i, e_i), i.e. most negative q with ties
    # going to the largest row index.  That makes every post-pivot basis row
    # lexicographically positive.
    r = 0
    for i in range(1, n):
        if q[i] < q[r] or (q[i] == q[r] and i > r):
            r = i
    kernels.lcp_pivot(tableau, r, cover_col)
    leaving = basis[r]
    basis[r] = cover_col
    entering = leaving + n  # the complement of a w-variable is its z-partner

    for _ in range(MAX_PIVOTS):
        r = -1
        for i in range(n):
            coeff = tableau[i][entering]
            if coeff <= 0:
                continue
            if r < 0 or _lex_smaller(tableau[i], tableau[r], coeff,
                                     tableau[r][entering], lex_cols):
                r = i
        if r < 0:
            # Unbounded ray in the entering direction.
            return LCPSolution(LCPStatus.RAY_TERMINATION)
        leaving = basis[r]
        kernels.lcp_pivot(tableau, r, entering)
        basis[r] = entering
        if leaving == cover_col:
            return _extract_solution(problem, tableau, basis, n, rhs_col)
        entering = leaving + n if leaving < n else leaving - n
    raise LemkeError("pivot limit exceeded; lexicographic rule should prevent this")


def _extract_solution(problem, tableau, basis, n, rhs_col):
    z = [Fraction(0)] * n
    w = [Fraction(0)] * n
    for row, var in enumerate(basis):
        val = tableau[row][rhs_col]
        if val < 0:
            raise LemkeError("negative basic value after pivoting")
        if var < n:
            w[var] = val
        elif var < 2 * n:
            z[var - n] = val
    # Exact re-verification of the defining identities.
    for i in range(n):
        lhs = sum(problem.M.data[i][j] * z[j] for j in range(n)) + problem.q[i]
        if lhs != w[i]:
            raise LemkeError("w != M z + q at extraction")
    if sum(zi * wi for zi, wi in zip(z, w)) != 0:
        raise LemkeError("complementarity violated at extraction")
    return LCPSolution(LCPStatus.SOLVED, z=tuple(z), w=tuple(w))


@dataclass(frozen=True)
class QPProblem:
    """min (1/2) x^T H x + c^T x  subject to  A x >= b, x >= 0.

    H must be symmetric (and PSD for the solver's guarantees; that is not
    checked here).
    """

    H: RatMatrix
    c: tuple
    A: RatMatrix
    b: tuple

    def __post_init__(self):
        if not self.H.is_symmetric():
            raise ValueError("H must be symmetric")
        if self.H.rows != self.A.cols:
            raise ValueError("H and A disagree on the number of variables")
        c = tuple(Fraction(v) for v in self.c)
        b = tuple(Fraction(v) for v in self.b)
        if len(c) != self.H.rows or len(b) != self.A.rows:
            raise ValueError("c or b has the wrong length")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "b", b)


def qp_to_lcp(qp: QPProblem) -> LCPProblem:
    """KKT reduction: z = (x, multipliers), M = [[H, -A^T], [A, 0]], q = (c, -b)."""
    nx, nc = qp.H.rows, qp.A.rows
    size = nx + nc
    M = [[Fraction(0)] * size for _ in range(size)]
    for i in range(nx):
        for j in range(nx):
            M[i][j] = qp.H.data[i][j]
        for j in range(nc):
            M[i][nx + j] = -qp.A.data[j][i]
    for i in range(nc):
        for j in range(nx):
            M[nx + i][j] = qp.A.data[i][j]
    q = list(qp.c) + [-v for v in qp.b]
    return LCPProblem(RatMatrix(M), tuple(q))


def solve_qp(qp: QPProblem):
    """Returns (x, status); x is None unless status is SOLVED.

    The KKT matrix of a convex QP is positive semidefinite, hence
    copositive-plus, and for that class a Lemke ray certifies that the
    complementarity system has no solution at all -- reported as INFEASIBLE.
    """
    sol = lemke_solve(qp_to_lcp(qp))
    if sol.status is LCPStatus.RAY_TERMINATION:
        return None, LCPStatus.INFEASIBLE
    if sol.status is not LCPStatus.SOLVED:
        return None, sol.status
    return sol.z[: qp.H.rows], sol.status


class DistanceWitness(NamedTuple):
    """Closest pair between two hulls, in both coordinate systems."""

    bary_first: tuple
    bary_second: tuple
    point_first: tuple
    point_second: tuple


def _clean_points(points, name):
    pts = [tuple(Fraction(c) for c in p) for p in points]
    if not pts:
        raise ValueError("%s is empty" % name)
    dim = len(pts[0])
    if dim == 0 or any(len(p) != dim for p in pts):
        raise ValueError("%s has inconsistent or zero dimension" % name)
    return pts, dim


def simplex_square_distance(points_x: Sequence, points_y: Sequence):
    """Exact min squared distance between conv(points_x) and conv(points_y).

    Solves min |sum a_i x_i - sum b_j y_j|^2 over the two barycentric
    simplices as a rational QP.  Returns (d2, DistanceWitness); d2 == 0
    exactly when the hulls intersect.
    """
    X, dx = _clean_points(points_x, "first point set")
    Y, dy = _clean_points(points_y, "second point set")
    if dx != dy:
        raise ValueError("point sets live in different dimensions")
    m, n = len(X), len(Y)

    def dot(p, q):
        return sum(a * b for a, b in zip(p, q))

    # Gram matrix of the stacked generators (x_1..x_m, -y_1..-y_n); the
    # objective |P a - Q b|^2 doubles it for the (1/2) x^T H x convention.
    size = m + n
    H = [[Fraction(0)] * size for _ in range(size)]
    for i in range(m):
        for j in range(m):
            H[i][j] = 2 * dot(X[i], X[j])
        for j in range(n):
            v = -2 * dot(X[i], Y[j])
            H[i][m + j] = v
            H[m + j][i] = v
    for i in range(n):
        for j in range(n):
            H[m + i][m + j] = 2 * dot(Y[i], Y[j])

    # sum a = 1 and sum b = 1, each written as a pair of >= constraints.
    A = []
    b = []
    for lo, hi, sign in ((0, m, 1), (0, m, -1), (m, size, 1), (m, size, -1)):
        A.append([Fraction(sign * int(lo <= j < hi)) for j in range(size)])
        b.append(Fraction(sign))
    qp = QPProblem(RatMatrix(H), tuple([Fraction(0)] * size), RatMatrix(A), tuple(b))
    x, status = solve_qp(qp)
    if status is not LCPStatus.SOLVED:
        raise LemkeError("distance QP ended with %s; PSD instances must solve"
                         % status.value)
    alpha, beta = x[:m], x[m:]
    if sum(alpha) != 1 or sum(beta) != 1 or any(v < 0 for v in x):
        raise LemkeError("distance QP witness violates barycentric constraints")
    px = tuple(sum(alpha[i] * X[i][k] for i in range(m)) for k in range(dx))
    py = tuple(sum(beta[j] * Y[j][k] for j in range(n)) for k in range(dx))
    d2 = sum((a - b) ** 2 for a, b in zip(px, py))
    return d2, DistanceWitness(tuple(alpha), tuple(beta), px, py)


def simplices_intersect(points_x: Sequence, points_y: Sequence) -> bool:
    """Do the convex hulls of the two point sets share a point?

    Phase-1 feasibility LP: minimize the l1 norm of slack variables s+ + s-
    subject to  sum a_i x_i - sum b_j y_j + s+ - s- = 0  and the barycentric
    constraints.  The hulls meet iff the optimum is exactly 0.  The LP runs
    through the same Lemke engine (H = 0).
    """
    X, dx = _clean_points(points_x, "first point set")
    Y, dy = _clean_points(points_y, "second point set")
    if dx != dy:
        raise ValueError("point sets live in different dimensions")
    m, n = len(X), len(Y)
    size = m + n + 2 * dx  # alphas, betas, s+, s-

    zero = Fraction(0)
    H = RatMatrix([[zero] * size for _ in range(size)])
    c = [zero] * (m + n) + [Fraction(1)] * (2 * dx)

    rows = []
    b = []
    for k in range(dx):
        row = [X[i][k] for i in range(m)]
        row += [-Y[j][k] for j in range(n)]
        row += [Fraction(int(t == k)) for t in range(dx)]
        row += [-Fraction(int(t == k)) for t in range(dx)]
        rows.append(row)
        b.append(zero)
        rows.append([-v for v in row])
        b.append(zero)
    for lo, hi, sign in ((0, m, 1), (0, m, -1), (m, m + n, 1), (m, m + n, -1)):
        rows.append([Fraction(sign * int(lo <= j < hi)) for j in range(size)])
        b.append(Fraction(sign))

    qp = QPProblem(H, tuple(c), RatMatrix(rows), tuple(b))
    x, status = solve_qp(qp)
    if status is not LCPStatus.SOLVED:
        raise LemkeError("feasibility LP ended with %s" % status.value)
    slack_total = sum(x[m + n:])
    return slack_total == 0

"""Exact rational matrices and certified smallest-singular-value bounds.

Positive definiteness is decided by Sylvester's criterion with fraction-free
(Bareiss) elimination over the integers, so the certified sigma bounds never
depend on floating point except as a starting guess.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import _kernels as kernels
from .rationals import CertificationError, RatInterval

__all__ = [
    "RatMatrix",
    "exact_determinant",
    "is_positive_definite",
    "float_min_singular_value",
    "sigma_min_bounds",
]


class RatMatrix:
    """Dense matrix of exact rationals (row-major list of lists)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = [[Fraction(v) for v in row] for row in data]
        if not data or not data[0]:
            raise ValueError("matrix must have at least one row and column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ValueError("ragged rows")
        self.data = data
        self.rows = len(data)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.data == other.data

    def __repr__(self):
        return "RatMatrix(%dx%d)" % (self.rows, self.cols)

    def transpose(self) -> "RatMatrix":
        return RatMatrix([[self.data[i][j] for i in range(self.rows)]
                          for j in range(self.cols)])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch: %dx%d @ %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        ot = other.transpose().data  # row access on both sides
        out = []
        for row in self.data:
            out.append([sum(a * b for a, b in zip(row, col)) for col in ot])
        return RatMatrix(out)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return RatMatrix([[v * scalar for v in row] for row in self.data])

    __rmul__ = __mul__

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RatMatrix([[a - b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.data, other.data)])

    def gram(self) -> "RatMatrix":
        """A^T A if the matrix is tall (or square), A A^T if wide.

        Either way the result is symmetric PSD with the same nonzero singular
        values as A, so the smaller of the two squares is used.
        """
        if self.cols <= self.rows:
            return self.transpose() @ self
        return self @ self.transpose()

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        d = self.data
        return all(d[i][j] == d[j][i]
                   for i in range(self.rows) for j in range(i + 1, self.cols))

    def to_float(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.data], dtype=float)

    def scaled_integer_entries(self):
        """(D*self as int rows, D) for the positive common denominator D."""
        denom = 1
        for row in self.data:
            for v in row:
                denom = denom * v.denominator // math.gcd(denom, v.denominator)
        ints = [[v.numerator * (denom // v.denominator) for v in row]
                for row in self.data]
        return ints, denom


def exact_determinant(mat: RatMatrix) -> Fraction:
    """Exact determinant via fraction-free elimination with row pivoting."""
    if mat.rows != mat.cols:
        raise ValueError("determinant of a non-square matrix")
    n = mat.rows
    # Scale each row to integers by its own denominator lcm; det picks up
    # the product of the scales.
    scale = 1
    M = []
    for row in mat.data:
        d = 1
        for v in row:
            d = d * v.denominator // math.gcd(d, v.denominator)
        scale *= d
        M.append([v.numerator * (d // v.denominator) for v in row])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        piv = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                M[i][j] = (piv * M[i][j] - mik * M[k][j]) // prev
            M[i][k] = 0
        prev = piv
    return Fraction(sign * M[n - 1][n - 1], scale)


def is_positive_definite(mat: RatMatrix) -> bool:
    """Sylvester's criterion, decided exactly.

    The matrix is scaled by a single positive denominator D first; leading
    minors scale by D^k > 0, so their signs are unchanged and the elimination
    runs over plain integers.
    """
    if mat.rows != mat.cols:
        raise ValueError("positive definiteness needs a square matrix")
    if not mat.is_symmetric():
        raise ValueError("positive definiteness needs a symmetric matrix")
    ints, _ = mat.scaled_integer_entries()
    minors = kernels.bareiss_leading_minors(ints, stop_on_nonpositive=True)
    return len(minors) == mat.rows and minors[-1] > 0


def float_min_singular_value(mat: RatMatrix) -> float:
    """Floating estimate of sigma_min; only ever used to seed certification."""
    try:
        sv = np.linalg.svd(mat.to_float(), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise CertificationError("singular value estimate unavailable: %s" % exc)
    return float(sv[-1])


def sigma_min_bounds(mat: RatMatrix, digits: int = 4) -> RatInterval:
    """Certified interval around the smallest singular value of mat.

    Candidates come from the floating SVD rounded to a 10^-digits grid (the
    lower one backed off a step, which is almost always already certifiable).
    The lower bound l is proven by positive definiteness of B - l^2 I for the
    Gram matrix B, the upper bound u by failure of positive definiteness of
    B - u^2 I; each side widens by one grid step at most 3 times before
    raising CertificationError.
    """
    B = mat.gram()
    ident = RatMatrix.identity(B.rows)
    scale = 10**digits
    est = float_min_singular_value(mat) * scale
    lo_i = max(math.floor(est) - 1, 0)
    hi_i = max(math.ceil(est), lo_i)

    for _ in range(4):
        lb = Fraction(lo_i, scale)
        if lo_i == 0 or is_positive_definite(B - ident * (lb * lb)):
            break
        lo_i = max(lo_i - 1, 0)
    else:
        raise CertificationError("could not certify sigma_min lower bound")
    for _ in range(4):
        ub = Fraction(hi_i, scale)
        if not is_positive_definite(B - ident * (ub * ub)):
            break
        hi_i += 1
    else:
        raise CertificationError("could not certify sigma_min upper bound")
    return RatInterval(lb, ub)

"""Floating-point heuristic embedder.

Nothing in this module is certified; it exists to produce a plausible
starting realization that the exact prover then scrutinises.  The force
simulation runs in float64 (through the kernel backend), the self-
intersection screen is a float convex-hull distance, and only at the very
end are coordinates snapped to rationals on a decimal grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels as kernels
from .complexes import AbstractSimplicialComplex, Realization, SquaredLengthSpec

__all__ = [
    "EmbedConfig",
    "EmbedError",
    "heuristic_embed",
    "round_to_rational",
    "float_collision_distance",
    "float_self_intersection_heuristic",
]


@dataclass
class EmbedConfig:
    repulsion_strength: float = 0.2
    spring_strength: float = 1.0
    time_step: float = 0.05
    phase1_iterations: int = 2000
    phase2_iterations: int = 2000
    rng_seed: int = 0
    final_round_digits: int = 8
    max_restarts: int = 10

    def __post_init__(self):
        if self.time_step <= 0 or self.spring_strength <= 0:
            raise ValueError("time step and spring strength must be positive")
        if self.repulsion_strength < 0:
            raise ValueError("repulsion strength must be non-negative")
        if min(self.phase1_iterations, self.phase2_iterations) < 0:
            raise ValueError("iteration counts must be non-negative")
        if self.final_round_digits < 1:
            raise ValueError("final_round_digits must be >= 1")
        if self.max_restarts < 1:
            raise ValueError("max_restarts must be >= 1")
        if not 0 <= self.rng_seed < 2 ** 128:  # Philox key range
            raise ValueError("rng_seed must be a non-negative 128-bit integer")


class EmbedError(RuntimeError):
    """All restarts produced a self-intersecting layout.

    last_realization carries the (rounded) result of the final attempt so a
    caller can still inspect what went wrong.
    """

    def __init__(self, message, last_realization=None):
        super().__init__(message)
        self.last_realization = last_realization


def round_to_rational(value: float, digits: int) -> Fraction:
    """Snap a float to the nearest multiple of 10^-digits, exactly."""
    if not math.isfinite(value):
        raise ValueError("cannot round non-finite value %r" % value)
    return Fraction(round(Fraction(value) * 10**digits), 10**digits)


def heuristic_embed(complex: AbstractSimplicialComplex, dim: int,
                    lengths: SquaredLengthSpec,
                    config: EmbedConfig | None = None) -> Realization:
    """Force-directed layout aiming for the desired edge lengths.

    Phase 1 combines all-pairs repulsion with edge springs to untangle the
    layout; phase 2 drops the repulsion so the springs settle.  If the float
    self-intersection screen rejects the result, the attempt restarts from
    fresh random positions, up to max_restarts attempts in total.
    """
    cfg = config or EmbedConfig()
    if dim < 1:
        raise ValueError("ambient dimension must be >= 1")
    n = complex.n_vertices
    edge_i = np.array([complex.vertex_index(u) for u, _ in complex.edges],
                      dtype=np.int64)
    edge_j = np.array([complex.vertex_index(v) for _, v in complex.edges],
                      dtype=np.int64)
    target = np.array([math.sqrt(float(lengths.resolve(u, v)))
                       for u, v in complex.edges], dtype=float)

    rng = np.random.Generator(np.random.Philox(key=cfg.rng_seed))
    last = None
    for _ in range(cfg.max_restarts):
        pos = np.ascontiguousarray(rng.random((n, dim)))
        kernels.run_embed_phase(pos, edge_i, edge_j, target,
                                cfg.repulsion_strength, cfg.spring_strength,
                                cfg.time_step, cfg.phase1_iterations, True)
        kernels.run_embed_phase(pos, edge_i, edge_j, target,
                                cfg.repulsion_strength, cfg.spring_strength,
                                cfg.time_step, cfg.phase2_iterations, False)
        last = _to_realization(complex, dim, pos, cfg.final_round_digits)
        if not float_self_intersection_heuristic(complex, pos):
            return last
    raise EmbedError("no non-self-intersecting layout in %d attempts"
                     % cfg.max_restarts, last_realization=last)


def _to_realization(complex, dim, pos, digits):
    coords = {}
    for i, v in enumerate(complex.vertices):
        coords[v] = tuple(round_to_rational(float(pos[i, k]), digits)
                          for k in range(dim))
    return Realization(complex, dim, coords)


def _project_to_hull(p: np.ndarray, verts: np.ndarray) -> np.ndarray:
    """Closest point of conv(verts) to p.

    Tries every non-empty vertex subset, solving the affine least-squares
    projection on each and keeping the best one whose barycentric weights are
    (numerically) non-negative.  Vertex counts here are tiny, so the 2^k - 1
    subsets are cheap and this is robust against degenerate geometry.
    """
    k = verts.shape[0]
    best = None
    best_d2 = math.inf
    for mask in range(1, 1 << k):
        idx = [i for i in range(k) if mask >> i & 1]
        sub = verts[idx]
        v0 = sub[0]
        if len(idx) == 1:
            lam = np.array([1.0])
            cand = v0
        else:
            D = sub[1:] - v0
            mu, *_ = np.linalg.lstsq(D @ D.T, D @ (p - v0), rcond=None)
            lam = np.concatenate(([1.0 - mu.sum()], mu))
            cand = v0 + mu @ D
        if np.all(lam >= -1e-9):
            d2 = float(np.dot(p - cand, p - cand))
            if d2 < best_d2:
                best_d2 = d2
                best = cand
    return best


def _hull_distance(P: np.ndarray, Q: np.ndarray) -> float:
    """Approximate distance between two convex hulls (alternating projections)."""
    x = P.mean(axis=0)
    y = _project_to_hull(x, Q)
    for _ in range(100):
        x_new = _project_to_hull(y, P)
        y_new = _project_to_hull(x_new, Q)
        shift = np.linalg.norm(x_new - x) + np.linalg.norm(y_new - y)
        x, y = x_new, y_new
        if shift < 1e-13:
            break
    return float(np.linalg.norm(x - y))


def float_collision_distance(complex: AbstractSimplicialComplex,
                             pos: np.ndarray) -> float:
    """Minimum hull distance over maximal non-adjacent pairs (inf if none)."""
    best = math.inf
    for s, t in complex.non_adjacent_pairs(maximal_only=True):
        P = np.array([pos[complex.vertex_index(v)] for v in s])
        Q = np.array([pos[complex.vertex_index(v)] for v in t])
        best = min(best, _hull_distance(P, Q))
    return best


def float_self_intersection_heuristic(complex: AbstractSimplicialComplex,
                                      pos: np.ndarray,
                                      threshold: float = 1e-6) -> bool:
    """Fast screen: does any non-adjacent pair look closer than threshold?"""
    return float_collision_distance(complex, pos) < threshold

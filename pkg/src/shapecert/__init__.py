"""shapecert: certified existence proofs for realizations of simplicial
complexes with prescribed edge lengths.

Given an abstract simplicial complex, desired squared edge lengths, and an
approximate realization, the prover verifies four sufficient inequalities in
exact rational/interval arithmetic; when they hold, a nearby exact
non-self-intersecting realization with the desired lengths is guaranteed to
exist.  A floating-point force-directed embedder produces the approximate
starting realizations.
"""

from ._kernels import BACKEND as kernel_backend
from .complexes import (AbstractSimplicialComplex, Realization, SquaredLengthSpec,
                        collision_distance_squared, is_self_intersecting,
                        length_jacobian, squared_lengths)
from .embed import EmbedConfig, EmbedError, heuristic_embed
from .lcp import simplex_square_distance, simplices_intersect
from .linalg import RatMatrix, is_positive_definite, sigma_min_bounds
from .prove import ProofReport, prove_existence, render_proof_log
from .rationals import (RatInterval, Rational, Tri, certified_less,
                        interval_sqrt, parse_rational, sqrt_bounds)

__version__ = "0.1.0"

__all__ = [
    "AbstractSimplicialComplex",
    "EmbedConfig",
    "EmbedError",
    "ProofReport",
    "RatInterval",
    "RatMatrix",
    "Rational",
    "Realization",
    "SquaredLengthSpec",
    "Tri",
    "certified_less",
    "collision_distance_squared",
    "heuristic_embed",
    "interval_sqrt",
    "is_positive_definite",
    "is_self_intersecting",
    "kernel_backend",
    "length_jacobian",
    "parse_rational",
    "prove_existence",
    "render_proof_log",
    "sigma_min_bounds",
    "simplex_square_distance",
    "simplices_intersect",
    "sqrt_bounds",
    "squared_lengths",
    "__version__",
]

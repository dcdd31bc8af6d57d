"""Abstract simplicial complexes, rational realizations, and exact collision
distance between non-adjacent simplices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .lcp import DistanceWitness, simplex_square_distance
from .linalg import RatMatrix
from .rationals import parse_rational

__all__ = [
    "ComplexError",
    "AbstractSimplicialComplex",
    "Realization",
    "SquaredLengthSpec",
    "squared_lengths",
    "length_jacobian",
    "CollisionResult",
    "collision_distance_squared",
    "is_self_intersecting",
]


class ComplexError(ValueError):
    pass


class AbstractSimplicialComplex:
    """Vertex labels plus a subset-closed family of simplices.

    The vertex order is lexicographic in the labels and the edge order
    lexicographic in the sorted label pairs; both are fixed at construction
    and everything downstream (length vectors, Jacobian columns, proof logs)
    relies on them.
    """

    __slots__ = ("vertices", "simplices", "edges", "source_data", "_index")

    def __init__(self, vertices, simplices, source_data=None):
        self.vertices = tuple(vertices)
        self.simplices = frozenset(tuple(s) for s in simplices)
        self.edges = tuple(sorted(s for s in self.simplices if len(s) == 2))
        self.source_data = source_data
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._validate()

    def _validate(self):
        if not self.simplices:
            raise ComplexError("a complex needs at least one simplex")
        for s in self.simplices:
            if list(s) != sorted(set(s)):
                raise ComplexError("simplex %r is not a sorted duplicate-free tuple" % (s,))
            for v in s:
                if v not in self._index:
                    raise ComplexError("simplex %r uses unknown vertex %r" % (s, v))
            # Checking the co-dimension-1 faces suffices: closure follows by
            # induction.
            if len(s) > 1:
                for face in itertools.combinations(s, len(s) - 1):
                    if face not in self.simplices:
                        raise ComplexError("missing face %r of %r" % (face, s))

    @classmethod
    def from_maximal_simplices(cls, data) -> "AbstractSimplicialComplex":
        """Build the subset closure of the given simplices.

        Every non-empty subset of every listed simplex becomes a simplex of
        the complex; repeated vertices inside one simplex are an error.
        """
        if not data:
            raise ComplexError("at least one simplex is required")
        closure = set()
        for raw in data:
            labels = [str(v) for v in raw]
            if not labels:
                raise ComplexError("empty simplex in input")
            if len(set(labels)) != len(labels):
                raise ComplexError("repeated vertex in simplex %r" % (raw,))
            labels.sort()
            for k in range(1, len(labels) + 1):
                closure.update(itertools.combinations(labels, k))
        vertices = sorted({v for s in closure for v in s})
        return cls(vertices, closure, source_data=[list(s) for s in data])

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertex_index(self, label) -> int:
        return self._index[label]

    def __contains__(self, simplex) -> bool:
        return tuple(sorted(simplex)) in self.simplices

    def __eq__(self, other):
        return (isinstance(other, AbstractSimplicialComplex)
                and self.simplices == other.simplices)

    def __repr__(self):
        return ("AbstractSimplicialComplex(%d vertices, %d simplices)"
                % (self.n_vertices, len(self.simplices)))

    def sorted_simplices(self):
        """All simplices, ordered by (dimension, labels) -- the canonical
        enumeration order for pair listings."""
        return sorted(self.simplices, key=lambda s: (len(s), s))

    def maximal_simplices(self):
        """Simplices not properly contained in any other, in canonical order.

        By closure, a proper superset exists iff a one-vertex extension does.
        """
        out = []
        for s in self.sorted_simplices():
            members = set(s)
            if any(v not in members and tuple(sorted(s + (v,))) in self.simplices
                   for v in self.vertices):
                continue
            out.append(list(s))
        return out

    def non_adjacent_pairs(self, maximal_only: bool = True):
        """Unordered pairs of vertex-disjoint simplices.

        With maximal_only, a pair is dropped when either side can absorb one
        more vertex (outside both simplices) and stay in the complex -- the
        enlarged pair's distance can only be smaller, so only maximal pairs
        matter for the minimum.
        """
        sims = self.sorted_simplices()
        sets = [set(s) for s in sims]
        out = []
        for a in range(len(sims)):
            for b in range(a + 1, len(sims)):
                if sets[a] & sets[b]:
                    continue
                if maximal_only and self._extendable(sims[a], sims[b]):
                    continue
                out.append((sims[a], sims[b]))
        return out

    def _extendable(self, s, t):
        used = set(s) | set(t)
        for v in self.vertices:
            if v in used:
                continue
            if tuple(sorted(s + (v,))) in self.simplices:
                return True
            if tuple(sorted(t + (v,))) in self.simplices:
                return True
        return False


@dataclass(frozen=True)
class Realization:
    """An assignment of a rational point in E^dim to every vertex."""

    complex: AbstractSimplicialComplex
    dim: int
    coords: dict

    def __post_init__(self):
        if self.dim < 1:
            raise ComplexError("ambient dimension must be >= 1")
        coords = {}
        for v in self.complex.vertices:
            if v not in self.coords:
                raise ComplexError("no coordinates for vertex %r" % v)
            pt = tuple(Fraction(c) for c in self.coords[v])
            if len(pt) != self.dim:
                raise ComplexError("vertex %r has %d coordinates, expected %d"
                                   % (v, len(pt), self.dim))
            coords[v] = pt
        object.__setattr__(self, "coords", coords)

    def point(self, label):
        return self.coords[label]

    def simplex_points(self, simplex):
        return [self.coords[v] for v in simplex]


class SquaredLengthSpec:
    """Desired squared edge lengths: explicit entries plus an optional default.

    Entries keep the orientation they were given in (for display); lookup is
    orientation-insensitive.  All values must be positive rationals.
    """

    def __init__(self, entries=None, default=None):
        self.entries = {}
        for key, value in (entries or {}).items():
            u, v = key
            val = parse_rational(value)
            if val <= 0:
                raise ComplexError("squared length for %r must be positive" % (key,))
            self.entries[(str(u), str(v))] = val
        self.default = None if default is None else parse_rational(default)
        if self.default is not None and self.default <= 0:
            raise ComplexError("default squared length must be positive")

    @classmethod
    def from_mapping(cls, mapping) -> "SquaredLengthSpec":
        """Accepts {"default": value} alongside pair-keyed entries."""
        entries = {}
        default = None
        for key, value in mapping.items():
            if key == "default":
                default = value
            else:
                entries[key] = value
        return cls(entries, default)

    def resolve(self, u, v) -> Fraction:
        if (u, v) in self.entries:
            return self.entries[(u, v)]
        if (v, u) in self.entries:
            return self.entries[(v, u)]
        if self.default is not None:
            return self.default
        raise ComplexError("no squared length for edge (%s, %s) and no default" % (u, v))

    def vector_for(self, complex: AbstractSimplicialComplex):
        return [self.resolve(u, v) for u, v in complex.edges]

    def display_items(self):
        """(label, value) pairs in the order given, default last."""
        items = [("('%s', '%s')" % key, val) for key, val in self.entries.items()]
        if self.default is not None:
            items.append(("default", self.default))
        return items

    def __eq__(self, other):
        return (isinstance(other, SquaredLengthSpec)
                and self.entries == other.entries
                and self.default == other.default)


def squared_lengths(r: Realization):
    """Squared edge lengths of the realization, in edge order."""
    out = []
    for u, v in r.complex.edges:
        pu, pv = r.coords[u], r.coords[v]
        out.append(sum((a - b) ** 2 for a, b in zip(pu, pv)))
    return out


def length_jacobian(r: Realization) -> RatMatrix:
    """Jacobian of the squared-length map, |E| x (dim * |V|).

    Row for edge (u, v): 2(x_u - x_v) in u's coordinate block, the negation
    in v's block, zero elsewhere.  Column blocks follow vertex order.
    """
    c = r.complex
    zero = Fraction(0)
    rows = []
    for u, v in c.edges:
        row = [zero] * (r.dim * c.n_vertices)
        pu, pv = r.coords[u], r.coords[v]
        iu, iv = c.vertex_index(u) * r.dim, c.vertex_index(v) * r.dim
        for k in range(r.dim):
            g = 2 * (pu[k] - pv[k])
            row[iu + k] = g
            row[iv + k] = -g
        rows.append(row)
    return RatMatrix(rows)


class CollisionResult(NamedTuple):
    value: Fraction                  # minimum squared distance
    pair: tuple                      # the simplex pair achieving it
    witness: DistanceWitness


def collision_distance_squared(r: Realization,
                               maximal_only: bool = True) -> Optional[CollisionResult]:
    """Exact minimum squared distance over non-adjacent simplex pairs.

    Returns None when the complex has no non-adjacent pairs at all (a single
    simplex, say), which callers must treat as "no collision constraint".
    Ties keep the first pair in canonical enumeration order.
    """
    pairs = r.complex.non_adjacent_pairs(maximal_only=maximal_only)
    best = None
    for s, t in pairs:
        d2, witness = simplex_square_distance(r.simplex_points(s),
                                              r.simplex_points(t))
        if best is None or d2 < best.value:
            best = CollisionResult(d2, (s, t), witness)
    return best


def is_self_intersecting(r: Realization) -> bool:
    """True when some pair of non-adjacent simplices touches (distance 0)."""
    result = collision_distance_squared(r)
    return result is not None and result.value == 0

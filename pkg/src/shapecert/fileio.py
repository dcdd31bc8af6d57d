"""Complex description files (JSON) and Wavefront OBJ export.

A description file carries the abstract complex, the desired squared lengths,
the ambient dimension, and optionally exact coordinates and an embedder
configuration.  All rational values round-trip as "p / q" strings (plain
integers stay integers), so save(load(path)) is the identity on the data
model.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from typing import Optional

from .complexes import (AbstractSimplicialComplex, ComplexError, Realization,
                        SquaredLengthSpec)
from .embed import EmbedConfig
from .rationals import decimal_string, format_rational, parse_rational

__all__ = [
    "DescriptionError",
    "ComplexDescription",
    "load_description",
    "save_description",
    "description_to_complex",
    "realization_from_description",
    "write_obj",
]


class DescriptionError(ValueError):
    pass


@dataclass
class ComplexDescription:
    data: list                       # maximal simplices, lists of labels
    dim: int
    lengths: SquaredLengthSpec
    coordinates: Optional[dict] = None   # label -> tuple of Fractions
    embed: Optional[EmbedConfig] = None
    mode: str = "maximal_simplices"


def _fail(msg):
    raise DescriptionError(msg)


def _edge_key(key: str):
    parts = key.split(",")
    if len(parts) != 2:
        _fail("edge key %r must be two labels joined by a comma" % key)
    u, v = (p.strip() for p in parts)
    if not u or not v:
        _fail("edge key %r has an empty label" % key)
    return u, v


def load_description(path) -> ComplexDescription:
    """Parse and validate a description file.

    All structural problems raise DescriptionError with enough context to fix
    the file; JSON syntax errors keep their line/column info.
    """
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        _fail("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        _fail("%s is not valid JSON: %s" % (path, exc))
    if not isinstance(raw, dict):
        _fail("top level of %s must be an object" % path)

    mode = raw.get("mode", "maximal_simplices")
    if mode != "maximal_simplices":
        _fail("unsupported mode %r" % mode)
    data = raw.get("data")
    if (not isinstance(data, list) or not data
            or not all(isinstance(s, list) and s for s in data)):
        _fail('"data" must be a non-empty list of non-empty label lists')
    data = [[str(v) for v in s] for s in data]
    for s in data:
        for v in s:
            if "," in v or not v.strip():
                _fail("vertex label %r is empty or contains a comma" % v)

    dim = raw.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        _fail('"dim" must be a positive integer')

    sq = raw.get("desired_sq_lengths")
    if not isinstance(sq, dict) or not sq:
        _fail('"desired_sq_lengths" must be a non-empty object')
    entries = {}
    default = None
    try:
        for key, value in sq.items():
            if key == "default":
                default = parse_rational(value)
            else:
                entries[_edge_key(key)] = parse_rational(value)
        lengths = SquaredLengthSpec(entries, default)
    except (ValueError, TypeError, ComplexError) as exc:
        _fail("bad desired_sq_lengths: %s" % exc)

    coordinates = None
    if raw.get("coordinates") is not None:
        coords_raw = raw["coordinates"]
        if not isinstance(coords_raw, dict):
            _fail('"coordinates" must be an object')
        coordinates = {}
        for label, values in coords_raw.items():
            if not isinstance(values, list) or len(values) != dim:
                _fail("coordinates for %r must be a list of %d values" % (label, dim))
            try:
                coordinates[str(label)] = tuple(parse_rational(v) for v in values)
            except (ValueError, TypeError) as exc:
                _fail("bad coordinate for %r: %s" % (label, exc))

    embed = None
    if raw.get("embed") is not None:
        block = raw["embed"]
        if not isinstance(block, dict):
            _fail('"embed" must be an object')
        known = {f.name for f in dataclasses.fields(EmbedConfig)}
        unknown = set(block) - known
        if unknown:
            _fail("unknown embed options: %s" % ", ".join(sorted(unknown)))
        try:
            embed = EmbedConfig(**block)
        except (TypeError, ValueError) as exc:
            _fail("bad embed config: %s" % exc)

    return ComplexDescription(data=data, dim=dim, lengths=lengths,
                              coordinates=coordinates, embed=embed, mode=mode)


def _rational_json(x):
    x = parse_rational(x)
    return x.numerator if x.denominator == 1 else format_rational(x)


def save_description(desc: ComplexDescription, path) -> None:
    out = {
        "mode": desc.mode,
        "data": desc.data,
        "dim": desc.dim,
        "desired_sq_lengths": {},
    }
    for (u, v), value in desc.lengths.entries.items():
        out["desired_sq_lengths"]["%s,%s" % (u, v)] = _rational_json(value)
    if desc.lengths.default is not None:
        out["desired_sq_lengths"]["default"] = _rational_json(desc.lengths.default)
    if desc.coordinates is not None:
        out["coordinates"] = {
            label: [_rational_json(c) for c in pt]
            for label, pt in desc.coordinates.items()
        }
    if desc.embed is not None:
        out["embed"] = dataclasses.asdict(desc.embed)
    with open(path, "w") as fh:
        json.dump(out, fh, indent=2)
        fh.write("\n")


def description_to_complex(desc: ComplexDescription):
    """(complex, lengths) from a description; checks the lengths resolve."""
    try:
        complex = AbstractSimplicialComplex.from_maximal_simplices(desc.data)
        desc.lengths.vector_for(complex)
    except ComplexError as exc:
        _fail(str(exc))
    return complex, desc.lengths


def realization_from_description(desc: ComplexDescription) -> Realization:
    if desc.coordinates is None:
        _fail("description has no coordinates; run the embedder first")
    complex, _ = description_to_complex(desc)
    try:
        return Realization(complex, desc.dim, desc.coordinates)
    except ComplexError as exc:
        _fail(str(exc))


def write_obj(r: Realization, path, round_digits: int = 8) -> None:
    """Wavefront OBJ export of the realization.

    One "v" line per vertex using the first three coordinates (zero-padded
    below three dimensions), "l" lines for edges not contained in any
    2-simplex, and "f" lines for the 2-simplices.  Indices are 1-based in
    vertex order.
    """
    c = r.complex
    lines = []
    for v in c.vertices:
        pt = list(r.coords[v])[:3]
        pt += [0] * (3 - len(pt))
        lines.append("v %s %s %s" % tuple(decimal_string(x, round_digits)
                                          for x in pt))
    triangles = sorted(s for s in c.simplices if len(s) == 3)
    covered = {e for t in triangles
               for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))}
    for u, v in c.edges:
        if (u, v) not in covered:
            lines.append("l %d %d" % (c.vertex_index(u) + 1, c.vertex_index(v) + 1))
    for t in triangles:
        lines.append("f %d %d %d" % tuple(c.vertex_index(v) + 1 for v in t))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")

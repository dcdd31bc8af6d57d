"""Command-line front end.

Subcommands: prove (run the certified pipeline on a description file), embed
(heuristic embedding, writing coordinates back into a description file),
distance (exact squared distance between two convex hulls given as JSON point
lists), export-obj (Wavefront export).

Exit codes: 0 success / existence proven, 1 the method failed (proof failed,
embedder exhausted its restarts), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .complexes import ComplexError
from .embed import EmbedConfig, EmbedError, heuristic_embed
from .fileio import (ComplexDescription, DescriptionError, description_to_complex,
                     load_description, realization_from_description,
                     save_description, write_obj)
from .lcp import LemkeError, simplex_square_distance
from .prove import prove_existence, render_proof_log
from .rationals import CertificationError, format_rational, parse_rational


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shapecert",
        description="Certified existence proofs for realizations of "
                    "simplicial complexes with prescribed edge lengths.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="run the certified proof pipeline")
    p.add_argument("input", help="complex description file (JSON)")
    p.add_argument("--digits", type=int, default=8,
                   help="certification precision in decimal digits (default 8)")
    p.add_argument("--verbose", action="store_true",
                   help="let the prover stream the log itself")
    p.add_argument("--log-out", metavar="PATH",
                   help="also write the proof log to this file")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("embed", help="heuristic embedding of a description file")
    p.add_argument("input", help="complex description file (JSON)")
    p.add_argument("--out", required=True, metavar="PATH",
                   help="where to write the description with coordinates")
    p.add_argument("--seed", type=int, help="override the RNG seed")
    p.add_argument("--round-digits", type=int,
                   help="override final rounding digits")
    p.add_argument("--repulsion", type=float, help="repulsion strength")
    p.add_argument("--spring", type=float, help="spring strength")
    p.add_argument("--time-step", type=float, help="Euler time step")
    p.add_argument("--phase1", type=int, help="phase-1 iteration count")
    p.add_argument("--phase2", type=int, help="phase-2 iteration count")
    p.add_argument("--max-restarts", type=int, help="restart budget")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("distance",
                       help="exact squared distance between two convex hulls")
    p.add_argument("first", help="JSON list of points, e.g. '[[3,0,0],[0,3,0]]'")
    p.add_argument("second", help="JSON list of points")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("export-obj", help="write a Wavefront OBJ model")
    p.add_argument("input", help="description file with coordinates")
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--round-digits", type=int, default=8,
                   help="decimal places in the OBJ (default 8)")
    p.set_defaults(func=cmd_export_obj)
    return parser


def cmd_prove(args) -> int:
    desc = load_description(args.input)
    if desc.coordinates is not None:
        r = realization_from_description(desc)
    elif desc.embed is not None:
        complex, lengths = description_to_complex(desc)
        r = heuristic_embed(complex, desc.dim, lengths, desc.embed)
    else:
        raise DescriptionError(
            "description has neither coordinates nor an embed block")
    report = prove_existence(r, desc.lengths, digits=args.digits,
                             verbose=args.verbose)
    log = render_proof_log(report)
    if not args.verbose:
        print(log)
    if args.log_out:
        with open(args.log_out, "w") as fh:
            fh.write(log + "\n")
    return 0 if report.proven else 1


def cmd_embed(args) -> int:
    desc = load_description(args.input)
    cfg = desc.embed or EmbedConfig()
    overrides = {
        "rng_seed": args.seed,
        "final_round_digits": args.round_digits,
        "repulsion_strength": args.repulsion,
        "spring_strength": args.spring,
        "time_step": args.time_step,
        "phase1_iterations": args.phase1,
        "phase2_iterations": args.phase2,
        "max_restarts": args.max_restarts,
    }
    cfg = dataclasses.replace(
        cfg, **{k: v for k, v in overrides.items() if v is not None})
    complex, lengths = description_to_complex(desc)
    r = heuristic_embed(complex, desc.dim, lengths, cfg)
    out = ComplexDescription(data=desc.data, dim=desc.dim, lengths=desc.lengths,
                             coordinates=dict(r.coords), embed=cfg)
    save_description(out, args.out)
    print("embedded %d vertices in E^%d -> %s"
          % (complex.n_vertices, desc.dim, args.out))
    return 0


def _parse_points(text, name):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError("%s is not valid JSON: %s" % (name, exc))
    if (not isinstance(raw, list) or not raw
            or not all(isinstance(p, list) and p for p in raw)):
        raise ValueError("%s must be a non-empty list of non-empty points" % name)
    return [[parse_rational(c) for c in p] for p in raw]


def cmd_distance(args) -> int:
    first = _parse_points(args.first, "first point set")
    second = _parse_points(args.second, "second point set")
    d2, witness = simplex_square_distance(first, second)
    print("(%s, ([%s], [%s]))" % (
        format_rational(d2),
        ", ".join(format_rational(c) for c in witness.point_first),
        ", ".join(format_rational(c) for c in witness.point_second)))
    return 0


def cmd_export_obj(args) -> int:
    desc = load_description(args.input)
    r = realization_from_description(desc)
    write_obj(r, args.out, round_digits=args.round_digits)
    print("wrote %s" % args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DescriptionError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except EmbedError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (CertificationError, LemkeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (ComplexError, ValueError, TypeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""``latdist`` command line.

Option values are resolved as: command-line flag, then ``LATDIST_*``
environment variable, then built-in default.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .batch import distance_matrix
from .errors import DegenerateBasis, LatdistError, NonPositiveDefinite, ParseError
from .formats import (
    export_cell_obj,
    load_records,
    read_matrix_csv,
    scale_to_gray,
    write_matrix_csv,
    write_pgm_heatmap,
)
from .lattice import DEFAULT_EXTENT
from .rotations import DEFAULT_N, extended_hausdorff, sample_rotations, scale_distance
from .voronoi import compute_voronoi_cell, inradius, polyhedron_volume

log = logging.getLogger("latdist")

EXIT_OK, EXIT_COMPUTE, EXIT_INPUT = 0, 1, 2


def _env(name, default, cast=str):
    raw = os.environ.get(f"LATDIST_{name}")
    if raw is None:
        return default
    if cast is bool:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    return cast(raw)


def _fmt_rotation(r):
    x, y, z = r.axis
    return f"axis=({x:.6f},{y:.6f},{z:.6f}) angle_deg={r.angle_degrees:.6f}"


def cmd_cell(args):
    records = load_records(args.input)
    for rec in records:
        cell = compute_voronoi_cell(rec.basis, extent=args.extent)
        print(
            f"{rec.id} vertices={cell.n_vertices} faces={cell.n_faces} "
            f"volume={polyhedron_volume(cell):.6f} inradius={inradius(cell):.6f}"
        )
        if args.obj:
            out = Path(args.obj)
            if len(records) > 1:
                out = out.with_name(f"{out.stem}_{rec.id}{out.suffix or '.obj'}")
            out.write_bytes(export_cell_obj(cell))
            log.info("wrote %s", out)
    return EXIT_OK


def cmd_dist(args):
    records = {r.id: r for r in load_records(args.input)}
    if args.pair:
        missing = [i for i in args.pair if i not in records]
        if missing:
            raise ParseError(f"unknown record id(s): {', '.join(missing)}")
        first, second = (records[i] for i in args.pair)
    elif len(records) == 2:
        first, second = records.values()
    else:
        raise ParseError("input has more than two records; choose them with --pair ID1 ID2")
    grid = sample_rotations(args.n)
    if args.metric == "dh":
        res = extended_hausdorff(first.basis, second.basis, grid, refine=args.refine)
    else:
        res = scale_distance(first.basis, second.basis, grid, refine=args.refine)
    print(f"{res.kind}({first.id},{second.id}) n={args.n} value={res.value:.9f}")
    print(f"forward={res.forward_term:.9f} {_fmt_rotation(res.best_rotation_forward)}")
    print(f"backward={res.backward_term:.9f} {_fmt_rotation(res.best_rotation_backward)}")
    return EXIT_OK


def cmd_matrix(args):
    records = load_records(args.input)
    if len(records) < 2:
        raise ParseError("matrix needs at least two lattices")
    log.info("%d lattices, %d pairs", len(records), len(records) * (len(records) - 1) // 2)
    m = distance_matrix(
        [r.id for r in records],
        [r.basis for r in records],
        metric=args.metric,
        n=args.n,
        threads=args.threads,
        refine=args.refine,
    )
    text = write_matrix_csv(m)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.heatmap:
        Path(args.heatmap).write_bytes(write_pgm_heatmap(scale_to_gray(m)))
    return EXIT_OK


def cmd_heatmap(args):
    m = read_matrix_csv(Path(args.csv).read_text())
    Path(args.pgm).write_bytes(write_pgm_heatmap(scale_to_gray(m)))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="latdist",
        description="Voronoi-cell distances between 3D lattices.",
        epilog="Defaults can be set with LATDIST_N, LATDIST_METRIC, LATDIST_THREADS, "
        "LATDIST_EXTENT and LATDIST_REFINE; flags take precedence.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def grid_opts(p):
        p.add_argument("--metric", choices=["dh", "ds"], default=_env("METRIC", "dh"))
        p.add_argument("--n", type=int, default=_env("N", DEFAULT_N, int),
                       help="rotation grid resolution (default 3)")
        p.add_argument("--refine", action="store_true", default=_env("REFINE", False, bool),
                       help="local coordinate descent around the grid minimum")

    p = sub.add_parser("cell", help="Voronoi cell statistics, optional OBJ export")
    p.add_argument("input", help=".json, .cif or directory of .cif files")
    p.add_argument("--extent", type=int, default=_env("EXTENT", DEFAULT_EXTENT, int))
    p.add_argument("--obj", help="write the cell as Wavefront OBJ")
    p.set_defaults(func=cmd_cell)

    p = sub.add_parser("dist", help="distance between two lattices")
    p.add_argument("input")
    grid_opts(p)
    p.add_argument("--pair", nargs=2, metavar=("ID1", "ID2"))
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("matrix", help="pairwise distance matrix as CSV")
    p.add_argument("input")
    grid_opts(p)
    p.add_argument("--threads", type=int, default=_env("THREADS", 1, int))
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--heatmap", help="also write a grayscale PGM")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("heatmap", help="convert a CSV matrix into a PGM heatmap")
    p.add_argument("csv")
    p.add_argument("pgm")
    p.set_defaults(func=cmd_heatmap)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except ValueError as exc:  # bad LATDIST_* value
        print(f"latdist: {exc}", file=sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (ParseError, DegenerateBasis, NonPositiveDefinite, OSError) as exc:
        print(f"latdist: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LatdistError as exc:
        print(f"latdist: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())

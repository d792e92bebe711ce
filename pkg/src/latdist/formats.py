"""Readers and writers: CIF cell subset, JSON lattices, CSV matrices, PGM, OBJ."""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DegenerateBasis,
    MalformedNumber,
    MissingTag,
    NonPositiveDefinite,
    ParseError,
    SchemaError,
    SymmetryViolation,
)
from .lattice import CellParameters, LatticeBasis, basis_from_cell_parameters
from .voronoi import ConvexPolyhedron

CELL_TAGS = (
    "_cell_length_a",
    "_cell_length_b",
    "_cell_length_c",
    "_cell_angle_alpha",
    "_cell_angle_beta",
    "_cell_angle_gamma",
)

_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?(\(\d+\))?$")


@dataclass(frozen=True)
class LatticeRecord:
    id: str
    source: str
    basis: LatticeBasis
    raw_cell: CellParameters | None = None


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    ids: tuple
    values: np.ndarray
    metric_kind: str
    grid_n: int

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "ids", tuple(self.ids))
        if vals.shape != (len(self.ids), len(self.ids)):
            raise ValueError(f"matrix shape {vals.shape} does not match {len(self.ids)} ids")

    def __len__(self):
        return len(self.ids)


def _cif_number(text, line, source):
    if not _NUMBER.match(text):
        raise MalformedNumber(text, line, source)
    return float(text.split("(")[0])


def parse_cif_cell(text, name=None):
    """Read the six cell tags of a CIF document.

    Only ``_cell_length_*`` and ``_cell_angle_*`` are consumed; loops, atom
    sites and everything else are skipped. Standard uncertainties such as
    ``7.3(2)`` are dropped. The record id is taken from the first
    ``data_`` header, falling back to ``name``.
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8", errors="replace")
    block = None
    found = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if block is None and line.lower().startswith("data_"):
            block = line[5:].strip() or None
            continue
        parts = line.split()
        tag = parts[0].lower()
        if tag in CELL_TAGS and tag not in found:
            if len(parts) < 2:
                raise MalformedNumber("", lineno, name)
            found[tag] = _cif_number(parts[1], lineno, name)
    for tag in CELL_TAGS:
        if tag not in found:
            raise MissingTag(tag, name)
    record_id = block or (Path(name).stem if name else None)
    if record_id is None:
        raise ParseError("CIF has no data_ block and no file name for an id")
    try:
        cell = CellParameters(*(found[t] for t in CELL_TAGS))
    except ValueError as exc:
        raise ParseError(f"{record_id}: {exc}") from exc
    return LatticeRecord(record_id, "cif", basis_from_cell_parameters(cell), cell)


def _json_record(obj, index):
    if not isinstance(obj, dict):
        raise SchemaError(f"entry {index} is not an object")
    rid = obj.get("id")
    if not isinstance(rid, str) or not rid:
        raise SchemaError(f"entry {index} has no string 'id'")
    try:
        if "basis" in obj:
            vecs = np.array(obj["basis"], dtype=float)
            if vecs.shape != (3, 3):
                raise SchemaError("'basis' must be three 3-vectors", rid)
            return LatticeRecord(rid, "json", LatticeBasis(vecs))
        if "cell" in obj:
            cell_vals = obj["cell"]
            if not isinstance(cell_vals, list) or len(cell_vals) != 6:
                raise SchemaError("'cell' must be [a, b, c, alpha, beta, gamma]", rid)
            cell = CellParameters(*(float(x) for x in cell_vals))
            return LatticeRecord(rid, "json", basis_from_cell_parameters(cell), cell)
    except (DegenerateBasis, NonPositiveDefinite) as exc:
        raise SchemaError(str(exc), rid) from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc), rid) from exc
    raise SchemaError("needs a 'basis' or a 'cell' field", rid)


def parse_lattice_json(text):
    """Parse ``[{"id": ..., "basis": [[...], [...], [...]]} | {"id": ..., "cell": [...]}]``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(data, list):
        raise SchemaError("top level must be an array of lattice records")
    records = [_json_record(obj, i) for i, obj in enumerate(data)]
    seen = set()
    for rec in records:
        if rec.id in seen:
            raise SchemaError("duplicate id", rec.id)
        seen.add(rec.id)
    return records


def load_records(path):
    """Records from a ``.json`` file, a ``.cif`` file, or a directory of ``.cif`` files."""
    path = Path(path)
    if path.is_dir():
        files = sorted(path.glob("*.cif"))
        if not files:
            raise ParseError(f"no .cif files in {path}")
        records = [parse_cif_cell(f.read_bytes(), name=str(f)) for f in files]
    elif path.suffix.lower() == ".json":
        records = parse_lattice_json(path.read_text())
    else:
        records = [parse_cif_cell(path.read_bytes(), name=str(path))]
    ids = [r.id for r in records]
    if len(set(ids)) != len(ids):
        raise SchemaError("duplicate record ids in input")
    return records


def write_matrix_csv(m):
    """CSV text; the corner cell stores ``<metric>:n=<grid n>``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"{m.metric_kind}:n={m.grid_n}", *m.ids])
    for rid, row in zip(m.ids, m.values):
        writer.writerow([rid, *(f"{v:.9g}" for v in row)])
    return buf.getvalue()


def read_matrix_csv(text, rtol=1e-12):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ParseError("empty matrix file")
    corner, *ids = rows[0]
    kind, grid_n = "unknown", 0
    if ":n=" in corner:
        kind, _, n_text = corner.partition(":n=")
        try:
            grid_n = int(n_text)
        except ValueError as exc:
            raise ParseError(f"line 1: bad grid size {n_text!r}") from exc
    body = rows[1:]
    if len(body) != len(ids):
        raise ParseError(f"expected {len(ids)} data rows, found {len(body)}")
    values = np.empty((len(ids), len(ids)))
    for i, row in enumerate(body):
        if len(row) != len(ids) + 1:
            raise ParseError(f"line {i + 2}: expected {len(ids) + 1} fields")
        if row[0] != ids[i]:
            raise ParseError(f"line {i + 2}: row id {row[0]!r} != column id {ids[i]!r}")
        for j, cell in enumerate(row[1:]):
            try:
                values[i, j] = float(cell)
            except ValueError as exc:
                raise MalformedNumber(cell, i + 2) from exc
    if not np.allclose(values, values.T, rtol=rtol, atol=0):
        i, j = np.argwhere(~np.isclose(values, values.T, rtol=rtol, atol=0))[0]
        raise SymmetryViolation(f"entry ({ids[i]}, {ids[j]}) differs from its transpose")
    if np.any(np.diag(values) != 0):
        raise SymmetryViolation("diagonal entries must be zero")
    return DistanceMatrix(ids, values, kind, grid_n)


def scale_to_gray(m):
    """Map values linearly onto 0..255, rounding halves away from zero."""
    values = m.values if isinstance(m, DistanceMatrix) else np.asarray(m, dtype=float)
    lo, hi = values.min(), values.max()
    if hi == lo:
        return np.zeros(values.shape, dtype=np.uint8)
    scaled = 255.0 * (values - lo) / (hi - lo)
    return np.floor(scaled + 0.5).astype(np.uint8)


def write_pgm_heatmap(gray):
    """Binary PGM (P5) bytes, one row per matrix row."""
    g = np.asarray(gray)
    if g.ndim != 2 or g.min() < 0 or g.max() > 255:
        raise ValueError("expected a 2D array of values in [0, 255]")
    height, width = g.shape
    return f"P5\n{width} {height}\n255\n".encode("ascii") + g.astype(np.uint8).tobytes()


def read_pgm(data):
    header, _, rest = data.partition(b"\n255\n")
    magic, dims = header.split(b"\n", 1)
    if magic != b"P5":
        raise ParseError("not a binary PGM")
    width, height = (int(x) for x in dims.split())
    return np.frombuffer(rest, dtype=np.uint8).reshape(height, width)


def export_cell_obj(P):
    lines = [f"v {x:.9g} {y:.9g} {z:.9g}" for x, y, z in P.vertices]
    lines += ["f " + " ".join(str(i + 1) for i in face) for face in P.faces]
    return ("\n".join(lines) + "\n").encode("ascii")


def read_cell_obj(data):
    """Vertices and faces from OBJ bytes; face planes are recomputed."""
    verts, faces = [], []
    for raw in data.decode("ascii").splitlines():
        parts = raw.split()
        if not parts:
            continue
        if parts[0] == "v":
            verts.append([float(x) for x in parts[1:4]])
        elif parts[0] == "f":
            faces.append(tuple(int(p.split("/")[0]) - 1 for p in parts[1:]))
    verts = np.array(verts)
    normals, offsets = [], []
    for face in faces:
        pts = verts[list(face)]
        n = np.zeros(3)
        for a, b in zip(pts, np.roll(pts, -1, axis=0)):
            n += np.cross(a, b)
        n /= np.linalg.norm(n)
        normals.append(n)
        offsets.append(float(pts.mean(axis=0) @ n))
    return ConvexPolyhedron(verts, tuple(faces), np.array(normals), np.array(offsets))

"""Voronoi cell of a lattice at the origin, built by half-space clipping."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import CellValidationFailed
from .lattice import DEFAULT_EXTENT, neighbor_shell, reduce_basis, unit_cell_volume

PLANE_TOL = 1e-9
SYM_TOL = 1e-9
VOLUME_RTOL = 1e-8


@dataclass(frozen=True)
class HalfSpace:
    """``{p : p . normal <= offset}``, the bisector side of ``generator`` facing 0."""

    normal: np.ndarray
    offset: float
    generator: np.ndarray

    @classmethod
    def bisecting(cls, q):
        q = np.asarray(q, dtype=float)
        length = np.linalg.norm(q)
        return cls(normal=q / length, offset=0.5 * length, generator=q)


@dataclass(frozen=True, eq=False)
class ConvexPolyhedron:
    """Origin-centered convex polyhedron.

    ``faces`` holds vertex-index cycles ordered counterclockwise when seen
    from outside; face ``k`` lies in the plane ``x . normals[k] == offsets[k]``.
    ``generators[k]`` is the lattice vector whose bisector carries face ``k``
    (``None`` for polyhedra that do not come from a lattice).
    """

    vertices: np.ndarray
    faces: tuple
    normals: np.ndarray
    offsets: np.ndarray
    generators: np.ndarray | None = None
    extent: int | None = field(default=None, compare=False)

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_faces(self):
        return len(self.faces)

    @cached_property
    def edges(self):
        """Unique undirected edges as an ``(E, 2)`` index array."""
        seen = set()
        for face in self.faces:
            for a, b in zip(face, face[1:] + face[:1]):
                seen.add((min(a, b), max(a, b)))
        return np.array(sorted(seen), dtype=int).reshape(-1, 2)

    @cached_property
    def diameter(self):
        return 2.0 * float(np.linalg.norm(self.vertices, axis=1).max())

    @cached_property
    def _edge_planes(self):
        """Per-face in-plane edge normals, padded; used by the distance kernel."""
        width = max(len(f) for f in self.faces)
        en = np.zeros((self.n_faces, width, 3))
        ec = np.zeros((self.n_faces, width))
        for k, face in enumerate(self.faces):
            pts = self.vertices[list(face)]
            nxt = np.roll(pts, -1, axis=0)
            out = np.cross(nxt - pts, self.normals[k])
            out /= np.linalg.norm(out, axis=1, keepdims=True)
            en[k, : len(face)] = out
            ec[k, : len(face)] = np.einsum("ij,ij->i", out, pts)
        return en, ec

    def scaled(self, s):
        gens = None if self.generators is None else self.generators * s
        return ConvexPolyhedron(
            self.vertices * s, self.faces, self.normals, self.offsets * s, gens, self.extent
        )

    def rotated(self, rotation):
        rot = np.asarray(rotation, dtype=float)
        gens = None if self.generators is None else self.generators @ rot.T
        return ConvexPolyhedron(
            self.vertices @ rot.T, self.faces, self.normals @ rot.T,
            self.offsets, gens, self.extent,
        )


def polyhedron_volume(P):
    """Volume as a sum of signed tetrahedra (origin, fan triangle)."""
    total = 0.0
    for face in P.faces:
        pts = P.vertices[list(face)]
        a = pts[0]
        b, c = pts[1:-1], pts[2:]
        total += float(np.sum(np.einsum("j,ij->i", a, np.cross(b, c))))
    return total / 6.0


def inradius(P):
    """Distance from the origin to the nearest face plane."""
    return float(P.offsets.min())


def is_centrally_symmetric(P, tol=SYM_TOL):
    scale = tol * P.diameter
    verts = P.vertices
    dist = np.linalg.norm(verts[:, None, :] + verts[None, :, :], axis=-1)
    return bool(np.all(dist.min(axis=1) <= scale))


def euler_characteristic(P):
    return P.n_vertices - len(P.edges) + P.n_faces


def _bounding_cube(half):
    verts = half * np.array(
        [[x, y, z] for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)], dtype=float
    )
    # CCW seen from outside
    cycles = [
        ((1, 0, 0), [4, 6, 7, 5]),
        ((-1, 0, 0), [0, 1, 3, 2]),
        ((0, 1, 0), [2, 3, 7, 6]),
        ((0, -1, 0), [0, 4, 5, 1]),
        ((0, 0, 1), [1, 5, 7, 3]),
        ((0, 0, -1), [0, 2, 6, 4]),
    ]
    return [
        (np.array(n, dtype=float), half, None, [verts[i] for i in idx])
        for n, idx in cycles
    ]


def _edge_cut(p, q, sp, sq):
    # order endpoints so both faces sharing an edge get bit-identical points
    if tuple(q) < tuple(p):
        p, q, sp, sq = q, p, sq, sp
    t = sp / (sp - sq)
    return p + t * (q - p)


def _order_in_plane(points, normal):
    center = points.mean(axis=0)
    e1 = points[0] - center
    e1 -= (e1 @ normal) * normal
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(normal, e1)
    rel = points - center
    angles = np.arctan2(rel @ e2, rel @ e1)
    return points[np.argsort(angles, kind="stable")]


def _dedupe(points, tol):
    kept = []
    for p in points:
        if all(np.linalg.norm(p - k) > tol for k in kept):
            kept.append(p)
    return kept


def _clip(faces, normal, offset, tol):
    """Clip the face list by ``x . normal <= offset``; return new list or None."""
    new_faces = []
    cut_points = []
    for n, d, gen, poly in faces:
        pts = np.array(poly)
        s = pts @ normal - offset
        out = []
        for i in range(len(pts)):
            j = (i + 1) % len(pts)
            si, sj = s[i], s[j]
            if si <= tol:
                out.append(pts[i])
                if abs(si) <= tol:
                    cut_points.append(pts[i])
            if (si < -tol and sj > tol) or (si > tol and sj < -tol):
                x = _edge_cut(pts[i], pts[j], si, sj)
                out.append(x)
                cut_points.append(x)
        out = _dedupe(out, tol)
        if len(out) >= 3:
            new_faces.append((n, d, gen, out))
    cut_points = _dedupe(cut_points, tol)
    if len(cut_points) < 3:
        return None
    new_faces.append((normal, offset, None, list(_order_in_plane(np.array(cut_points), normal))))
    return new_faces


def _assemble(faces, tol):
    """Merge coincident vertices and drop vertices lying inside an edge."""
    verts = []
    cycles = []
    for _, _, _, poly in faces:
        cycle = []
        for p in poly:
            for idx, v in enumerate(verts):
                if np.linalg.norm(p - v) <= tol:
                    break
            else:
                idx = len(verts)
                verts.append(p)
            if not cycle or cycle[-1] != idx:
                cycle.append(idx)
        while len(cycle) > 1 and cycle[0] == cycle[-1]:
            cycle.pop()
        cycles.append(cycle)

    degree = np.zeros(len(verts), dtype=int)
    for cycle in cycles:
        for idx in cycle:
            degree[idx] += 1
    cycles = [[i for i in c if degree[i] >= 3] for c in cycles]
    keep = [k for k, c in enumerate(cycles) if len(c) >= 3]

    used = sorted({i for k in keep for i in cycles[k]})
    remap = {old: new for new, old in enumerate(used)}
    vertices = np.array([verts[i] for i in used])
    out_faces = tuple(tuple(remap[i] for i in cycles[k]) for k in keep)
    normals = np.array([faces[k][0] for k in keep])
    offsets = np.array([faces[k][1] for k in keep])
    gens = [faces[k][2] for k in keep]
    return vertices, out_faces, normals, offsets, gens


def cell_from_halfspaces(halfspaces, bound, extent=None):
    """Intersect half-spaces with the cube ``[-bound, bound]^3``.

    Half-spaces are applied in increasing offset order; a plane that does
    not strictly cut any current vertex is skipped. The cube faces must be
    clipped away completely, otherwise the half-spaces do not bound a cell
    within ``bound``.
    """
    tol = PLANE_TOL * 2 * bound
    faces = _bounding_cube(bound)
    for hs in sorted(halfspaces, key=lambda h: h.offset):
        current = np.array([p for f in faces for p in f[3]])
        if np.max(current @ hs.normal) <= hs.offset + tol:
            continue
        clipped = _clip(faces, hs.normal, hs.offset, tol)
        if clipped is None:
            continue
        n, d, _, poly = clipped[-1]
        clipped[-1] = (n, d, hs.generator, poly)
        faces = clipped
    if any(f[2] is None for f in faces):
        raise CellValidationFailed("half-spaces do not bound a cell inside the box")

    tol = PLANE_TOL * 2 * max(np.linalg.norm(p) for f in faces for p in f[3])
    vertices, out_faces, normals, offsets, gens = _assemble(faces, tol)
    return ConvexPolyhedron(
        vertices=vertices,
        faces=out_faces,
        normals=normals,
        offsets=offsets,
        generators=np.array(gens),
        extent=extent,
    )


def _build(basis, extent):
    shell = neighbor_shell(basis, extent)
    halfspaces = [HalfSpace.bisecting(q) for q in shell.points]
    # the bisectors of +-u, +-v, +-w alone cut out a parallelepiped; box it with margin
    signs = np.array([[x, y, z] for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)])
    corners = np.linalg.solve(basis.vectors, (0.5 * signs * basis.lengths**2).T).T
    bound = max(2.0 * float(basis.lengths.max()), 1.5 * float(np.abs(corners).max()))
    return cell_from_halfspaces(halfspaces, bound, extent=extent)


def validate_cell(P, b):
    """Certificate that ``P`` is the Voronoi cell of the lattice of ``b``.

    Checks that every face sits on the bisector of a lattice vector of ``b``,
    that no bisector from a reduced shell one extent larger than the one
    ``P`` was built from cuts a vertex, that the cell is centrally symmetric
    with Euler characteristic 2, and that its volume equals the unit cell
    volume. The last condition alone is sufficient: a region cut out by a
    subset of the bisectors contains the true cell, so equal volumes force
    equality.
    """
    if P.generators is None or P.n_faces < 4:
        return False
    scale = P.diameter
    coeffs = np.linalg.solve(b.vectors.T, P.generators.T).T
    if not np.allclose(coeffs, np.round(coeffs), atol=1e-6):
        return False
    half = 0.5 * np.linalg.norm(P.generators, axis=1)
    if not np.allclose(P.offsets, half, rtol=0, atol=PLANE_TOL * scale):
        return False

    extent = (P.extent or DEFAULT_EXTENT) + 1
    shell = neighbor_shell(reduce_basis(b), extent).points
    lengths = np.linalg.norm(shell, axis=1)
    proj = (P.vertices @ shell.T) / lengths
    if np.any(proj > 0.5 * lengths + PLANE_TOL * scale):
        return False

    if euler_characteristic(P) != 2 or not is_centrally_symmetric(P):
        return False
    vol, det = polyhedron_volume(P), unit_cell_volume(b)
    return abs(vol - det) <= VOLUME_RTOL * det


def compute_voronoi_cell(b, extent=DEFAULT_EXTENT, reduce=True, fallback=True):
    """Voronoi cell of the lattice generated by ``b``.

    The basis is reduced first (unless ``reduce=False``), the bisectors of
    the neighbor shell are intersected, and the result is validated. If the
    shell proves too small, one larger extent is tried before giving up.

    Raises
    ------
    CellValidationFailed
        If no attempted shell yields a valid cell.
    """
    basis = reduce_basis(b) if reduce else b
    extents = [extent, extent + 1] if fallback else [extent]
    for ext in extents:
        try:
            cell = _build(basis, ext)
        except CellValidationFailed:
            continue
        if validate_cell(cell, b):
            return cell
    raise CellValidationFailed(
        f"Voronoi cell failed validation for extents {extents}; basis {b.vectors.tolist()}"
    )

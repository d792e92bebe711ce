"""Rotation-free comparisons between origin-centered convex polyhedra.

All kernels loop over the vertices of the first polyhedron and the faces of
the second, so their cost is O(#vertices(P) * #faces(Q)). The
:class:`OpCounter` context manager records that product for each call.
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager

import numpy as np

from .voronoi import PLANE_TOL

SCALE_SNAP = 1e-9

_counter = contextvars.ContextVar("latdist_op_counter", default=None)


class OpCounter:
    """Accumulates vertex-face evaluations made by the kernels."""

    def __init__(self):
        self.count = 0
        self.calls = 0


@contextmanager
def count_ops():
    counter = OpCounter()
    token = _counter.set(counter)
    try:
        yield counter
    finally:
        _counter.reset(token)


def _record(n_points, Q):
    counter = _counter.get()
    if counter is not None:
        counter.count += n_points * Q.n_faces
        counter.calls += 1


def _segment_distances(X, A, B):
    d = B - A
    dd = np.einsum("ej,ej->e", d, d)
    rel = X[:, None, :] - A[None, :, :]
    t = np.clip(np.einsum("mej,ej->me", rel, d) / dd, 0.0, 1.0)
    diff = rel - t[..., None] * d[None, :, :]
    return np.sqrt(np.einsum("mej,mej->me", diff, diff))


def distances_to_polyhedron(X, Q):
    """Euclidean distance from each row of ``X`` to the solid polyhedron ``Q``.

    Points within ``PLANE_TOL * diameter`` of every face plane are inside
    (distance exactly 0). Outside points take the smaller of the plane
    distance to faces whose polygon contains their projection and the
    distance to every edge segment.
    """
    X = np.asarray(X, dtype=float).reshape(-1, 3)
    tol = PLANE_TOL * Q.diameter
    plane = X @ Q.normals.T - Q.offsets
    outside = plane.max(axis=1) > tol
    result = np.zeros(len(X))
    if not outside.any():
        return result
    Xo = X[outside]
    plane = plane[outside]

    en, ec = Q._edge_planes
    in_face = np.all(np.einsum("mj,fkj->mfk", Xo, en) - ec[None] <= tol, axis=2)
    face_d = np.where(in_face & (plane > 0), plane, np.inf).min(axis=1)

    edges = Q.edges
    edge_d = _segment_distances(Xo, Q.vertices[edges[:, 0]], Q.vertices[edges[:, 1]]).min(axis=1)
    result[outside] = np.minimum(face_d, edge_d)
    return result


def point_to_polyhedron_distance(p, Q):
    """0 for points inside ``Q``, else the distance to its boundary."""
    _record(1, Q)
    return float(distances_to_polyhedron(np.asarray(p, dtype=float)[None], Q)[0])


def _segment_face_offsets(X, Q):
    # distance to the plane of the face that the segment [0, x] exits through
    ratio = (X @ Q.normals.T) / Q.offsets
    k = np.argmax(ratio, axis=1)
    hit = ratio[np.arange(len(X)), k] > 1.0 + PLANE_TOL
    plane = np.einsum("mj,mj->m", X, Q.normals[k]) - Q.offsets[k]
    return np.where(hit, plane, 0.0)


def vertex_offsets(X, Q, method="exact"):
    """Per-point contribution to the offset; ``method`` as in :func:`offset_static`."""
    if method == "exact":
        return distances_to_polyhedron(X, Q)
    if method == "segment_face":
        return _segment_face_offsets(np.asarray(X, dtype=float).reshape(-1, 3), Q)
    raise ValueError(f"unknown offset method {method!r}")


def offset_static(P, Q, method="exact"):
    """Smallest ``r`` with ``P`` inside the ``r``-offset of ``Q``.

    The distance to a convex set is a convex function, so its maximum over
    ``P`` is attained at a vertex and only vertices are tested.

    Parameters
    ----------
    method : {"exact", "segment_face"}
        ``"exact"`` uses the true point-to-polyhedron distance.
        ``"segment_face"`` takes, per vertex, the distance to the plane of
        the face of ``Q`` crossed by the segment from the origin; it can
        underestimate when the nearest feature is an edge or vertex.
    """
    _record(P.n_vertices, Q)
    return float(vertex_offsets(P.vertices, Q, method).max())


def gauge(X, Q):
    """Minkowski gauge of ``Q``: the factor ``s`` with ``x`` on the boundary of ``sQ``.

    Equal to ``|x| / |y|`` where ``y`` is the point at which the ray from
    the origin through ``x`` leaves ``Q``.
    """
    X = np.asarray(X, dtype=float).reshape(-1, 3)
    return ((X @ Q.normals.T) / Q.offsets).max(axis=1)


def snap_scale(s):
    """Treat scale factors within ``SCALE_SNAP`` of 1 as exact containment."""
    return np.where(np.abs(s - 1.0) <= SCALE_SNAP, 1.0, s)


def scale_static(P, Q):
    """Smallest ``s > 0`` with ``P`` inside ``s * Q``."""
    _record(P.n_vertices, Q)
    return float(snap_scale(gauge(P.vertices, Q).max()))


def hausdorff_static(P, Q, method="exact"):
    return max(offset_static(P, Q, method), offset_static(Q, P, method))

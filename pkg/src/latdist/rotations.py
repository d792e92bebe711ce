"""Sampled minimization over SO(3) and the two lattice distances.

``extended_hausdorff`` returns the larger of the two directional offsets
between Voronoi cells, each minimized over a rotation grid. ``scale_distance``
returns the natural log of the larger of the two minimized scale factors.

Both minimize over a finite grid, so each directional term is an upper
bound on its exact value. Identity and symmetry hold exactly; the triangle
inequality can fail by at most the sampling error of the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .metrics import _record, snap_scale, vertex_offsets, gauge
from .voronoi import compute_voronoi_cell

DEFAULT_N = 3
CHUNK = 512


@dataclass(frozen=True)
class RotationSample:
    """Rotation by ``angle`` radians about the unit ``axis`` (``axis[2] >= 0``)."""

    axis: tuple
    angle: float

    def matrix(self):
        return rotation_matrices(np.array([self.axis]), np.array([self.angle]))[0]

    @property
    def angle_degrees(self):
        return math.degrees(self.angle)

    @property
    def is_identity(self):
        return self.angle == 0.0


IDENTITY = RotationSample(axis=(0.0, 0.0, 1.0), angle=0.0)


@dataclass(frozen=True, eq=False)
class RotationGrid:
    n: int
    axes: np.ndarray
    angles: np.ndarray
    matrices: np.ndarray

    def __len__(self):
        return len(self.angles)

    def __getitem__(self, i):
        return RotationSample(axis=tuple(float(x) for x in self.axes[i]), angle=float(self.angles[i]))


@dataclass(frozen=True)
class LatticeDistanceResult:
    """Distance value with the two directional terms and their best rotations.

    For ``kind == "dH"`` the terms are offsets and ``value`` is their max.
    For ``kind == "dS"`` the terms are scale factors and ``value`` is the
    log of their max.
    """

    kind: str
    value: float
    forward_term: float
    backward_term: float
    best_rotation_forward: RotationSample
    best_rotation_backward: RotationSample


def rodrigues_rotate(u, axis, theta):
    u = np.asarray(u, dtype=float)
    k = np.asarray(axis, dtype=float)
    c, s = math.cos(theta), math.sin(theta)
    return u * c + np.cross(k, u) * s + k * (k @ u) * (1.0 - c)


def rotation_matrices(axes, angles):
    """Stack of matrices ``R`` with ``R @ u == rodrigues_rotate(u, axis, angle)``."""
    axes = np.asarray(axes, dtype=float)
    c = np.cos(angles)[:, None, None]
    s = np.sin(angles)[:, None, None]
    x, y, z = axes.T
    zero = np.zeros_like(x)
    cross = np.stack(
        [np.stack([zero, -z, y], -1), np.stack([z, zero, -x], -1), np.stack([-y, x, zero], -1)],
        axis=1,
    )
    outer = axes[:, :, None] * axes[:, None, :]
    return c * np.eye(3) + s * cross + (1.0 - c) * outer


def axis_from_angles(z, mu):
    r = math.sqrt(max(0.0, 1.0 - z * z))
    return (r * math.cos(mu), r * math.sin(mu), z)


def sample_rotations(n=DEFAULT_N):
    """Grid of ``n * ceil(2 pi n)^2 + 1`` rotations.

    Axes lie on the upper hemisphere at heights ``z = (k - 0.5) / n`` and
    azimuths ``mu = 2 pi j / m``; angles are ``theta = 2 pi l / m`` with
    ``m = ceil(2 pi n)``. Order is z-major, then mu, then theta, with the
    exact identity appended last.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"grid resolution must be >= 1, got {n}")
    m = math.ceil(2 * math.pi * n)
    z = (np.arange(1, n + 1) - 0.5) / n
    mu = 2 * math.pi * np.arange(m) / m
    theta = 2 * math.pi * np.arange(m) / m
    Z, MU, TH = np.meshgrid(z, mu, theta, indexing="ij")
    Z, MU, TH = Z.ravel(), MU.ravel(), TH.ravel()
    r = np.sqrt(1.0 - Z**2)
    axes = np.stack([r * np.cos(MU), r * np.sin(MU), Z], axis=1)
    axes = np.vstack([axes, [IDENTITY.axis]])
    angles = np.append(TH, 0.0)
    return RotationGrid(n=n, axes=axes, angles=angles, matrices=rotation_matrices(axes, angles))


def _rotated_vertices(mats, verts):
    # explicit sum instead of matmul keeps results independent of BLAS threading
    return (mats[:, None, :, :] * verts[None, :, None, :]).sum(axis=-1)


def _evaluate(kind, P, Q, mats, method="exact"):
    """Per-rotation offset (or raw max gauge) of ``R(P)`` against ``Q``."""
    out = np.empty(len(mats))
    nv = P.n_vertices
    for start in range(0, len(mats), CHUNK):
        block = mats[start : start + CHUNK]
        X = _rotated_vertices(block, P.vertices).reshape(-1, 3)
        if kind == "offset":
            vals = vertex_offsets(X, Q, method)
        else:
            vals = gauge(X, Q)
        out[start : start + len(block)] = vals.reshape(len(block), nv).max(axis=1)
        _record(len(X), Q)
    return out


def _refine(kind, P, Q, grid, best, value, method):
    """Coordinate descent on (z, mu, theta) around a grid minimizer."""
    sample = grid[best]
    ax = np.array(sample.axis)
    z = float(ax[2])
    mu = math.atan2(ax[1], ax[0])
    theta = sample.angle
    m = math.ceil(2 * math.pi * grid.n)
    steps = [1.0 / grid.n, 2 * math.pi / m, 2 * math.pi / m]
    params = [z, mu, theta]

    def cost(p):
        zz = min(1.0, max(0.0, p[0]))
        axis = axis_from_angles(zz, p[1])
        mat = rotation_matrices(np.array([axis]), np.array([p[2]]))
        return float(_evaluate(kind, P, Q, mat, method)[0]), RotationSample(axis, p[2] % (2 * math.pi))

    best_sample = sample
    for _ in range(3):
        for i in range(3):
            for sign in (1, -1):
                trial = list(params)
                trial[i] += sign * steps[i]
                val, smp = cost(trial)
                if val < value:
                    value, params, best_sample = val, trial, smp
        steps = [s / 2 for s in steps]
    return value, best_sample


def _minimize(kind, P, Q, grid, refine=False, method="exact"):
    vals = _evaluate(kind, P, Q, grid.matrices, method)
    best = int(np.argmin(vals))  # first occurrence in grid order
    value = float(vals[best])
    sample = grid[best]
    if sample.is_identity:
        sample = IDENTITY  # every theta = 0 sample is the identity; report it canonically
    if refine and value > 0:
        value, sample = _refine(kind, P, Q, grid, best, value, method)
    return value, sample


def offset_min(P, Q, grid, refine=False, method="exact"):
    """Minimum over grid rotations ``R`` of ``offset_static(R(P), Q)``."""
    return _minimize("offset", P, Q, grid, refine, method)


def scale_min(P, Q, grid, refine=False):
    """Minimum over grid rotations ``R`` of ``scale_static(R(P), Q)``."""
    value, sample = _minimize("scale", P, Q, grid, refine)
    return float(snap_scale(value)), sample


def _cell(x):
    return x if hasattr(x, "faces") else compute_voronoi_cell(x)


def hausdorff_from_cells(P, Q, grid, refine=False, method="exact"):
    fwd, rf = offset_min(P, Q, grid, refine, method)
    bwd, rb = offset_min(Q, P, grid, refine, method)
    return LatticeDistanceResult("dH", max(fwd, bwd), fwd, bwd, rf, rb)


def scale_from_cells(P, Q, grid, refine=False):
    fwd, rf = scale_min(P, Q, grid, refine)
    bwd, rb = scale_min(Q, P, grid, refine)
    return LatticeDistanceResult("dS", math.log(max(fwd, bwd)), fwd, bwd, rf, rb)


def extended_hausdorff(L, M, grid=None, refine=False, method="exact"):
    """Rotation-minimized Hausdorff distance between the Voronoi cells of two lattices.

    ``L`` and ``M`` may be :class:`LatticeBasis` objects or precomputed
    cells. The default grid is ``sample_rotations(3)``.
    """
    grid = sample_rotations(DEFAULT_N) if grid is None else grid
    return hausdorff_from_cells(_cell(L), _cell(M), grid, refine, method)


def scale_distance(L, M, grid=None, refine=False):
    """Log of the larger rotation-minimized scale factor between two Voronoi cells."""
    grid = sample_rotations(DEFAULT_N) if grid is None else grid
    return scale_from_cells(_cell(L), _cell(M), grid, refine)

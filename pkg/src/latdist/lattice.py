"""Lattice bases, cell parameters, pairwise reduction and neighbor shells."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateBasis, NonPositiveDefinite

DEFAULT_EXTENT = 3
DEG_TOL = 1e-12


@dataclass(frozen=True)
class LatticeBasis:
    """Three basis vectors ``u, v, w`` (rows of ``vectors``) of a 3D lattice.

    The orientation is normalized on construction: a left-handed triple has
    ``v`` and ``w`` swapped so that ``det > 0``.
    """

    vectors: np.ndarray

    def __post_init__(self):
        vecs = np.array(self.vectors, dtype=float)
        if vecs.shape != (3, 3) or not np.all(np.isfinite(vecs)):
            raise DegenerateBasis(f"expected three finite 3-vectors, got {vecs!r}")
        det = np.linalg.det(vecs)
        longest = np.linalg.norm(vecs, axis=1).max()
        if abs(det) <= DEG_TOL * longest**3 or longest == 0.0:
            raise DegenerateBasis(f"basis vectors are (nearly) coplanar: det={det:g}")
        if det < 0:
            vecs = vecs[[0, 2, 1]]
        vecs.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)

    @property
    def u(self):
        return self.vectors[0]

    @property
    def v(self):
        return self.vectors[1]

    @property
    def w(self):
        return self.vectors[2]

    @property
    def lengths(self):
        return np.linalg.norm(self.vectors, axis=1)

    def scaled(self, s):
        return LatticeBasis(self.vectors * s)

    def rotated(self, rotation):
        """Basis of the lattice rotated by the 3x3 matrix ``rotation``."""
        return LatticeBasis(self.vectors @ np.asarray(rotation, dtype=float).T)

    def transformed(self, matrix):
        """Basis ``matrix @ vectors``; ``matrix`` is an integer change of basis."""
        return LatticeBasis(np.asarray(matrix) @ self.vectors)

    def __eq__(self, other):
        if not isinstance(other, LatticeBasis):
            return NotImplemented
        return np.array_equal(self.vectors, other.vectors)

    def __hash__(self):
        return hash(self.vectors.tobytes())


@dataclass(frozen=True)
class CellParameters:
    """Edge lengths ``a, b, c`` and angles ``alpha, beta, gamma`` in degrees."""

    a: float
    b: float
    c: float
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ValueError(f"cell length {name} must be positive, got {value}")
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            if not np.isfinite(value) or not 0 < value < 180:
                raise ValueError(f"cell angle {name} must lie in (0, 180), got {value}")

    def as_tuple(self):
        return (self.a, self.b, self.c, self.alpha, self.beta, self.gamma)


@dataclass(frozen=True)
class NeighborSet:
    """Nonzero lattice vectors with integer coefficients in ``[-extent, extent]^3``."""

    points: np.ndarray
    coefficients: np.ndarray = field(repr=False)
    extent: int

    def __len__(self):
        return len(self.points)


def basis_from_cell_parameters(p):
    """Build a basis with ``u`` along x and ``v`` in the xy-plane.

    Raises
    ------
    NonPositiveDefinite
        If the angles cannot be realized by three vectors in 3-space.
    """
    al, be, ga = np.radians([p.alpha, p.beta, p.gamma])
    cos_a, cos_b, cos_g = np.cos(al), np.cos(be), np.cos(ga)
    sin_g = np.sin(ga)
    wy = (cos_a - cos_b * cos_g) / sin_g
    wz_sq = 1.0 - cos_b**2 - wy**2
    if wz_sq <= 0:
        raise NonPositiveDefinite(
            f"angles alpha={p.alpha}, beta={p.beta}, gamma={p.gamma} "
            "do not define a 3D cell"
        )
    vectors = np.array(
        [
            [p.a, 0.0, 0.0],
            [p.b * cos_g, p.b * sin_g, 0.0],
            [p.c * cos_b, p.c * wy, p.c * np.sqrt(wz_sq)],
        ]
    )
    return LatticeBasis(vectors)


def cell_parameters(b):
    """Lengths and angles (degrees) of a basis; inverse of basis_from_cell_parameters."""
    u, v, w = b.vectors
    la, lb, lc = b.lengths

    def angle(x, y, nx, ny):
        return float(np.degrees(np.arccos(np.clip(x @ y / (nx * ny), -1.0, 1.0))))

    return CellParameters(
        float(la), float(lb), float(lc),
        angle(v, w, lb, lc), angle(u, w, la, lc), angle(u, v, la, lb),
    )


def unit_cell_volume(b):
    return float(abs(np.linalg.det(b.vectors)))


def _pairwise_reduce(vectors, max_iter=10000):
    vecs = np.array(vectors, dtype=float)
    transform = np.eye(3, dtype=np.int64)
    for _ in range(max_iter):
        best = None
        sq = np.einsum("ij,ij->i", vecs, vecs)
        for i, j in itertools.permutations(range(3), 2):
            # np.round is half-to-even, which decides exact ties
            k = int(np.round(vecs[i] @ vecs[j] / sq[j]))
            if k == 0:
                continue
            cand = vecs[i] - k * vecs[j]
            gain = sq[i] - cand @ cand
            if gain > 1e-12 * sq[i] and (best is None or gain > best[0]):
                best = (gain, i, j, k)
        if best is None:
            break
        _, i, j, k = best
        vecs[i] = vecs[i] - k * vecs[j]
        transform[i] -= k * transform[j]
    else:  # pragma: no cover
        raise RuntimeError(f"pairwise reduction did not converge in {max_iter} steps")
    return vecs, transform


def reduce_basis(b, return_transform=False):
    """Greedy pairwise (Lagrange-Gauss) reduction.

    Repeatedly subtracts the integer multiple ``round(vi.vj / vj.vj) * vj``
    from ``vi`` for whichever pair shortens a vector most, until no pair
    shortens anything. The result is sorted by length and generates the
    same lattice.

    Parameters
    ----------
    b : LatticeBasis
    return_transform : bool
        Also return the unimodular integer matrix ``H`` with
        ``reduced.vectors == H @ b.vectors``.
    """
    vecs, transform = _pairwise_reduce(b.vectors)
    order = np.argsort(np.einsum("ij,ij->i", vecs, vecs), kind="stable")
    vecs, transform = vecs[order], transform[order]
    if np.linalg.det(vecs) < 0:
        vecs[2] *= -1
        transform[2] *= -1
    reduced = LatticeBasis(vecs)
    if return_transform:
        return reduced, transform
    return reduced


def neighbor_shell(b, extent=DEFAULT_EXTENT):
    """All lattice vectors ``x*u + y*v + z*w`` with ``(x, y, z)`` in
    ``[-extent, extent]^3`` except the origin.

    The shell is only a sufficient neighborhood for the Voronoi cell when
    ``b`` is reduced; pass the output of :func:`reduce_basis`.
    """
    extent = int(extent)
    if extent < 1:
        raise ValueError(f"extent must be a positive integer, got {extent}")
    r = np.arange(-extent, extent + 1)
    coeffs = np.stack(np.meshgrid(r, r, r, indexing="ij"), axis=-1).reshape(-1, 3)
    coeffs = coeffs[np.any(coeffs != 0, axis=1)]
    points = coeffs @ b.vectors
    return NeighborSet(points=points, coefficients=coeffs, extent=extent)

"""Brute-force reference computations, independent of the library kernels."""

import itertools

import numpy as np
from scipy.spatial import ConvexHull, HalfspaceIntersection


def shortest_vector_length(vectors, bound=5):
    """Enumerate integer combinations; the window grows to cover every vector
    no longer than the shortest basis vector, so the minimum is exact."""
    B = np.asarray(vectors, dtype=float)
    radius = np.linalg.norm(B, axis=1).min()
    need = np.ceil(radius * np.linalg.norm(np.linalg.inv(B).T, axis=1)).astype(int)
    ranges = [range(-max(bound, k), max(bound, k) + 1) for k in need]
    coeffs = np.array([c for c in itertools.product(*ranges) if any(c)])
    return np.linalg.norm(coeffs @ B, axis=1).min()


def qhull_cell(vectors):
    """Voronoi cell by qhull half-space intersection over a brute-force shell.

    The shell uses a box of integer coefficients large enough for any
    basis: coefficients are bounded via the inverse Gram matrix so every
    lattice point within twice the longest basis vector is included.
    Returns (vertices, number of merged faces, volume).
    """
    B = np.asarray(vectors, dtype=float)
    radius = 2.0 * np.linalg.norm(B, axis=1).max()
    # |x_i| <= radius * |row i of B^-T|
    bound = np.ceil(radius * np.linalg.norm(np.linalg.inv(B).T, axis=1)).astype(int)
    ranges = [range(-b, b + 1) for b in bound]
    coeffs = np.array([c for c in itertools.product(*ranges) if any(c)])
    q = coeffs @ B
    q = q[np.linalg.norm(q, axis=1) <= 2 * radius]
    # qhull format: A x + b <= 0 with A = q, b = -|q|^2 / 2
    hs = np.hstack([q, -0.5 * np.einsum("ij,ij->i", q, q)[:, None]])
    verts = HalfspaceIntersection(hs, np.zeros(3)).intersections
    hull = ConvexHull(verts)
    scale = np.abs(verts).max()
    uniq = []
    for eq in hull.equations:
        if not any(np.allclose(eq, u, atol=1e-7 * max(1.0, scale)) for u in uniq):
            uniq.append(eq)
    pts = verts[hull.vertices]
    distinct = []
    for p in pts:
        if not any(np.linalg.norm(p - d) < 1e-9 * scale for d in distinct):
            distinct.append(p)
    return np.array(distinct), len(uniq), hull.volume


def sample_boundary(P, total=100_000):
    """Deterministic boundary samples: barycentric grids on fan triangles, corners included."""
    tris = []
    for face in P.faces:
        pts = P.vertices[list(face)]
        for k in range(1, len(pts) - 1):
            tris.append((pts[0], pts[k], pts[k + 1]))
    per_tri = total // len(tris)
    # m(m+1)/2 grid points per triangle for resolution m-1
    m = int((np.sqrt(8 * per_tri + 1) - 1) / 2)
    ij = [(i, j) for i in range(m) for j in range(m - i)]
    bary = np.array([(i / (m - 1), j / (m - 1)) for i, j in ij])
    out = []
    for a, b, c in tris:
        out.append(a + bary[:, :1] * (b - a) + bary[:, 1:] * (c - a))
    return np.vstack(out)


def _halfspaces(P):
    return P.normals, P.offsets


def project_onto_polytope(X, A, b, chunk=2000):
    """Distance from each point to ``{y : A y <= b}`` by active-set enumeration.

    For every subset of at most three constraints, project onto the
    intersection of their planes and keep feasible candidates; the closest
    feasible candidate is the exact projection.
    """
    X = np.asarray(X, dtype=float)
    tol = 1e-9 * np.abs(b).max()
    inside = np.all(X @ A.T - b <= tol, axis=1)
    result = np.zeros(len(X))
    subsets = [s for k in (1, 2, 3) for s in itertools.combinations(range(len(A)), k)]
    cands = []
    for s in subsets:
        As, bs = A[list(s)], b[list(s)]
        G = As @ As.T
        if abs(np.linalg.det(G)) < 1e-12:
            continue
        cands.append((As, bs, np.linalg.inv(G)))
    for start in range(0, len(X), chunk):
        Xc = X[start : start + chunk]
        best = np.full(len(Xc), np.inf)
        for As, bs, Ginv in cands:
            lam = (Xc @ As.T - bs) @ Ginv.T
            Y = Xc - lam @ As
            feas = np.all(Y @ A.T - b <= tol, axis=1)
            d = np.linalg.norm(Xc - Y, axis=1)
            best = np.where(feas, np.minimum(best, d), best)
        result[start : start + chunk] = best
    result[inside] = 0.0
    return result


def offset_oracle(P, Q, total=100_000):
    X = sample_boundary(P, total=total)
    return project_onto_polytope(X, *_halfspaces(Q)).max()


def ray_ratio_oracle(P, Q, total=100_000, iters=80):
    """max over boundary samples x of P of |x| / |ray exit point of Q|, by bisection."""
    X = sample_boundary(P, total=total)
    A, b = _halfspaces(Q)
    lo = np.zeros(len(X))
    hi = np.full(len(X), 1e6)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        inside = np.all((mid[:, None] * X) @ A.T <= b, axis=1)
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    # the point x lies on the boundary of (1/t) Q, with t the largest inside factor
    return (1.0 / lo).max()


def grid_brute_force(fn, grid):
    """Evaluate ``fn(rotation_matrix)`` on every grid rotation; return (min, argmin)."""
    vals = np.array([fn(R) for R in grid.matrices])
    k = int(np.argmin(vals))
    return vals[k], k

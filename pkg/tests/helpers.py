import numpy as np

from latdist import LatticeBasis


def random_bases(seed, k, low=-2.0, high=2.0, min_det=0.1):
    """``k`` bases with entries uniform in [low, high], rejecting |det| < min_det."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < k:
        B = rng.uniform(low, high, (3, 3))
        if abs(np.linalg.det(B)) >= min_det:
            out.append(LatticeBasis(B))
    return out


def random_unimodular(rng, steps=6, coeff=3):
    """Product of random integer shears; determinant is +1."""
    M = np.eye(3, dtype=np.int64)
    for _ in range(steps):
        i, j = rng.choice(3, size=2, replace=False)
        E = np.eye(3, dtype=np.int64)
        E[i, j] = rng.integers(-coeff, coeff + 1)
        M = E @ M
    return M


def perturbed(basis, delta, directions):
    """Move each basis vector by ``delta * |vector|`` along a fixed unit direction."""
    vecs = basis.vectors
    return LatticeBasis(vecs + delta * np.linalg.norm(vecs, axis=1)[:, None] * directions)

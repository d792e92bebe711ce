import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latdist import (
    BCC,
    CUBIC,
    FCC,
    extended_hausdorff,
    offset_min,
    offset_static,
    rodrigues_rotate,
    sample_rotations,
    scale_distance,
    scale_min,
    scale_static,
)
from latdist.rotations import rotation_matrices

from helpers import random_bases, random_unimodular
from oracles import grid_brute_force, offset_oracle, ray_ratio_oracle


@pytest.mark.parametrize("n, count", [(1, 50), (2, 2 * 13**2 + 1), (3, 1084)])
def test_grid_size(n, count):
    grid = sample_rotations(n)
    assert len(grid) == count == n * math.ceil(2 * math.pi * n) ** 2 + 1
    assert len(grid) >= 4 * math.pi**2 * n**3 * (1 - 1 / n)


def test_grid_axes_and_identity(grid3):
    assert np.all(grid3.axes[:, 2] >= 0)
    np.testing.assert_allclose(np.linalg.norm(grid3.axes, axis=1), 1, atol=1e-12)
    np.testing.assert_array_equal(grid3.matrices[-1], np.eye(3))
    assert grid3[len(grid3) - 1].is_identity
    assert np.all((grid3.angles >= 0) & (grid3.angles < 2 * math.pi))
    np.testing.assert_allclose(np.unique(np.round(grid3.axes[:-1, 2], 12)), [1 / 6, 1 / 2, 5 / 6])


@pytest.mark.parametrize(
    "u, axis, theta, expected",
    [((1, 0, 0), (0, 0, 1), math.pi / 2, (0, 1, 0)),
     ((0.3, -2, 5), (0.6, 0, 0.8), 0.0, (0.3, -2, 5)),
     ((1, 1, 0), (0, 0, 1), math.pi, (-1, -1, 0))],
)
def test_rodrigues_examples(u, axis, theta, expected):
    np.testing.assert_allclose(rodrigues_rotate(u, axis, theta), expected, atol=1e-15)


unit = st.floats(-1, 1, allow_nan=False)


@settings(max_examples=100, deadline=None)
@given(st.tuples(unit, unit, unit), st.tuples(unit, unit, unit), st.floats(0, 2 * math.pi))
def test_rodrigues_preserves_norm_and_matches_matrix(u, axis, theta):
    a = np.array(axis)
    if np.linalg.norm(a) < 1e-3:
        return
    a /= np.linalg.norm(a)
    u = np.array(u)
    r = rodrigues_rotate(u, a, theta)
    assert np.linalg.norm(r) == pytest.approx(np.linalg.norm(u), rel=1e-12, abs=1e-15)
    R = rotation_matrices(a[None], np.array([theta]))[0]
    np.testing.assert_allclose(R @ u, r, atol=1e-14)
    np.testing.assert_allclose(R @ R.T, np.eye(3), atol=1e-14)
    assert np.linalg.det(R) == pytest.approx(1.0)


def test_offset_min_self(cells, grid3):
    for P in cells.values():
        value, rot = offset_min(P, P, grid3)
        assert value == 0.0
        assert rot.is_identity


def test_offset_min_rotated_cube(cells, grid3):
    cube = cells["cubic"]
    R45 = rotation_matrices(np.array([[0, 0, 1.0]]), np.array([math.pi / 4]))[0]
    P = cube.rotated(R45)
    value, rot = offset_min(P, cube, grid3)
    brute, k = grid_brute_force(lambda R: offset_static(P.rotated(R), cube), grid3)
    assert value == brute
    assert rot == grid3[k]
    assert value < offset_static(P, cube)


def test_offset_min_nested_cubes_grid_enumeration(cells, grid3):
    big, small = cells["cubic"], cells["cubic"].scaled(0.5)
    value, _ = offset_min(big, small, grid3)
    brute, _ = grid_brute_force(lambda R: offset_static(big.rotated(R), small), grid3)
    assert value == brute == pytest.approx(math.sqrt(3) / 4, abs=1e-12)


def test_offset_min_side_two_cube(cells, grid3):
    big, small = cells["cubic"].scaled(2), cells["cubic"]
    value, rot = offset_min(big, small, grid3)
    assert value == pytest.approx(math.sqrt(3) / 2, abs=1e-12)
    assert rot.is_identity


def test_dh_same_lattice_other_basis(grid3):
    rng = np.random.default_rng(1)
    for b in [CUBIC, BCC, FCC] + random_bases(21, 3):
        other = b.transformed(random_unimodular(rng))
        assert extended_hausdorff(b, other, grid3).value == 0.0
        assert scale_distance(b, other, grid3).value == 0.0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cubic_side_one_vs_two(n):
    grid = sample_rotations(n)
    assert extended_hausdorff(CUBIC, CUBIC.scaled(2), grid).value == pytest.approx(math.sqrt(3) / 2, abs=1e-9)
    assert scale_distance(CUBIC, CUBIC.scaled(2), grid).value == pytest.approx(math.log(2), abs=1e-9)


def _per_rotation_oracle(P, Q, grid, fn):
    return min(fn(P.rotated(R), Q) for R in grid.matrices)


def test_dh_cubic_bcc_matches_brute_force(cells, grid1):
    P, Q = cells["cubic"], cells["bcc"]
    res = extended_hausdorff(CUBIC, BCC, grid1)
    fwd = _per_rotation_oracle(P, Q, grid1, lambda A, B: offset_oracle(A, B, total=5000))
    bwd = _per_rotation_oracle(Q, P, grid1, lambda A, B: offset_oracle(A, B, total=5000))
    assert res.forward_term == pytest.approx(fwd, abs=1e-3)
    assert res.backward_term == pytest.approx(bwd, abs=1e-3)
    assert res.value == pytest.approx(max(fwd, bwd), abs=1e-3)


def test_scale_min_self_and_homothety(cells, grid3):
    for P in cells.values():
        value, rot = scale_min(P, P, grid3)
        assert value == 1.0 and rot.is_identity
    value, rot = scale_min(cells["cubic"].scaled(2), cells["cubic"], grid3)
    assert value == pytest.approx(2.0, rel=1e-12)
    assert rot.is_identity


def test_scale_min_cube_bcc_matches_ray_oracle(cells, grid1):
    P, Q = cells["cubic"], cells["bcc"]
    for R in grid1.matrices[::7]:
        assert scale_static(P.rotated(R), Q) == pytest.approx(
            ray_ratio_oracle(P.rotated(R), Q, total=5000), abs=1e-6
        )
    value, _ = scale_min(P, Q, grid1)
    oracle = _per_rotation_oracle(P, Q, grid1, lambda A, B: ray_ratio_oracle(A, B, total=5000))
    assert value == pytest.approx(oracle, abs=1e-6)


def test_scale_product_at_least_one(grid3):
    for a in (CUBIC, BCC, FCC):
        for b in (CUBIC, BCC, FCC):
            res = scale_distance(a, b, grid3)
            assert res.forward_term * res.backward_term >= 1 - 1e-9
            assert res.value >= 0
            assert res.value == math.log(max(res.forward_term, res.backward_term))


def test_symmetry_bit_exact(grid1):
    bases = random_bases(31, 4)
    for a in bases:
        for b in bases:
            assert extended_hausdorff(a, b, grid1).value == extended_hausdorff(b, a, grid1).value
            assert scale_distance(a, b, grid1).value == scale_distance(b, a, grid1).value


def test_result_fields(grid1):
    res = extended_hausdorff(CUBIC, BCC, grid1)
    assert res.kind == "dH"
    assert res.value == max(res.forward_term, res.backward_term)
    res = scale_distance(CUBIC, BCC, grid1)
    assert res.kind == "dS"


@pytest.mark.parametrize("s", [0.5, 2.0, 3.7])
def test_scaling_laws(s, grid1):
    a, b = random_bases(41, 2)
    dh = extended_hausdorff(a, b, grid1).value
    ds = scale_distance(a, b, grid1).value
    assert extended_hausdorff(a.scaled(s), b.scaled(s), grid1).value == pytest.approx(s * dh, rel=1e-9)
    assert scale_distance(a.scaled(s), b.scaled(s), grid1).value == pytest.approx(ds, abs=1e-12)


def test_rotation_invariance_improves_with_grid():
    R0 = rotation_matrices(np.array([[0.36, 0.48, 0.8]]), np.array([1.1]))[0]
    for b in random_bases(3, 3) + [BCC]:
        coarse = extended_hausdorff(b, b.rotated(R0), sample_rotations(1)).value
        fine = extended_hausdorff(b, b.rotated(R0), sample_rotations(6)).value
        assert 0 < fine < coarse


def test_refine_never_worse(grid1):
    R0 = rotation_matrices(np.array([[0.36, 0.48, 0.8]]), np.array([1.1]))[0]
    b = random_bases(3, 1)[0]
    plain = extended_hausdorff(b, b.rotated(R0), grid1)
    refined = extended_hausdorff(b, b.rotated(R0), grid1, refine=True)
    assert refined.value <= plain.value
    assert extended_hausdorff(b, b, grid1, refine=True).value == 0.0
    ds_plain = scale_distance(b, b.rotated(R0), grid1).value
    assert scale_distance(b, b.rotated(R0), grid1, refine=True).value <= ds_plain


def test_accepts_precomputed_cells(cells, grid1):
    direct = extended_hausdorff(CUBIC, FCC, grid1)
    cached = extended_hausdorff(cells["cubic"], cells["fcc"], grid1)
    assert direct.value == cached.value

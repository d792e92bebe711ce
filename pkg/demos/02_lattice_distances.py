"""Distances between lattices.

Two distances compare Voronoi cells after minimizing over rotations:

* ``extended_hausdorff`` measures how far one cell sticks out of the other,
* ``scale_distance`` is the log of the factor by which one cell must grow
  to contain the other.

Run with ``python3 demos/02_lattice_distances.py``.
"""

# %%
import math

from latdist import (
    BCC,
    CUBIC,
    FCC,
    compute_voronoi_cell,
    extended_hausdorff,
    sample_rotations,
    scale_distance,
)

grid = sample_rotations(3)
print(f"rotation grid n=3 has {len(grid)} rotations")

cells = {name: compute_voronoi_cell(b) for name, b in (("cubic", CUBIC), ("bcc", BCC), ("fcc", FCC))}

# %%
for a, b in (("cubic", "bcc"), ("cubic", "fcc"), ("bcc", "fcc")):
    dh = extended_hausdorff(cells[a], cells[b], grid)
    ds = scale_distance(cells[a], cells[b], grid)
    print(f"{a:5s} vs {b:5s}  dH={dh.value:.5f}  dS={ds.value:.5f}")

# %% [markdown]
# A cube and its double have a closed form: the corner of the small cube
# sits sqrt(3)/2 from the large one, and the scale factor is exactly 2.

# %%
big = CUBIC.scaled(2.0)
print("dH(cube, 2 cube) =", extended_hausdorff(CUBIC, big, grid).value, "expected", math.sqrt(3) / 2)
print("dS(cube, 2 cube) =", scale_distance(CUBIC, big, grid).value, "expected", math.log(2))

# %% [markdown]
# The result also records the rotation that achieved each directional term.

# %%
res = scale_distance(cells["bcc"], cells["fcc"], grid)
for label, term, rot in (("forward", res.forward_term, res.best_rotation_forward),
                         ("backward", res.backward_term, res.best_rotation_backward)):
    print(f"{label:8s} scale={term:.6f} axis={tuple(round(x, 3) for x in rot.axis)} "
          f"angle={rot.angle_degrees:.1f} deg")

"""Voronoi cells of the three cubic lattices.

Run with ``python3 demos/01_voronoi_cells.py``. Each cell is written as a
Wavefront OBJ next to this script, so it can be opened in any mesh viewer.
"""

# %%
from pathlib import Path

import numpy as np

from latdist import (
    BCC,
    CUBIC,
    FCC,
    compute_voronoi_cell,
    export_cell_obj,
    inradius,
    polyhedron_volume,
    reduce_basis,
)

OUT = Path(__file__).with_name("output")
OUT.mkdir(exist_ok=True)

# %% [markdown]
# The cell of a lattice is the set of points closer to the origin than to
# any other lattice point. Its volume always equals the volume of a unit
# cell, so the three cells below have volumes 1, 1/2 and 1/4.

# %%
for name, basis in (("cubic", CUBIC), ("bcc", BCC), ("fcc", FCC)):
    cell = compute_voronoi_cell(basis)
    print(f"{name:6s} vertices={cell.n_vertices:2d} faces={cell.n_faces:2d} "
          f"volume={polyhedron_volume(cell):.6f} inradius={inradius(cell):.6f}")
    (OUT / f"{name}.obj").write_bytes(export_cell_obj(cell))

# %% [markdown]
# The cell depends on the lattice, not on the basis that spans it. A
# skewed basis of the BCC lattice reduces back to short vectors and gives
# the same truncated octahedron.

# %%
skew = BCC.transformed(np.array([[1, 4, 0], [0, 1, -3], [0, 0, 1]]))
print("skewed basis lengths :", np.round(skew.lengths, 4))
print("reduced basis lengths:", np.round(reduce_basis(skew).lengths, 4))
cell = compute_voronoi_cell(skew)
print("cell from skewed basis:", cell.n_vertices, "vertices,", cell.n_faces, "faces")

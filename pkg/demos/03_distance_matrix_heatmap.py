"""A distance matrix over a family of lattices, saved as CSV and a PGM heatmap.

The family runs along a tetragonal distortion of the cubic lattice, so the
heatmap shows distances growing away from the diagonal.
Run with ``python3 demos/03_distance_matrix_heatmap.py``.
"""

# %%
from pathlib import Path

import numpy as np

from latdist import (
    CellParameters,
    basis_from_cell_parameters,
    distance_matrix,
    scale_to_gray,
    write_matrix_csv,
    write_pgm_heatmap,
)

OUT = Path(__file__).with_name("output")
OUT.mkdir(exist_ok=True)

ratios = np.linspace(1.0, 1.6, 7)
ids = [f"c/a={r:.1f}" for r in ratios]
bases = [basis_from_cell_parameters(CellParameters(1.0, 1.0, r, 90, 90, 90)) for r in ratios]

# %%
m = distance_matrix(ids, bases, metric="ds", n=2)
print(np.array2string(m.values, precision=3))

# %%
(OUT / "tetragonal_ds.csv").write_text(write_matrix_csv(m))
(OUT / "tetragonal_ds.pgm").write_bytes(write_pgm_heatmap(scale_to_gray(m)))
print("wrote", OUT / "tetragonal_ds.csv", "and", OUT / "tetragonal_ds.pgm")

"""Rotation-invariant Voronoi-cell distances between 3D lattices."""

from .errors import (
    CellValidationFailed,
    DegenerateBasis,
    LatdistError,
    MalformedNumber,
    MissingTag,
    NonPositiveDefinite,
    ParseError,
    SchemaError,
    SymmetryViolation,
)
from .lattice import (
    CellParameters,
    LatticeBasis,
    NeighborSet,
    basis_from_cell_parameters,
    cell_parameters,
    neighbor_shell,
    reduce_basis,
    unit_cell_volume,
)
from .voronoi import (
    ConvexPolyhedron,
    HalfSpace,
    compute_voronoi_cell,
    inradius,
    polyhedron_volume,
    validate_cell,
)
from .metrics import (
    hausdorff_static,
    offset_static,
    point_to_polyhedron_distance,
    scale_static,
)
from .rotations import (
    LatticeDistanceResult,
    RotationGrid,
    RotationSample,
    extended_hausdorff,
    offset_min,
    rodrigues_rotate,
    sample_rotations,
    scale_distance,
    scale_min,
)
from .formats import (
    DistanceMatrix,
    LatticeRecord,
    export_cell_obj,
    parse_cif_cell,
    parse_lattice_json,
    read_matrix_csv,
    scale_to_gray,
    write_matrix_csv,
    write_pgm_heatmap,
)
from .batch import distance_matrix

CUBIC = LatticeBasis([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
BCC = LatticeBasis([[1, 0, 0], [0, 1, 0], [0.5, 0.5, 0.5]])
FCC = LatticeBasis([[1, 0, 0], [0.5, 0.5, 0], [0.5, 0, 0.5]])

__version__ = "0.1.0"

"""strata: exact ground-state degeneracy of decorated surfaces.

Core objects: category data (:mod:`strata.fusion_data`), exact dimension
arithmetic (:mod:`strata.verlinde`), boundary/wall defects
(:mod:`strata.defects`), the region-graph surface model and its text
format (:mod:`strata.surface`), the contraction engine
(:mod:`strata.engine`) and an independent homology oracle
(:mod:`strata.lattice`).  A FastAPI service (:mod:`strata.service`)
wraps the library; the ``strata`` command line is a thin client of it.
"""

from .errors import (
    CategoryMismatchError,
    ConsistencyError,
    DslError,
    InvalidDataError,
    MoveError,
    StrataError,
    StructuralError,
    UnknownNameError,
    Violation,
)
from .fusion_data import (
    FusionRing,
    ModularData,
    builtin_catalog,
    catalog_get,
    conjugate,
    deligne_product,
    validate_fusion_ring,
    validate_modular_data,
    zn_toric,
)
from .verlinde import (
    ObjectVector,
    dual_object,
    fuse,
    genus_dim,
    genus_dim_verlinde,
    handle_object,
    simple,
    unit_multiplicity,
    unit_vector,
)
from .defects import (
    LagrangianAlgebra,
    WallMatrix,
    boundary_wall_from_lagrangian,
    check_wall_anomaly_free,
    compose_walls,
    identity_wall,
    reverse_wall,
    validate_lagrangian,
    validate_wall,
    wall_to_lagrangian,
)
from .surface import (
    RegionSpec,
    SurfaceSpec,
    WallEdge,
    canonical_text,
    parse_surface,
    total_genus,
    validate_surface,
)
from .engine import (
    CapBoundary,
    ComposeParallelWalls,
    CutHandle,
    FuseAnyons,
    GsdResult,
    ReductionTrace,
    ReverseEdge,
    SplitPartition,
    SplitRegionTransparent,
    apply_move,
    chain_wall,
    gsd,
    gsd_chain,
)
from .lattice import CellComplex, cell_complex_from_dict, fixture, homology_order, smith_normal_form
from .workspace import Workspace

__version__ = "0.1.0"

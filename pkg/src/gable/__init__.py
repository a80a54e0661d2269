"""Exact-arithmetic computational topology.

Simplicial homology over the integers, barycentric subdivision and the
retraction formulas, the shuffle cross product and the swap-quotient of
self-products, the roof map on even-dimensional cycles, nerves of covers with
refinement towers, and inverse limits of finitely generated abelian group
systems.  All arithmetic is exact: Python integers and fractions throughout.
"""

from .complexes import (
    Chain,
    ComplexPair,
    RationalPoint,
    SimplicialComplex,
    boundary,
    carrier,
)
from .errors import (
    GableError,
    InternalConsistencyError,
    InvariantViolation,
    PreconditionError,
)
from .groups import (
    FgAbelianGroup,
    GroupMorphism,
    InvariantFactors,
    cokernel_factors,
    invariant_factors,
    is_isomorphism,
    kernel,
)
from .homology import homology, induced_homology_map
from .intlinalg import IntMatrix, smith_normal_form
from .limits import (
    InverseSystem,
    LimitElement,
    inverse_limit,
    restricted_limit_compare,
)
from .posets import FinitePoset, cofinality_class
from .subdivision import (
    RetractionResult,
    SubdivisionResult,
    barycentric_subdivision,
    classify_simplex,
    cone_pair,
    is_full,
    retract_point,
    subdivision_partition_check,
)
from .shuffle import (
    GableChain,
    GableComplex,
    LatticePath,
    OrbitSimplex,
    ProductChain,
    cross,
    enumerate_paths,
    product_boundary,
    product_complex,
    quotient_project,
)
from .roof import (
    DiagonalRegion,
    RoofFamily,
    TermList,
    fundamental_cycle,
    fundamental_roof_check,
    relative_cycle_class,
    representative_independence_check,
    roof,
    roof_family,
    touches_diagonal,
)
from .nerve import (
    CoverPair,
    CoverTower,
    GroundPair,
    NervePair,
    RefinementWitness,
    ball_cover,
    cech_homology,
    common_refinement,
    nerve,
    projection,
)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Finite 2-Segal sets: builders, Segal checks, Hall algebras and the S-construction."""
from .doublecat import (
    DoubleCategory,
    check_pointed,
    check_stable,
    compose_squares_h,
    compose_squares_v,
    counit_comparison,
    p_construction,
    s_construction,
    unit_comparison,
    validate_double_category,
    w2,
)
from .graphs import Multigraph, build_XG, subgraphs
from .hall import HallAlgebra, check_associative, check_commutative, check_unital, export_table, hall_algebra, multiply
from .kernels import BACKEND
from .nerves import (
    FiniteCategory,
    PartialMonoid,
    category_from_1segal,
    nerve_category,
    nerve_partial_monoid,
)
from .segal import (
    Triangulation,
    enumerate_triangulations,
    path_space_criterion_check,
    path_space_left,
    path_space_right,
    segal1_check,
    segal1_map,
    segal2_check,
    segal2_map,
)
from .simplicial import (
    MonotoneMap,
    SimplexId,
    TruncatedSimplicialSet,
    apply_operator,
    levelwise_isomorphic,
    spine,
    standard_simplex,
    validate,
)
from .trees import RootedTree, admissible_subforests, build_XT, lower_subtrees

__version__ = "0.1.0"

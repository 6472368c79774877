"""Finite reflection groups of O(3) and how well their orbits approximate the unit sphere."""
from .approx import (
    ChebyshevSolution,
    HausdorffReport,
    chebyshev_center,
    dihedral_bound,
    group_sphere_distance,
    hausdorff_to_sphere_exact,
    hausdorff_to_sphere_sampled,
    optimal_scale,
)
from .catalog import build_catalog, reproduce_catalog, theorem_check
from .coxeter import (
    CoxeterSymbol,
    FiniteGroup,
    GeneratorSet,
    build_generators,
    generate_group,
    orbit,
    rotation_subgroup,
    stabilizer_order,
    verify_presentation,
)
from .domain import (
    FundamentalCone,
    SphericalTriangle,
    check_dirichlet,
    check_same_side,
    fold_to_domain,
    fundamental_triangle,
    in_fundamental_domain,
)
from .geom import Ball, circumcenter_in_plane, compose, min_enclosing_ball, reflect_normal

__version__ = "0.1.0"

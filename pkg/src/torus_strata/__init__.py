"""Exact combinatorics of torus actions: hypersimplices, Plücker strata,
admissible families, and orbit-space models."""

__version__ = "0.1.0"

from .exact import GaussianRational, hermite_normal_form, integer_kernel, rational_rank
from .polytope import (
    LatticePolytope,
    contains,
    convex_hull,
    faces,
    hypersimplex,
    minkowski_sum,
    permutahedron,
)
from .grassmann import (
    GrassmannPoint,
    PlueckerVector,
    Stratum,
    SupportSet,
    admissible_polytope,
    g42_catalog,
    g42_family,
    g42_parameter,
    moment,
    orbit_equivalent,
    plucker_relation_check,
    pluecker,
    realizable,
    stabilizer,
    stratum,
    support,
)
from .complex import (
    AdmissibleFamily,
    FaceClosureError,
    build_complex,
    cortege,
    hausdorff_predicate,
    is_exceptional_point,
    is_regular_value,
    local_product_check,
    specialization_order,
)
from .models import (
    OrbitSpaceModel,
    QuasitoricModel,
    SphereModel,
    f3_family,
    cp5_family,
    join_model_check,
    quasitoric_validate,
    sphere_classify,
)
from .scenarios import cw_vs_cq_scenario, gs73_scenario, join_scenarios

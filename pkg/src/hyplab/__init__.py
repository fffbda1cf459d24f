"""Desk-scale laboratory for hyperboloid-model geometry and group constructions."""

__version__ = "0.1.0"

from .boundary import (
    LimitSetSample,
    busemann,
    busemann_limit_oracle,
    chordal,
    directed_hausdorff,
    f_min,
    gromov_limit_oracle,
    gromov_product,
    hausdorff_distance,
    horospherical_audit,
    project_to_boundary,
    radial_audit,
)
from .embedding import (
    EmbeddingResult,
    embed_tree_ball,
    embed_vertices,
    embedding_coboundedness,
    extend_isometry,
    gram_matrix,
    lorentz_factorize,
    minimal_subspace_restrict,
)
from .freegroup import (
    Word,
    TreeMap,
    apply,
    ball,
    conjugate_intersection_probe,
    edge_audit,
    gamma,
    homomorphy_probe,
    left_translation,
    tree_dist,
    word_concat,
)
from .groups import (
    GroupSpec,
    OrbitSample,
    build_h4_example,
    coboundedness_audit,
    dirichlet_membership,
    discreteness_audit,
    enumerate_ball,
    fixed_point_sample,
    limit_set_sample,
    normal_closure_family,
    ping_pong_certificate,
    schottky_h2,
)
from .minkowski import (
    GeometryError,
    HPoint,
    IdealPoint,
    Isometry,
    basepoint,
    dist,
    geodesic_point,
    mink_inner,
    minkowski_metric,
    parabolic_h2,
    rotation_fixing_subspace,
    translation_along,
    translation_length,
)
from .scenarios import (
    ScenarioReport,
    scenario_h4,
    scenario_nonrigidity,
    scenario_normal_subgroup,
)

__all__ = [name for name in dir() if not name.startswith("_")]

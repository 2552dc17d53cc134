"""Discrete four-vertex machinery for space and spherical polygons.

Core objects: space polygons, their spherical tangent indicatrices, and
the sign sequences that count flattenings/inflections.  The package
decides balanced position and simplicity, lifts balanced spherical
polygons back to space polygons, reduces polygons vertex-by-vertex to a
quadruple with a verified trace, and certifies all of those guarantees
over randomized instances.
"""

__version__ = "0.1.0"

from .cones import (
    ConeCertificate,
    HemisphereWitness,
    caratheodory_cone,
    closed_hemisphere_witness,
    cone_membership,
    four_point_characterization,
    is_balanced,
    nonessential_vertices,
)
from .applications import (
    MobiusReport,
    RegionAreas,
    TennisBallReport,
    is_centrally_symmetric,
    is_planar,
    mobius_check,
    region_areas,
    tennis_ball_check,
)
from .lifting import LiftWeights, lift, lift_weights
from .polygons import (
    EpsilonSequence,
    SpacePolygon,
    SphericalPolygon,
    count_sign_changes,
    epsilon_sequence,
    flattenings,
    is_generic,
    perturb_to_general_position,
    spherical_inflections,
    tangent_indicatrix,
)
from .predicates import Sign, det3, orientation, same_side
from .reduction import (
    ReductionStep,
    ReductionTrace,
    deletion_delta,
    pick_reduction_vertex,
    reduce_to_base,
)
from .harness import (
    CertifyReport,
    Finding,
    GeneratorConfig,
    certify_all,
    gen_balanced_simple,
    gen_segre_space_polygon,
    oracle_arc_intersection,
    replay_finding,
)
from .simplicity import (
    SphericalTriangulation,
    arcs_intersect,
    delete_vertex,
    good_vertices,
    is_simple,
    minor_arcs_cross,
    triangulate_regions,
)

__all__ = [
    "__version__",
    "Sign", "det3", "orientation", "same_side",
    "SpacePolygon", "SphericalPolygon", "EpsilonSequence",
    "tangent_indicatrix", "is_generic", "epsilon_sequence",
    "count_sign_changes", "spherical_inflections", "flattenings",
    "perturb_to_general_position",
    "HemisphereWitness", "ConeCertificate", "closed_hemisphere_witness",
    "is_balanced", "cone_membership", "four_point_characterization",
    "caratheodory_cone", "nonessential_vertices",
    "arcs_intersect", "minor_arcs_cross", "is_simple", "delete_vertex",
    "good_vertices", "triangulate_regions", "SphericalTriangulation",
    "LiftWeights", "lift_weights", "lift",
    "ReductionStep", "ReductionTrace", "pick_reduction_vertex",
    "deletion_delta", "reduce_to_base",
    "RegionAreas", "TennisBallReport", "MobiusReport",
    "region_areas", "tennis_ball_check", "is_centrally_symmetric",
    "mobius_check", "is_planar",
    "GeneratorConfig", "Finding", "CertifyReport", "certify_all",
    "gen_balanced_simple", "gen_segre_space_polygon",
    "oracle_arc_intersection", "replay_finding",
]

"""Homothety centers, Menelaus-style products, and hyperplane checks.

The package verifies one geometric fact in three guises: for n+1
pairwise homothetic convex sets in n-space all pairwise homothety
centers lie on a hyperplane, the signed-ratio criterion that makes the
statement an iff, and the analogue on the sphere and in hyperbolic
space.  Two numeric backends share the code path: floats guarded by
tolerances, and exact rationals where every threshold is literally zero.
"""

from .errors import (
    AntipodalPoints,
    ArcOrderViolation,
    BackendMixError,
    CoincidesWithVertex,
    DegenerateConfiguration,
    DegenerateShape,
    DimensionMismatch,
    EqualWeights,
    GenerationError,
    GeometryError,
    InfeasibleRegion,
    InvalidInput,
    NearParallel,
    NonCoplanar,
    NonUniqueHomothety,
    NotHomothetic,
    NotOnLine,
    NotSpacelike,
    NotTimelike,
    RatioNotGreaterThanOne,
    ScenarioError,
    UnboundedShape,
)
from .kernel import DEFAULT_TOLERANCE, Hyperplane, Tolerance, fit_hyperplane
from .menelaus import (
    EdgePointSet,
    Homothety,
    MenelausReport,
    all_pairs,
    edge_points_from_weights,
    menelaus_products,
    monge_hyperplane_from_weights,
    signed_ratio,
)
from .monge import MongeConfig, MongeReport, cross_ratio_consistency, run_monge
from .noneuclid import (
    HYPERBOLIC,
    SPHERICAL,
    XnConfig,
    XnHyperplane,
    XnMenelausReport,
    XnPoint,
    geodesic_distance,
    hyperboloid_point,
    sphere_point,
    verify_prop2,
    xn_edge_points_from_weights,
    xn_homothety_image,
    xn_lambda,
)
from .shapes import (
    Ball,
    Halfspace,
    HalfspaceSet,
    VertexSet,
    apply_homothety,
    detect_homothety,
    size_measure,
)
from .generators import (
    GenSpec,
    SplitMix64,
    gen_ball_config,
    gen_menelaus_case,
    gen_rational_case,
    gen_vertex_config,
)
from .scenario import (
    EUCLIDEAN,
    Scenario,
    atomic_write_json,
    parse_scenario,
    scenario_to_object,
    verify_scenario,
)
from .figure import render_figure

__version__ = "0.1.0"

__all__ = [
    "AntipodalPoints",
    "ArcOrderViolation",
    "BackendMixError",
    "Ball",
    "CoincidesWithVertex",
    "DEFAULT_TOLERANCE",
    "DegenerateConfiguration",
    "DegenerateShape",
    "DimensionMismatch",
    "EUCLIDEAN",
    "EdgePointSet",
    "EqualWeights",
    "GenSpec",
    "GenerationError",
    "GeometryError",
    "HYPERBOLIC",
    "Halfspace",
    "HalfspaceSet",
    "Homothety",
    "Hyperplane",
    "InfeasibleRegion",
    "InvalidInput",
    "MenelausReport",
    "MongeConfig",
    "MongeReport",
    "NearParallel",
    "NonCoplanar",
    "NonUniqueHomothety",
    "NotHomothetic",
    "NotOnLine",
    "NotSpacelike",
    "NotTimelike",
    "RatioNotGreaterThanOne",
    "SPHERICAL",
    "Scenario",
    "ScenarioError",
    "SplitMix64",
    "Tolerance",
    "UnboundedShape",
    "VertexSet",
    "XnConfig",
    "XnHyperplane",
    "XnMenelausReport",
    "XnPoint",
    "all_pairs",
    "apply_homothety",
    "atomic_write_json",
    "cross_ratio_consistency",
    "detect_homothety",
    "edge_points_from_weights",
    "fit_hyperplane",
    "gen_ball_config",
    "gen_menelaus_case",
    "gen_rational_case",
    "gen_vertex_config",
    "geodesic_distance",
    "hyperboloid_point",
    "menelaus_products",
    "monge_hyperplane_from_weights",
    "parse_scenario",
    "render_figure",
    "run_monge",
    "scenario_to_object",
    "signed_ratio",
    "size_measure",
    "sphere_point",
    "verify_prop2",
    "verify_scenario",
    "xn_edge_points_from_weights",
    "xn_homothety_image",
    "xn_lambda",
]

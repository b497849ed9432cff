"""Exact-arithmetic toolkit for toric varieties presented by Cox data.

A presentation is a weight matrix together with an irrelevant monomial
ideal; the package turns such data into fans, singularity charts, variation
of GIT chambers and birational surgery (blow-ups, flips, divisorial
contractions), all over arbitrary-precision integers.
"""

from __future__ import annotations

from .errors import (
    CoxforgeError,
    FormatError,
    InvalidArgumentError,
    MustStandardizeFirstError,
    NotQuasiProjectiveError,
    OutsideSupportError,
    RankError,
    SolveNotFoundError,
    UnsupportedFeatureError,
)
from .intlattice import (
    IntMatrix,
    UnimodularWitness,
    det,
    hnf_canonical,
    hnf_transform,
    integer_inverse,
    is_standard,
    kernel_basis,
    minor_gcd,
    primitive_vector,
    rank,
    sl_lift_mod_p,
    smith_diagonal,
    smith_transforms,
    standardize,
    standardize_with_steps,
    unimodular_row_equivalent,
)
from .coxpres import (
    ColumnScale,
    CoxPresentation,
    MonomialIdeal,
    RowDivide,
    RowRescaleRational,
    RowTransform,
    WellFormingCertificate,
    coarse_moduli,
    is_well_formed,
    minimal_transversals,
    presentations_equivalent,
    verify_certificate,
    well_form,
    wps_well_form,
)
from .galefan import (
    Fan,
    WeightedBundleSpec,
    fan_from_presentation,
    gale_dual,
    irrelevant_ideal_from_fan,
    star_subdivision,
    weighted_bundle_fan,
    weights_from_rays,
)
from .singular import (
    ChartReport,
    QuotientSingularity,
    classify_type,
    fixed_point_type,
    is_terminal_cyclic,
    normalize_type,
    weighted_bundle_charts,
)
from .vgit import (
    Chamber,
    EndBehavior,
    GameDiagram,
    WallCrossing,
    anticanonical_in_moving_interior,
    chambers_rank2,
    cones_rank2,
    end_behavior,
    graded_ring_generators,
    model_at_chamber,
    monomial_string,
    two_ray_game,
    wall_crossing,
)
from .blowup import (
    BlowupSpec,
    CIData,
    Equation,
    blow_up_weighted_bundle,
    blow_up_wps,
    blowup_map_description,
    bundle_spec_of,
    discrepancy,
    pullback_order,
    solve_exceptional_weight,
)
from .formats import (
    BlowupJob,
    parse_blowup_job,
    parse_fan,
    parse_matrix,
    parse_presentation,
    serialize_blowup_job,
    serialize_fan,
    serialize_matrix,
    serialize_presentation,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "CoxforgeError",
    "FormatError",
    "InvalidArgumentError",
    "MustStandardizeFirstError",
    "NotQuasiProjectiveError",
    "OutsideSupportError",
    "RankError",
    "SolveNotFoundError",
    "UnsupportedFeatureError",
    # integer lattice layer
    "IntMatrix",
    "UnimodularWitness",
    "det",
    "hnf_canonical",
    "hnf_transform",
    "integer_inverse",
    "is_standard",
    "kernel_basis",
    "minor_gcd",
    "primitive_vector",
    "rank",
    "sl_lift_mod_p",
    "smith_diagonal",
    "smith_transforms",
    "standardize",
    "standardize_with_steps",
    "unimodular_row_equivalent",
    # presentations and well-forming
    "MonomialIdeal",
    "CoxPresentation",
    "RowTransform",
    "ColumnScale",
    "RowDivide",
    "RowRescaleRational",
    "WellFormingCertificate",
    "is_well_formed",
    "well_form",
    "wps_well_form",
    "coarse_moduli",
    "verify_certificate",
    "presentations_equivalent",
    "minimal_transversals",
    # Gale duality and fans
    "Fan",
    "WeightedBundleSpec",
    "gale_dual",
    "weights_from_rays",
    "weighted_bundle_fan",
    "irrelevant_ideal_from_fan",
    "fan_from_presentation",
    "star_subdivision",
    # quotient singularities
    "QuotientSingularity",
    "ChartReport",
    "weighted_bundle_charts",
    "fixed_point_type",
    "normalize_type",
    "is_terminal_cyclic",
    "classify_type",
    # variation of GIT
    "Chamber",
    "WallCrossing",
    "EndBehavior",
    "GameDiagram",
    "chambers_rank2",
    "model_at_chamber",
    "wall_crossing",
    "cones_rank2",
    "graded_ring_generators",
    "end_behavior",
    "two_ray_game",
    "anticanonical_in_moving_interior",
    "monomial_string",
    # blow-ups and discrepancies
    "BlowupSpec",
    "bundle_spec_of",
    "Equation",
    "CIData",
    "blow_up_weighted_bundle",
    "blow_up_wps",
    "blowup_map_description",
    "pullback_order",
    "discrepancy",
    "solve_exceptional_weight",
    # file formats
    "parse_matrix",
    "serialize_matrix",
    "parse_presentation",
    "serialize_presentation",
    "parse_fan",
    "serialize_fan",
    "BlowupJob",
    "parse_blowup_job",
    "serialize_blowup_job",
]

"""Exact arithmetic for cones of high-contact lines on hypersurfaces.

Everything runs over prime fields F_q with q larger than the degree of the
hypersurface, so Taylor coefficients and polar forms stay exact integers
mod q and no floating point enters any verification path.
"""

from .contact import (
    INFINITE,
    ConeIdeal,
    Hypersurface,
    NormalizedChart,
    SingularPointError,
    cone_ideal,
    lambda_section,
    line_contact_order,
    normalize_chart,
    predicted_taylor_form,
    tangent_hyperplane,
    tangent_section_multiplicity,
    taylor_form,
    taylor_forms,
)
from .grobner import (
    BudgetExhausted,
    EmptinessCertificate,
    Ideal,
    SlicedDimension,
    certify_projective_emptiness,
    groebner_basis,
    hilbert_function,
    krull_dimension,
    projective_dimension,
    projective_dimension_sliced,
)
from .invariants import (
    BoundReport,
    HypothesisViolation,
    ModuliDims,
    TableRow,
    bound_report,
    conngon_bounds,
    conngon_table,
    covgon_bounds,
    exceptional_n,
    expected_cone_dim,
    family_dim_lower_bounds,
    fano_max_h,
    irr_bounds,
    lambda_canonical_twist,
    moduli_dimensions,
)
from .polar import (
    NOT_FOUND_OVER_Fq,
    PolarSystem,
    check_reciprocity,
    connecting_dimension,
    connecting_vertex_ideal,
    find_connecting_vertex,
    polar_intersection_ideal,
    polar_poly,
    polar_system,
)
from .polyring import Polynomial, PrimeField, ProjPoint, parse_poly, restrict_to_line
from .sampler import (
    CampaignConfig,
    CampaignReport,
    child_seed,
    multiplicity_check,
    random_hypersurface,
    sample_point_on_X,
    verify_connecting_lemma,
    verify_dimension_theorem,
    verify_multiplicity_lemma,
    verify_projection_degree,
)
from .solvers import (
    DegenerateSystem,
    binary_form_roots,
    exhaustive_projective_solutions,
    quaternary_triple_solutions,
    ternary_pair_solutions,
    ternary_system_solutions,
    vectorized_projective_solutions,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BudgetExhausted",
    "CampaignConfig",
    "CampaignReport",
    "ConeIdeal",
    "DegenerateSystem",
    "EmptinessCertificate",
    "Hypersurface",
    "HypothesisViolation",
    "INFINITE",
    "Ideal",
    "ModuliDims",
    "NOT_FOUND_OVER_Fq",
    "NormalizedChart",
    "PolarSystem",
    "Polynomial",
    "PrimeField",
    "ProjPoint",
    "SingularPointError",
    "SlicedDimension",
    "TableRow",
    "binary_form_roots",
    "bound_report",
    "certify_projective_emptiness",
    "check_reciprocity",
    "child_seed",
    "cone_ideal",
    "conngon_bounds",
    "conngon_table",
    "connecting_dimension",
    "connecting_vertex_ideal",
    "covgon_bounds",
    "exceptional_n",
    "exhaustive_projective_solutions",
    "expected_cone_dim",
    "family_dim_lower_bounds",
    "fano_max_h",
    "find_connecting_vertex",
    "groebner_basis",
    "hilbert_function",
    "irr_bounds",
    "krull_dimension",
    "lambda_canonical_twist",
    "lambda_section",
    "line_contact_order",
    "moduli_dimensions",
    "multiplicity_check",
    "normalize_chart",
    "parse_poly",
    "polar_intersection_ideal",
    "polar_poly",
    "polar_system",
    "predicted_taylor_form",
    "projective_dimension",
    "projective_dimension_sliced",
    "quaternary_triple_solutions",
    "random_hypersurface",
    "restrict_to_line",
    "sample_point_on_X",
    "tangent_hyperplane",
    "tangent_section_multiplicity",
    "taylor_form",
    "taylor_forms",
    "ternary_pair_solutions",
    "ternary_system_solutions",
    "vectorized_projective_solutions",
    "verify_connecting_lemma",
    "verify_dimension_theorem",
    "verify_multiplicity_lemma",
    "verify_projection_degree",
]

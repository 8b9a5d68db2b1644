"""Exact tooling for ordered L-intersecting set families.

Three layers: family predicates, bounds, and extremal generators
(:mod:`lintersect.families`); integer multilinear polynomial certificates
verified by exact rank (:mod:`lintersect.polycert`); and exhaustive
branch-and-bound search with an independent enumeration oracle
(:mod:`lintersect.search`).  The ``lintersect`` console script fronts all
three.
"""

from .families import (
    FamilyFormatError,
    IntersectionSpec,
    IntersectionVerdict,
    NotOrderableError,
    OrderingFailure,
    OrderingWitness,
    SetFamily,
    bound_general,
    bound_ordered,
    check_ordered_indexing,
    family_from_json,
    family_from_text,
    family_to_json,
    family_to_text,
    gen_sharp_mixed,
    gen_sharp_no_apex,
    intersection_profile,
    is_l_intersecting,
    load_family,
    make_ordered,
    mask_elements,
    mask_from_elements,
    parse_family,
    save_family,
)
from .polycert import (
    CertificateReport,
    CertificateSizeError,
    MultilinearPoly,
    NotLIntersectingError,
    NotOrderedError,
    TriangularCheck,
    apex_difference_poly,
    auxiliary_supports,
    certify,
    char_vector,
    coefficient_matrix,
    exact_rank,
    intersection_poly,
    linear_form,
    matrix_to_text,
    monomial_basis,
    triangular_check,
)
from .search import (
    BoundViolationError,
    CompatGraph,
    SearchCapError,
    SearchResult,
    SweepEntry,
    SweepReport,
    build_graph,
    exhaustive_oracle,
    export_dimacs,
    max_ordered_family,
    sweep_verify,
)

__version__ = "0.1.0"

__all__ = [
    "BoundViolationError",
    "CertificateReport",
    "CertificateSizeError",
    "CompatGraph",
    "FamilyFormatError",
    "IntersectionSpec",
    "IntersectionVerdict",
    "MultilinearPoly",
    "NotLIntersectingError",
    "NotOrderableError",
    "NotOrderedError",
    "OrderingFailure",
    "OrderingWitness",
    "SearchCapError",
    "SearchResult",
    "SetFamily",
    "SweepEntry",
    "SweepReport",
    "TriangularCheck",
    "apex_difference_poly",
    "auxiliary_supports",
    "bound_general",
    "bound_ordered",
    "build_graph",
    "certify",
    "char_vector",
    "check_ordered_indexing",
    "coefficient_matrix",
    "exact_rank",
    "exhaustive_oracle",
    "export_dimacs",
    "family_from_json",
    "family_from_text",
    "family_to_json",
    "family_to_text",
    "gen_sharp_mixed",
    "gen_sharp_no_apex",
    "intersection_poly",
    "intersection_profile",
    "is_l_intersecting",
    "linear_form",
    "load_family",
    "make_ordered",
    "mask_elements",
    "mask_from_elements",
    "matrix_to_text",
    "max_ordered_family",
    "monomial_basis",
    "parse_family",
    "save_family",
    "sweep_verify",
    "triangular_check",
]

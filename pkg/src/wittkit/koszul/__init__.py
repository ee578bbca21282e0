"""Graded complexes over polynomial rings and the Koszul forms b_n."""

from wittkit.koszul.complexes import (
    ChainMap,
    ComplexError,
    GradedComplex,
    cone,
    double_dual_map,
    dual,
    identity_map,
    restrict,
    tensor,
    unit_complex,
)
from wittkit.koszul.contraction import (
    ContractionError,
    contraction_null_homotopy,
    fiber_homology_at_origin,
    verify_homotopy,
)
from wittkit.koszul.forms import (
    FormedComplex,
    adjoint,
    b_complex,
    beta,
    is_form_chain_map,
    is_symmetric,
    koszul_product,
    swap_map,
    tensor_forms,
    unit_form,
)
from wittkit.koszul.homology import graded_homology, graded_homology_direct, graded_homology_range
from wittkit.koszul.poly import GF, QQ, Poly, PolyRing, field_from_name
from wittkit.koszul.verify import report, verify_b

__all__ = [
    "ChainMap", "ComplexError", "GradedComplex", "cone", "double_dual_map", "dual", "identity_map",
    "restrict", "tensor", "unit_complex", "ContractionError", "contraction_null_homotopy",
    "fiber_homology_at_origin", "verify_homotopy", "FormedComplex", "adjoint", "b_complex", "beta",
    "is_form_chain_map", "is_symmetric", "koszul_product", "swap_map", "tensor_forms", "unit_form",
    "graded_homology", "graded_homology_direct", "graded_homology_range", "GF", "QQ", "Poly",
    "PolyRing", "field_from_name", "report", "verify_b",
]

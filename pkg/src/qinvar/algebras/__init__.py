"""Algebra descriptors, PBW straightening, Koszul duals and parameter tests."""

from .descriptors import (
    Algebra,
    ExteriorAlgebra,
    GorensteinData,
    QuantExteriorAlgebra,
    QuantumWeylAlgebra,
    QuotientAlgebra,
    SkewPolyAlgebra,
    TensorAlgebra,
    WeylAlgebra,
    describe,
    gorenstein_data,
    hilbert_series,
)
from .predicates import is_normal_degree1, koszul_dual, p_distinct, p_distinct_strict, q_generic
from .rewriting import (
    evaluate_under,
    format_monomial,
    format_nf,
    graded_basis,
    mono_times_gen,
    nf_mul,
    nf_of_relation,
    nf_word,
    straighten,
)

__all__ = [
    "Algebra", "ExteriorAlgebra", "GorensteinData", "QuantExteriorAlgebra",
    "QuantumWeylAlgebra", "QuotientAlgebra", "SkewPolyAlgebra", "TensorAlgebra",
    "WeylAlgebra", "describe", "evaluate_under", "format_monomial", "format_nf",
    "gorenstein_data", "graded_basis", "hilbert_series", "is_normal_degree1",
    "koszul_dual", "mono_times_gen", "nf_mul", "nf_of_relation", "nf_word",
    "p_distinct", "p_distinct_strict", "q_generic", "straighten",
]

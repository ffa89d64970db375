"""Finite gyrogroups from Cayley tables: axioms, doubling, normal subgyrogroups."""
from .core import (
    CayleyTable,
    FiniteGyrogroup,
    Permutation,
    ValidationReport,
    Violation,
    construct,
    evaluate,
    gyration,
    is_associative,
    is_automorphism,
    is_degenerate,
    left_inverse,
    verify_axioms,
)
from .doubling import (
    Classification,
    DoubledGyrogroup,
    check_corollary,
    classify_normal,
    classify_subgyrogroup,
    double,
    generate_normal_candidates,
    split,
)
from .subalgebra import (
    CosetFamily,
    ElementSubset,
    GyroHomomorphism,
    closure,
    enumerate_normals,
    enumerate_subgyrogroups,
    induced,
    is_normal,
    is_subgyrogroup,
    kernel,
    left_cosets,
    quotient,
    set_product,
    subgyrogroups_by_generators,
)
from .catalog import fixture, golden_normals

__version__ = "0.1.0"

__all__ = [
    "CayleyTable",
    "Classification",
    "CosetFamily",
    "DoubledGyrogroup",
    "ElementSubset",
    "FiniteGyrogroup",
    "GyroHomomorphism",
    "Permutation",
    "ValidationReport",
    "Violation",
    "check_corollary",
    "classify_normal",
    "classify_subgyrogroup",
    "closure",
    "construct",
    "double",
    "enumerate_normals",
    "enumerate_subgyrogroups",
    "evaluate",
    "fixture",
    "generate_normal_candidates",
    "golden_normals",
    "gyration",
    "induced",
    "is_associative",
    "is_automorphism",
    "is_degenerate",
    "is_normal",
    "is_subgyrogroup",
    "kernel",
    "left_cosets",
    "left_inverse",
    "quotient",
    "set_product",
    "split",
    "subgyrogroups_by_generators",
    "verify_axioms",
]

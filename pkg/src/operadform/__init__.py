"""Exact finite-truncation computations with the operads around
Drinfeld-Kohno algebras, parenthesized braids and the Gerstenhaber operad."""

from .kernel import Permutation, SparseMatrix, nullspace_basis, quotient_basis, rank
from .dk_algebra import NCPolynomial, degree_basis, insert, multiply, relators
from .lie_dk import ce_homology, g_basis
from .bar_complex import generation_check, homology_basis, induced_insert
from .gerstenhaber import basis as e2_basis, k_map, normal_form
from .braids_pab import BraidWord, PaBMorphism, ParenPerm, cable_insert, compose_morphisms
from .associator import AssociatorSeries, braid_relation_check, phi_evaluate, solve, well_definedness_defects

__version__ = "0.1.0"

__all__ = [
    "Permutation",
    "SparseMatrix",
    "nullspace_basis",
    "quotient_basis",
    "rank",
    "NCPolynomial",
    "degree_basis",
    "insert",
    "multiply",
    "relators",
    "ce_homology",
    "g_basis",
    "generation_check",
    "homology_basis",
    "induced_insert",
    "e2_basis",
    "k_map",
    "normal_form",
    "BraidWord",
    "PaBMorphism",
    "ParenPerm",
    "cable_insert",
    "compose_morphisms",
    "AssociatorSeries",
    "braid_relation_check",
    "phi_evaluate",
    "solve",
    "well_definedness_defects",
]

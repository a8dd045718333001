"""
Exact computations with Omega-indexed H-pseudoalgebras over the rationals:
finite cocommutative Hopf algebras, quotient tensor spaces H^{(x)n} (x)_H M,
identity checkers, constructions between varieties, the Omega-cochain complex,
and truncated formal deformations.
"""

from .exactla import Q, RowReducer
from .hopf import (make_group_algebra, make_hopf, make_semigroup, make_substructure, omega2,
                   trivial_hopf, trivial_semigroup, verify_hopf, cyclic_table)
from .hspaces import build_quotient, free_module, make_module, trivial_module
from .pseudo import (adjoint_bimodule, check_bimodule, check_morphism, check_operator_family,
                     check_variety, make_bimodule, make_morphism, make_operator_family,
                     make_structure)
from .cohomology import cochain_basis, cohomology_rank, verify_complex
from .deform import (check_jet, first_order_equivalent, hat_compose, make_jet, obstruction,
                     poisson_extract, rigidity_report)
from .definition import DanglingReference, ParseError, load, loads

__version__ = "0.1.0"

__all__ = [
    "DanglingReference",
    "ParseError",
    "Q",
    "RowReducer",
    "adjoint_bimodule",
    "build_quotient",
    "check_bimodule",
    "check_jet",
    "check_morphism",
    "check_operator_family",
    "check_variety",
    "cochain_basis",
    "cohomology_rank",
    "cyclic_table",
    "first_order_equivalent",
    "free_module",
    "hat_compose",
    "load",
    "loads",
    "make_bimodule",
    "make_group_algebra",
    "make_hopf",
    "make_jet",
    "make_module",
    "make_morphism",
    "make_operator_family",
    "make_semigroup",
    "make_structure",
    "make_substructure",
    "obstruction",
    "omega2",
    "poisson_extract",
    "rigidity_report",
    "trivial_hopf",
    "trivial_module",
    "trivial_semigroup",
    "verify_complex",
    "verify_hopf",
]

"""Exact computational kernel for quantum monadic and cylindric algebras.

Subpackages cover finite ortholattices and their quantifiers, cylindric
families with diagonals, tensor-power subspace lattices over the Gaussian
rationals, matrix star-algebras with trace expectations, and relational
frame semantics.  All arithmetic is exact; every identity claimed by the
library is decided, not approximated.
"""

__version__ = "0.1.0"

from .gq import GQ, parse_gq, format_gq
from .lattice import (FiniteOL, LatticeError, SizeGuardError,
                      ol_from_covers, ol_from_leq, boolean_algebra, mo, o6,
                      greechie_lattice, validate_ortholattice,
                      check_orthomodular)
from .quantifiers import (UnaryMap, check_quantifier,
                          quantifier_from_subalgebra, fixpoint_subalgebra,
                          find_q6_counterexample)
from .cylindric import CylindricStructure, check_cylindric
from .subspaces import Subspace, TensorLayout, exists_factor, diagonal
from .matrixalg import (StarAlgebra, build_algebra, commutant,
                        conditional_expectation, exists_alg)
from .frames import Orthoframe, closed_set_lattice, check_monadic_frame

__all__ = [
    "GQ", "parse_gq", "format_gq",
    "FiniteOL", "LatticeError", "SizeGuardError", "ol_from_covers",
    "ol_from_leq", "boolean_algebra", "mo", "o6", "greechie_lattice",
    "validate_ortholattice", "check_orthomodular",
    "UnaryMap", "check_quantifier", "quantifier_from_subalgebra",
    "fixpoint_subalgebra", "find_q6_counterexample",
    "CylindricStructure", "check_cylindric",
    "Subspace", "TensorLayout", "exists_factor", "diagonal",
    "StarAlgebra", "build_algebra", "commutant", "conditional_expectation",
    "exists_alg",
    "Orthoframe", "closed_set_lattice", "check_monadic_frame",
]

"""Exhaustive checking of rigidity-type properties for finite modules over finite rings."""
from .constructions import (
                   VnDescriptor,
                   direct_product,
                   extend_endo_vn,
                   make_example16_module,
                   make_jordan_ring,
                   make_negating_endo,
                   make_prime_field,
                   make_upper_triangular,
                   make_vn_module,
                   make_vn_ring,
                   make_zmod,
)
from .core import (
                   FiniteModule,
                   FiniteRing,
                   PropertyVerdict,
                   RingEndo,
                   Submodule,
                   enumerate_submodules,
                   identity_endo,
                   quotient_module,
                   regular_module,
                   submodule_closure,
                   validate_endo,
                   validate_module,
                   validate_ring,
                   validate_submodule,
)
from .errors import AxiomViolation, RigidLabError
from .kernels import BACKEND
from .properties import check, check_alpha_annihilation, find_idempotents

__version__ = "0.1.0"

__all__ = [
                   "BACKEND",
                   "AxiomViolation",
                   "FiniteModule",
                   "FiniteRing",
                   "PropertyVerdict",
                   "RigidLabError",
                   "RingEndo",
                   "Submodule",
                   "VnDescriptor",
                   "check",
                   "check_alpha_annihilation",
                   "direct_product",
                   "enumerate_submodules",
                   "extend_endo_vn",
                   "find_idempotents",
                   "identity_endo",
                   "make_example16_module",
                   "make_jordan_ring",
                   "make_negating_endo",
                   "make_prime_field",
                   "make_upper_triangular",
                   "make_vn_module",
                   "make_vn_ring",
                   "make_zmod",
                   "quotient_module",
                   "regular_module",
                   "submodule_closure",
                   "validate_endo",
                   "validate_module",
                   "validate_ring",
                   "validate_submodule",
]

"""frobkit: exact computer algebra for Frobenius-semilinear operators over
finite fields — Cartier modules, gamma-sheaves, the dualizing twist between
them, Koszul pullbacks along regular sequences, nilpotence and crystal tests,
and solution spaces at rational points."""

from .field import FieldElement, FieldSpec, frobenius, frobenius_root
from .polyring import (BudgetExceededError, FreeVector, GroebnerBasis,
                       ParseError, Polynomial, QuotientContext, RingContext,
                       buchberger, format_polynomial, format_vector,
                       ideal_quotient, is_regular_sequence, module_buchberger,
                       module_quotient, module_staircase, normal_form,
                       parse_polynomial, parse_vector, saturate,
                       submodule_equal)
from .frobenius import (FrobeniusDecomposition, VolumeForm, can_apply,
                        can_inverse_table, cartier_volume,
                        cartier_volume_by_decomposition, dual_basis_eval,
                        pth_root_decompose)
from .cartier import (CartierModule, InfiniteDimensionalError,
                      NilpotenceVerdict, SemilinearEndo, StableImageResult,
                      crystal_is_zero, hom_commuting, is_crystal_supported_on,
                      is_nilpotent, kappa_apply, kappa_power,
                      nil_isomorphism_test, restrict_to_principal_open,
                      semilinear_nilpotent, stable_image, to_semilinear,
                      validate_cartier_structure, volume_cartier_module)
from .gamma import (GammaIterate, GammaSheaf, frobenius_twist_root,
                    gamma_is_nilpotent, gamma_iterate, gamma_restrict_open,
                    gen_stable_dimension, twist_to_cartier, twist_to_gamma,
                    validate_gamma_structure)
from .koszul import (ClosedImmersion, TransitionMatrix, cartier_pullback,
                     check_pullback_twist_commutes, dualizing_module,
                     gamma_pullback, transition_factor)
from .solutions import (FiberDegenerationError, GuardExceededError,
                        RationalPoint, SolutionSpace, artin_schreier_kernel,
                        brute_force_solutions, enumerate_points, point_field,
                        solution_profile, solutions_at_point)

__version__ = "0.1.0"

"""Quasiconformal boundary extensions on the half-plane and disk.

A numerical library (and CLI) for the two-parameter shear-extension family
of boundary maps, the classical Beurling-Ahlfors and Douady-Earle extension
operators, closed-form and finite-difference dilatation analysis, and the
factorization of bi-Lipschitz line maps into certified near-identity pieces.
"""

from .errors import (DomainError, NonConvergence, NonTermination,
                     QCExtError, QuadratureFailure, StepOutOfDisk,
                     ToleranceFailure)
from .realmap import (Affine, BumpProfile, BUMP_SLOPE_MAX, Composition,
                      IdentityPlusBump, InverseMap, PowerIntegral, RealMap,
                      SampledMonotone, Tapered, bump_map, compose, identity,
                      inverse_map, invert_at, map_from_dict, map_from_file,
                      map_from_json, power_integral_map, sampled_monotone,
                      taper)
from .extensions import (ExtParams, act, extend_family, extend_ns,
                         family_extension, group_identity, group_inv,
                         group_mul, shear)
from .beurling_ahlfors import (BAConfig, ba_affine_naturality_residual,
                               extend_ba)
from .douady_earle import (CircleMap, MobiusAutomorphism, circle_map_from_dict,
                           compose_circle, de_defect, de_naturality_residual,
                           extend_de)
from .analysis import (CubicMap, DilatationReport, QuadraticWindowMap,
                       boundary_constant, boundary_residual,
                       compare_dilatation, cubic_map, dilatation_analytic,
                       dilatation_bound, dilatation_numeric, estimate_m,
                       half_plane_grid, homomorphism_residual, m_ratio,
                       pde_matrix, pde_residual, quadratic_window_map,
                       sigma_factor, sup_dilatation)
from .decompose import Factorization, chosen_eps, decompose_bilip, recompose

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

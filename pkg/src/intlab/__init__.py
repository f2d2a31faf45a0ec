"""Verification lab for the auto-Backlund solution families of the
potential KdV equation: jets, closed-form catalogs, residual scans,
Hirota bilinear checks, and finite-dimensional constrained flows."""

__version__ = "0.1.0"

from .jets import Jet, apply_function, extract_derivative, lift_constant, lift_variable
from .expr import (differentiate, evaluate, parse, simplify_basic, to_text)
from .fields import Field
from .sampling import Region, sample_points
from .reporting import ResidualReport
from .equations import (EQUATIONS, miura_identity_check, nonlocal_symmetry_sigma,
                        bilinear_symmetry_sigma_psi, point_symmetry_fields,
                        residual_at, scan)
from .bilinear import (BILINEAR_EQUATIONS, bilinear_residual, bilinear_scan,
                       hirota_D, second_hierarchy_chain_check)
from .catalog import (SeedTuple, bessel_family, cnoidal_family,
                      cnoidal_constructive, elliptic_constraints, field,
                      kdv_from_pkdv, levi_apply, negative_flow_solutions,
                      pii_reconstruct, psi1_lambda_field, rational_family,
                      seed_family)
from .flows import (FlowState, elliptic_W_check, integrate_F0, integrate_F1,
                    integrate_PII, integrate_riccati_bt, lax_cross_corner,
                    quadrature_G, reconstruct_and_check_kdv, soliton_state)
from .suites import run_suite, suite_names

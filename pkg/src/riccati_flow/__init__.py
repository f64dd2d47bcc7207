"""Riccati-type potential flows, Beltrami vorticity fields and their verification."""

from .assembly import (FlowSolution, PolynomialPotential, RiccatiIrrotational, TangentIrrotational,
                       UniformIrrotational, pressure, sample_grid, trkal_solution, velocity)
from .closed_forms import (algebraic_case_solution, bernoulli_case_solve, circle_solution,
                           elliptic_case_solve, riccati_coefficients, tangent_solution)
from .errors import (AdmissibilityError, BindingError, BoundaryEscape, DomainError, GridError,
                     PreconditionError, RiccatiFlowError, SingularityError)
from .export import emit_timeseries, write_fields_csv, write_vtk
from .gamma_constraints import GammaExponential, a_from_wy, constraint_residuals, grad_a_from_gamma
from .residual_verify import convergence_study, verify
from .riccati_core import (RiccatiState, Trajectory, VorticitySample, integrate, riccati_rhs,
                           stereographic_velocity)
from .stencils import Grid
from .vorticity_fields import BeltramiABC, PlaneMode, SphericalMode, VorticityFieldSpec, shear_mode

__version__ = "0.1.0"

"""Dopant-enhanced optomechanical coupling of membrane-in-the-middle cavities.

Subpackages and modules:

* :mod:`mitm_coupling.medium`: closed-form susceptibility of the driven
  three-level medium and the local-field (near dipole-dipole) enhancement.
* :mod:`mitm_coupling.lindblad`: brute-force steady-state solver of the
  master equation; the ground truth the closed form is adjudicated against.
* :mod:`mitm_coupling.optomech`: coupled-mode figures of merit for the
  membrane-in-the-middle cavity (frequency shift, linewidth change,
  couplings, coupling-decay ratio, quantum cooperativity).
* :mod:`mitm_coupling.sweep`: deterministic grid sweeps, gain-boundary
  extraction, strong-coupling region search and constrained maximisation.
* :mod:`mitm_coupling.cli`: the ``mitm`` command-line interface.
"""

__version__ = "0.1.0"

from .errors import (ConfigError, DegenerateSteadyState, GridTooLarge,  # noqa: F401
                     LasingThreshold, MitmError, NddPoleError,
                     NoConvergence, NoFeasiblePoint, PoleError,
                     SolverError, StepTooLarge, ThinMembraneViolation)
from .medium import (DopantSpec, LambdaDriveParams, Susceptibility,  # noqa: F401
                     chi_p_closed, chi_p_first_order, chi_p_variant,
                     gamma_from_dipole, ndd_transform, s0_from_density)
from .lindblad import (DensityMatrix, build_hamiltonian,  # noqa: F401
                       build_liouvillian, chi_p_numeric, steady_state,
                       time_evolve)

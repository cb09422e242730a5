"""Exception taxonomy.

The CLI maps these onto exit codes: configuration problems exit 2, solver
failures exit 3, case-study assertion failures exit 4, infeasible
optimisation exits 5.
"""


class MitmError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(MitmError):
    """Invalid configuration: unknown key, bad value, missing requirement."""


class GridTooLarge(ConfigError):
    """A sweep grid exceeds the total point budget."""


class SolverError(MitmError):
    """Base class for numerical-solver failures."""


class PoleError(SolverError):
    """The closed-form susceptibility denominator vanished."""


class NddPoleError(SolverError):
    """The local-field enhancement is evaluated at (or too near) its pole.

    Carries the offending first-order susceptibility in ``chi_p``.
    """

    def __init__(self, chi_p, message=None):
        self.chi_p = chi_p
        super().__init__(
            message or f"local-field enhancement pole: |1 - chi_p/3| too small "
                       f"for chi_p = {chi_p}"
        )


class DegenerateSteadyState(SolverError):
    """The Liouvillian null space has dimension > 1; no unique steady state."""


class NoConvergence(SolverError):
    """A steady-state solution failed its residual check."""


class StepTooLarge(SolverError):
    """Time integration step violates the stability/accuracy bound."""


class LasingThreshold(MitmError):
    """Medium gain exceeds total cavity loss; effective linewidth <= 0."""


class ThinMembraneViolation(MitmError):
    """Membrane too thick for the thin-slab closed forms (k*l >= 1)."""


class NoFeasiblePoint(MitmError):
    """Constrained optimisation found no point satisfying the constraints."""

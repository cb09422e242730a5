"""Ground-truth steady-state solver for the driven three-level Lambda system.

The master equation is

    drho/dt = -i [H, rho] + sum_k gamma_k D[A_k] rho,
    D[A] rho = A rho A^dag - (A^dag A rho + rho A^dag A) / 2,

with, in the basis (|1>, |2>, |3>),

    H = -Delta_p |2><2| - (Delta_p + Delta_mu) |1><1|
        + Omega_p (|3><2| + |2><3|) + Omega_mu (|2><1| + |1><2|)

and collapse channels (gamma1, |1><3|), (gamma2, |2><3|), (r, |3><1|),
plus an optional pure-dephasing channel (dephasing_2, |2><2|).

Vectorisation convention: C-order (row-major) flattening, vec(rho)[3*i + j]
= rho[i, j], so that

    L = -i (H (x) I - I (x) H^T)
        + sum_k gamma_k [A (x) A* - (A^dag A (x) I + I (x) (A^dag A)^T) / 2]

satisfies vec(drho/dt) = L vec(rho).

The susceptibility seen by the probe is chi_p = s0 * gamma_ref * rho_23 /
Omega_p evaluated at the steady state; reading the (2,3) element (not its
conjugate) is the orientation for which the two-level limit gives
absorption, Im(chi) > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSteadyState, NoConvergence, StepTooLarge
from .medium import LambdaDriveParams, Susceptibility

__all__ = [
    "DensityMatrix",
    "build_hamiltonian",
    "collapse_channels",
    "build_liouvillian",
    "steady_state",
    "time_evolve",
    "chi_p_numeric",
    "dump_complex_matrix",
    "load_complex_matrix",
]

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
EIGENVALUE_TOL = 1e-10
RESIDUAL_RTOL = 1e-10
# relative singular-value threshold separating "rank deficient by one"
# (unique steady state) from "deficient by two or more" (degenerate)
DEGENERACY_SVD_RTOL = 1e-8

DEFAULT_PROBE_FRACTION = 1e-4
LINEARITY_RTOL = 1e-3

_TRACE_INDICES = (0, 4, 8)  # row-major positions of the diagonal


@dataclass(frozen=True)
class DensityMatrix:
    """3x3 density matrix in the basis (|1>, |2>, |3>)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
        object.__setattr__(self, "matrix", m)

    def validate(self, hermiticity_tol=HERMITICITY_TOL, trace_tol=TRACE_TOL,
                 eigenvalue_tol=EIGENVALUE_TOL) -> "DensityMatrix":
        """Check Hermiticity, unit trace and positivity; return self."""
        m = self.matrix
        herm = np.max(np.abs(m - m.conj().T))
        if herm > hermiticity_tol:
            raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm:.3e}")
        tr = m.trace()
        if abs(tr - 1.0) > trace_tol:
            raise ValueError(f"trace deviates from 1 by {abs(tr - 1.0):.3e}")
        lo = float(np.min(np.linalg.eigvalsh(0.5 * (m + m.conj().T))))
        if lo < -eigenvalue_tol:
            raise ValueError(f"negative eigenvalue {lo:.3e}")
        return self

    @property
    def trace(self) -> complex:
        return self.matrix.trace()

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T))

    def __getitem__(self, idx):
        return self.matrix[idx]

    @classmethod
    def pure(cls, level: int) -> "DensityMatrix":
        """|level><level| with level in 1..3."""
        m = np.zeros((3, 3), dtype=complex)
        m[level - 1, level - 1] = 1.0
        return cls(m)


def _sigma(i: int, j: int) -> np.ndarray:
    """|i><j| with 1-based labels."""
    m = np.zeros((3, 3), dtype=complex)
    m[i - 1, j - 1] = 1.0
    return m


def build_hamiltonian(params: LambdaDriveParams) -> np.ndarray:
    """Rotating-frame Hamiltonian (units rad/s, hbar = 1), 3x3 Hermitian."""
    h = np.zeros((3, 3), dtype=complex)
    h[0, 0] = -(params.delta_p + params.delta_mu)
    h[1, 1] = -params.delta_p
    h[1, 2] = h[2, 1] = params.omega_p
    h[0, 1] = h[1, 0] = params.omega_mu
    return h


def collapse_channels(params: LambdaDriveParams, dephasing_2: float = 0.0):
    """(rate, operator) pairs of the dissipator."""
    channels = [
        (params.gamma1, _sigma(1, 3)),
        (params.gamma2, _sigma(2, 3)),
        (params.pump_r, _sigma(3, 1)),
    ]
    if dephasing_2 < 0:
        raise ValueError("dephasing_2 must be >= 0")
    if dephasing_2 > 0:
        channels.append((dephasing_2, _sigma(2, 2)))
    return channels


def build_liouvillian(params: LambdaDriveParams,
                      dephasing_2: float = 0.0) -> np.ndarray:
    """9x9 superoperator acting on the row-major vectorised density matrix."""
    eye = np.eye(3, dtype=complex)
    h = build_hamiltonian(params)
    liou = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for rate, op in collapse_channels(params, dephasing_2):
        anti = op.conj().T @ op
        liou += rate * (np.kron(op, op.conj())
                        - 0.5 * np.kron(anti, eye)
                        - 0.5 * np.kron(eye, anti.T))
    return liou


def apply_master_equation(params: LambdaDriveParams, rho: np.ndarray,
                          dephasing_2: float = 0.0) -> np.ndarray:
    """drho/dt computed directly from operators (no vectorisation).

    Used in tests as an independent check of :func:`build_liouvillian`.
    """
    h = build_hamiltonian(params)
    out = -1j * (h @ rho - rho @ h)
    for rate, op in collapse_channels(params, dephasing_2):
        anti = op.conj().T @ op
        out += rate * (op @ rho @ op.conj().T
                       - 0.5 * (anti @ rho + rho @ anti))
    return out


def steady_state(liouvillian: np.ndarray) -> DensityMatrix:
    """Unique steady state of the master equation.

    Solves L vec(rho) = 0 together with Tr rho = 1 by replacing the first
    row of L with the trace constraint (direct dense solve).  The solution
    must satisfy ||L vec(rho)||_2 < 1e-10 ||L||_2; otherwise the null space
    is diagnosed by SVD and either :class:`DegenerateSteadyState` (second
    singular value below 1e-8 relative) or :class:`NoConvergence` is raised.
    """
    liou = np.asarray(liouvillian, dtype=complex)
    if liou.shape != (9, 9):
        raise ValueError(f"expected a 9x9 superoperator, got {liou.shape}")

    constrained = liou.copy()
    constrained[0, :] = 0.0
    constrained[0, list(_TRACE_INDICES)] = 1.0
    rhs = np.zeros(9, dtype=complex)
    rhs[0] = 1.0

    try:
        vec = np.linalg.solve(constrained, rhs)
    except np.linalg.LinAlgError:
        _diagnose_null_space(liou)
        raise NoConvergence("constrained steady-state system is singular")

    norm_l = np.linalg.norm(liou, 2)
    residual = np.linalg.norm(liou @ vec)
    if norm_l > 0 and residual >= RESIDUAL_RTOL * norm_l:
        _diagnose_null_space(liou)
        raise NoConvergence(
            f"steady-state residual {residual:.3e} exceeds "
            f"{RESIDUAL_RTOL:g} * ||L|| = {RESIDUAL_RTOL * norm_l:.3e}")

    rho = vec.reshape(3, 3)
    rho = 0.5 * (rho + rho.conj().T)  # scrub roundoff asymmetry
    return DensityMatrix(rho)


def _diagnose_null_space(liou: np.ndarray) -> None:
    """Raise DegenerateSteadyState if dim(null L) > 1 numerically."""
    singular = np.linalg.svd(liou, compute_uv=False)
    top = singular[0]
    if top == 0.0 or singular[-2] < DEGENERACY_SVD_RTOL * max(top, 1.0):
        raise DegenerateSteadyState(
            "the Liouvillian null space has dimension > 1 "
            "(e.g. pump_r = omega_mu = omega_p = 0 leaves two dark states)")


def time_evolve(rho0: DensityMatrix, params: LambdaDriveParams,
                t_final: float, dt: float,
                dephasing_2: float = 0.0) -> DensityMatrix:
    """Fixed-step classical RK4 integration of the master equation.

    Requires dt <= 0.01 / max-rate.  The step count is round(t_final / dt)
    with the step width adjusted to land exactly on t_final.  Raises
    :class:`StepTooLarge` if the trace drifts by more than 1e-8.
    """
    if t_final < 0 or dt <= 0:
        raise ValueError("need t_final >= 0 and dt > 0")
    scale = max(params.rate_scale, params.omega_p, dephasing_2)
    if scale > 0 and dt > 0.01 / scale:
        raise StepTooLarge(
            f"dt = {dt:g} exceeds 0.01/max-rate = {0.01 / scale:g}")
    if t_final == 0.0:
        return DensityMatrix(rho0.matrix.copy())

    liou = build_liouvillian(params, dephasing_2)
    steps = max(1, round(t_final / dt))
    h = t_final / steps
    vec = rho0.matrix.reshape(9).astype(complex)
    for _ in range(steps):
        k1 = liou @ vec
        k2 = liou @ (vec + 0.5 * h * k1)
        k3 = liou @ (vec + 0.5 * h * k2)
        k4 = liou @ (vec + h * k3)
        vec = vec + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    drift = abs(vec[0] + vec[4] + vec[8] - 1.0)
    if drift > 1e-8:
        raise StepTooLarge(f"trace drifted by {drift:.3e}; reduce dt")
    return DensityMatrix(vec.reshape(3, 3))


def chi_p_numeric(params: LambdaDriveParams, s0: float, *,
                  gamma_ref: float | None = None,
                  probe: float | None = None,
                  linearity_check: bool = True,
                  linearity_rtol: float = LINEARITY_RTOL,
                  dephasing_2: float = 0.0) -> Susceptibility:
    """Susceptibility from the steady state: chi = s0 gamma_ref rho_23 / Omega_p.

    The probe amplitude is params.omega_p if nonzero, else ``probe``, else
    1e-4 * gamma_ref.  When ``linearity_check`` is on, the value is
    recomputed at a 10x weaker probe; a relative deviation beyond
    ``linearity_rtol`` sets the ``nonlinear`` flag on the result (not fatal).

    ``gamma_ref`` is the rate s0 is normalised against (defaults to gamma1).
    """
    if gamma_ref is None:
        gamma_ref = params.gamma1
    if gamma_ref <= 0:
        raise ValueError("gamma_ref must be > 0")
    if params.omega_p > 0:
        probe = params.omega_p
    elif probe is None:
        probe = DEFAULT_PROBE_FRACTION * gamma_ref
    if probe <= 0:
        raise ValueError("probe amplitude must be > 0")

    def response(amplitude: float) -> complex:
        rho = steady_state(
            build_liouvillian(params.replace(omega_p=amplitude), dephasing_2))
        return rho[1, 2] / amplitude

    value = response(probe)
    nonlinear = False
    if linearity_check:
        weaker = response(probe / 10.0)
        denom = max(abs(value), abs(weaker))
        if denom > 0 and abs(value - weaker) > linearity_rtol * denom:
            nonlinear = True
    return Susceptibility(s0 * gamma_ref * value, nonlinear=nonlinear)


def dump_complex_matrix(matrix: np.ndarray, fh) -> None:
    """Write a complex matrix as plain text: row-major, tab-separated,
    one row per line, each entry formatted as re+imj."""
    m = np.asarray(matrix, dtype=complex)
    for row in np.atleast_2d(m):
        fh.write("\t".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row))
        fh.write("\n")


def load_complex_matrix(fh) -> np.ndarray:
    """Inverse of :func:`dump_complex_matrix`."""
    rows = []
    for line in fh:
        line = line.strip()
        if not line:
            continue
        rows.append([complex(tok) for tok in line.split("\t")])
    return np.array(rows, dtype=complex)

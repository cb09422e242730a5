"""Pure-numpy implementations of the hot kernels.

Selected automatically when the compiled extension is unavailable (or when
MITM_FORCE_PURE is set).  Semantics are identical to the compiled versions:
same tolerances, same flag bits; values agree to floating-point roundoff.
"""

from __future__ import annotations

import numpy as np

from .flags import FLAG_DENOM_POLE, FLAG_NDD_POLE, FLAG_NONLINEAR, FLAG_SOLVER

BACKEND = "pure"

_CLOSED_POLE_RTOL = 1e-12
_NDD_POLE_TOL = 1e-9
_RESIDUAL_RTOL = 1e-10

_TEMPLATES = None


def closed_chi_grid(pump_r, omega_mu, delta_p, delta_mu, s0, gamma,
                    sign_omega2, sign_overall, chi_p, chi_ndd, flags):
    """Closed-form susceptibility over a flat grid of parameter arrays.

    All inputs are 1-D float arrays of equal length except ``gamma`` and the
    two sign switches, which are scalars.  Results are written into the
    preallocated ``chi_p``/``chi_ndd`` (complex128) and ``flags`` (uint8).
    """
    r, omu = pump_r, omega_mu
    dp, dmu = delta_p, delta_mu

    big_r = r - 2j * dmu
    big_b = (r + gamma) - 2j * (dp + dmu)
    big_g = gamma - 2j * dp
    den = big_r * (big_g * big_b + 4.0 * omu * omu)
    scale = np.maximum.reduce(
        [np.full_like(r, float(gamma)), r, omu, np.abs(dp), np.abs(dmu)])
    denom_pole = np.abs(den) < _CLOSED_POLE_RTOL * scale ** 3

    num = sign_overall * (-s0 * gamma) * (
        2j * big_r * big_b + sign_omega2 * 8j * omu * omu)
    with np.errstate(divide="ignore", invalid="ignore"):
        chi = num / den

    flags[:] = 0
    flags[denom_pole] |= FLAG_DENOM_POLE
    chi = np.where(denom_pole, np.nan * (1 + 1j), chi)
    chi_p[:] = chi

    d = 1.0 - chi / 3.0
    with np.errstate(invalid="ignore"):
        ndd_pole = ~denom_pole & (np.abs(d) <= _NDD_POLE_TOL)
    flags[ndd_pole] |= FLAG_NDD_POLE
    with np.errstate(divide="ignore", invalid="ignore"):
        ndd = chi / d
    chi_ndd[:] = np.where(denom_pole | ndd_pole, np.nan * (1 + 1j), ndd)


def _liouvillian_templates():
    """Constant 9x9 blocks; L is linear in every drive/rate parameter."""
    global _TEMPLATES
    if _TEMPLATES is None:
        from ..lindblad import build_liouvillian
        from ..medium import LambdaDriveParams

        zero = dict(gamma1=0.0, gamma2=0.0, pump_r=0.0, omega_mu=0.0,
                    omega_p=0.0, delta_p=0.0, delta_mu=0.0)

        def unit(**kw):
            return build_liouvillian(LambdaDriveParams(**{**zero, **kw}))

        _TEMPLATES = {
            "gamma1": unit(gamma1=1.0),
            "gamma2": unit(gamma2=1.0),
            "pump_r": unit(pump_r=1.0),
            "omega_mu": unit(omega_mu=1.0),
            "omega_p": unit(omega_p=1.0),
            "delta_p": unit(delta_p=1.0),
            "delta_mu": unit(delta_mu=1.0),
            "dephasing": build_liouvillian(LambdaDriveParams(**zero),
                                           dephasing_2=1.0),
        }
    return _TEMPLATES


def _batched_liouvillian(gamma1, gamma2, dephasing, pump_r, omega_mu,
                         delta_p, delta_mu, omega_p):
    t = _liouvillian_templates()
    fixed = gamma1 * t["gamma1"] + gamma2 * t["gamma2"] \
        + dephasing * t["dephasing"] + omega_p * t["omega_p"]
    liou = np.broadcast_to(fixed, (len(pump_r), 9, 9)).copy()
    liou += pump_r[:, None, None] * t["pump_r"]
    liou += omega_mu[:, None, None] * t["omega_mu"]
    liou += delta_p[:, None, None] * t["delta_p"]
    liou += delta_mu[:, None, None] * t["delta_mu"]
    return liou


def _batched_rho23(liou):
    """Solve the trace-constrained steady state for a stack of Liouvillians.

    Returns (rho23 array, solver-failed bool mask)."""
    n = liou.shape[0]
    constrained = liou.copy()
    constrained[:, 0, :] = 0.0
    constrained[:, 0, [0, 4, 8]] = 1.0
    rhs = np.zeros((n, 9), dtype=complex)
    rhs[:, 0] = 1.0

    failed = np.zeros(n, dtype=bool)
    try:
        x = np.linalg.solve(constrained, rhs)
    except np.linalg.LinAlgError:
        x = np.zeros((n, 9), dtype=complex)
        for i in range(n):
            try:
                x[i] = np.linalg.solve(constrained[i], rhs[i])
            except np.linalg.LinAlgError:
                failed[i] = True

    residual = np.abs(np.einsum("nij,nj->ni", liou, x)).max(axis=1)
    norm_inf = np.abs(liou).sum(axis=2).max(axis=1)
    failed |= residual >= _RESIDUAL_RTOL * norm_inf
    return x[:, 5], failed


def steady_chi_grid(gamma1, gamma2, dephasing, pump_r, omega_mu, delta_p,
                    delta_mu, s0, gamma_ref, probe, check_linearity,
                    linearity_rtol, chi_out, flags):
    """Steady-state susceptibility over a flat grid of parameter arrays.

    chi = s0 * gamma_ref * rho_23 / probe at the trace-constrained steady
    state.  With ``check_linearity`` the value is recomputed at probe/10 and
    FLAG_NONLINEAR is set where the two disagree beyond ``linearity_rtol``.
    """
    liou = _batched_liouvillian(gamma1, gamma2, dephasing, pump_r, omega_mu,
                                delta_p, delta_mu, probe)
    rho23, failed = _batched_rho23(liou)
    value = s0 * gamma_ref * rho23 / probe

    flags[:] = 0
    if check_linearity:
        liou10 = _batched_liouvillian(gamma1, gamma2, dephasing, pump_r,
                                      omega_mu, delta_p, delta_mu, probe / 10.0)
        rho23_10, failed10 = _batched_rho23(liou10)
        weaker = s0 * gamma_ref * rho23_10 / (probe / 10.0)
        denom = np.maximum(np.abs(value), np.abs(weaker))
        with np.errstate(invalid="ignore"):
            nonlinear = (denom > 0) & (np.abs(value - weaker) > linearity_rtol * denom)
        nonlinear &= ~(failed | failed10)
        flags[nonlinear] |= FLAG_NONLINEAR
        failed |= failed10

    flags[failed] |= FLAG_SOLVER
    chi_out[:] = np.where(failed, np.nan * (1 + 1j), value)

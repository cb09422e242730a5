"""Linear susceptibility of a driven three-level Lambda medium.

Level scheme: two ground states |1>, |2> and one excited state |3>.
A probe field (Rabi frequency Omega_p, detuning Delta_p) drives |2><->|3>,
a microwave field (Omega_mu, Delta_mu) couples the ground doublet, an
incoherent pump transfers |1> -> |3> at rate r, and |3> decays to |1> and
|2> at rates gamma1 and gamma2.

Sign convention, fixed package-wide: Im(chi) > 0 means absorption,
Im(chi) < 0 means gain. The convention is calibrated against the two-level
limit of the steady-state solver in :mod:`mitm_coupling.lindblad`.

Two closed forms are provided:

* :func:`chi_p_closed` evaluates a fixed rational expression in
  (s0, gamma, r, Omega_mu, Delta_p, Delta_mu) exactly as transcribed, with
  sign variants available through :func:`chi_p_variant`.  Its correctness is
  adjudicated against the steady-state solver (see
  :mod:`mitm_coupling.adjudicate`), never re-derived here.
* :func:`chi_p_first_order` is an independent first-order-in-probe solution
  of the full master equation, including the steady-state populations and
  ground-state coherence.  It agrees with the numerical solver to better
  than 1e-6 and serves as the analytic cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import C_LIGHT, EPSILON_0, HBAR
from .errors import NddPoleError, PoleError

__all__ = [
    "LambdaDriveParams",
    "DopantSpec",
    "Susceptibility",
    "VariantSigns",
    "PRINTED_VARIANT",
    "FLIP8_VARIANT",
    "s0_from_density",
    "gamma_from_dipole",
    "chi_p_closed",
    "chi_p_variant",
    "chi_p_first_order",
    "ndd_transform",
    "ndd_inverse",
]

# |denominator| below 1e-12 * (natural rate scale)^3 counts as a pole of the
# closed form; |1 - chi/3| below 1e-9 counts as a pole of the local-field map.
CLOSED_FORM_POLE_RTOL = 1e-12
NDD_POLE_TOL = 1e-9


@dataclass(frozen=True)
class LambdaDriveParams:
    """Drives, detunings and rates of the three-level medium, in rad/s.

    ``gamma1``/``gamma2`` are the decay rates |3>->|1> and |3>->|2>,
    ``pump_r`` the incoherent pump rate |1>->|3>, ``omega_mu`` and
    ``omega_p`` the microwave and probe Rabi frequencies, ``delta_p`` and
    ``delta_mu`` the probe and microwave detunings (any sign).
    """

    gamma1: float
    gamma2: float
    pump_r: float
    omega_mu: float
    omega_p: float
    delta_p: float
    delta_mu: float

    def __post_init__(self):
        for name in ("gamma1", "gamma2", "pump_r", "omega_mu", "omega_p"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {value}")
        for name in ("delta_p", "delta_mu"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def in_gamma_units(cls, gamma=1.0, *, pump_r=0.0, omega_mu=0.0,
                       omega_p=0.0, delta_p=0.0, delta_mu=0.0,
                       gamma1=None, gamma2=None):
        """Build params with every rate given as a multiple of ``gamma``."""
        return cls(
            gamma1=(gamma1 if gamma1 is not None else 1.0) * gamma,
            gamma2=(gamma2 if gamma2 is not None else 1.0) * gamma,
            pump_r=pump_r * gamma,
            omega_mu=omega_mu * gamma,
            omega_p=omega_p * gamma,
            delta_p=delta_p * gamma,
            delta_mu=delta_mu * gamma,
        )

    @property
    def rate_scale(self) -> float:
        """Largest magnitude among the rates/detunings; sets pole tolerances."""
        return max(self.gamma1, self.gamma2, self.pump_r, self.omega_mu,
                   abs(self.delta_p), abs(self.delta_mu))

    def replace(self, **kwargs) -> "LambdaDriveParams":
        fields = {k: getattr(self, k) for k in
                  ("gamma1", "gamma2", "pump_r", "omega_mu", "omega_p",
                   "delta_p", "delta_mu")}
        fields.update(kwargs)
        return LambdaDriveParams(**fields)


@dataclass(frozen=True)
class DopantSpec:
    """Dopant ensemble in the host membrane.

    ``number_density`` in 1/m^3, ``transition_wavelength`` (|2><->|3>) in m,
    optional ``dipole_moment`` in C*m, and the real host permittivity whose
    square root enters the density parameter.
    """

    number_density: float
    transition_wavelength: float
    host_eps_real: float = 1.0
    dipole_moment: float | None = None

    def __post_init__(self):
        if self.number_density < 0:
            raise ValueError("number_density must be >= 0")
        if self.transition_wavelength <= 0:
            raise ValueError("transition_wavelength must be > 0")
        if self.host_eps_real < 1:
            raise ValueError("host_eps_real must be >= 1")
        if self.dipole_moment is not None and self.dipole_moment < 0:
            raise ValueError("dipole_moment must be >= 0")


@dataclass(frozen=True)
class Susceptibility:
    """A complex dimensionless electric susceptibility.

    Positive imaginary part means absorption, negative means gain.
    ``nonlinear`` is set by the numerical engine when its probe-linearity
    diagnostic fails; it never affects the value.
    """

    CONVENTION = "Im(chi) > 0 is absorption; Im(chi) < 0 is gain"

    value: complex
    nonlinear: bool = False

    def __post_init__(self):
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValueError(f"susceptibility must be finite, got {v}")
        object.__setattr__(self, "value", v)

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag

    @property
    def is_gain(self) -> bool:
        return self.value.imag <= 0


@dataclass(frozen=True)
class VariantSigns:
    """Sign/orientation switches applied to the transcribed closed form.

    ``sign_omega2`` multiplies the 8i*Omega_mu^2 numerator term (the
    transcribed form has -1), ``sign_overall`` multiplies the whole
    expression, ``flip_delta_p``/``flip_delta_mu`` negate the detunings
    before evaluation and ``conjugate`` conjugates the result.
    """

    sign_omega2: int = -1
    sign_overall: int = 1
    flip_delta_p: bool = False
    flip_delta_mu: bool = False
    conjugate: bool = False

    def __post_init__(self):
        if self.sign_omega2 not in (-1, 1) or self.sign_overall not in (-1, 1):
            raise ValueError("signs must be +1 or -1")

    @property
    def name(self) -> str:
        parts = []
        if self.sign_omega2 == 1:
            parts.append("flip8")
        if self.sign_overall == -1:
            parts.append("negall")
        if self.flip_delta_p:
            parts.append("negdp")
        if self.flip_delta_mu:
            parts.append("negdmu")
        if self.conjugate:
            parts.append("conj")
        return "+".join(parts) if parts else "printed"


PRINTED_VARIANT = VariantSigns()
# Flipping the sign of the 8i*Omega_mu^2 numerator term is the variant that
# reproduces the pinned case-study susceptibility 1181.45 - 0.70i; see the
# adjudication report for the full comparison.
FLIP8_VARIANT = VariantSigns(sign_omega2=1)


def s0_from_density(dopant: DopantSpec) -> float:
    """Dimensionless density parameter of the dopant ensemble.

    s0 = 3 * N * lambda^3 / (8 * pi^2 * sqrt(eps_h)); zero density gives 0.
    """
    lam3 = dopant.transition_wavelength ** 3
    return 3.0 * dopant.number_density * lam3 / (
        8.0 * math.pi ** 2 * math.sqrt(dopant.host_eps_real))


def gamma_from_dipole(dipole: float, omega_a: float, eps_h: float) -> float:
    """Spontaneous decay rate (rad/s) of a dipole transition in a host medium.

    gamma = omega_a^3 * Q^2 * sqrt(eps_h) / (3 * pi * eps0 * hbar * c^3).

    This prefactor is the one consistent with both the standard free-space
    dipole decay rate (for eps_h = 1) and the identity
    s0 = N Q^2 / (eps0 hbar gamma) == s0_from_density(...).
    """
    if dipole < 0 or omega_a < 0:
        raise ValueError("dipole and omega_a must be >= 0")
    if eps_h < 1:
        raise ValueError("eps_h must be >= 1")
    return (omega_a ** 3 * dipole ** 2 * math.sqrt(eps_h)
            / (3.0 * math.pi * EPSILON_0 * HBAR * C_LIGHT ** 3))


def wavelength_to_omega(wavelength: float) -> float:
    """Angular frequency (rad/s) of light with the given vacuum wavelength."""
    return 2.0 * math.pi * C_LIGHT / wavelength


def chi_p_variant(params: LambdaDriveParams, s0: float,
                  variant: VariantSigns = PRINTED_VARIANT) -> Susceptibility:
    """Evaluate the transcribed closed-form susceptibility, with sign switches.

    The expression, in the printed orientation (``PRINTED_VARIANT``):

        chi_p = -s0*g * [2i*(r - 2i*Dmu)*(r + g - 2i*(Dp + Dmu)) - 8i*Omu^2]
                / ((r - 2i*Dmu) * [(g - 2i*Dp)*(r + g - 2i*(Dp + Dmu)) + 4*Omu^2])

    with g = gamma1 = gamma2.  The result is linear in s0 and independent of
    the probe amplitude (first-order response).  Raises :class:`PoleError`
    when the denominator vanishes relative to the natural rate scale, which
    happens when r and Delta_mu approach zero together.
    """
    if params.gamma1 != params.gamma2:
        raise ValueError(
            "the closed form assumes gamma1 == gamma2; use the steady-state "
            "engine (lindblad.chi_p_numeric) for unequal decay rates")
    g = params.gamma1
    if g <= 0:
        raise ValueError("the closed form requires gamma > 0")

    dp = -params.delta_p if variant.flip_delta_p else params.delta_p
    dmu = -params.delta_mu if variant.flip_delta_mu else params.delta_mu
    r = params.pump_r
    omu = params.omega_mu

    big_r = r - 2j * dmu
    big_b = r + g - 2j * (dp + dmu)
    big_g = g - 2j * dp
    denominator = big_r * (big_g * big_b + 4.0 * omu ** 2)
    scale = max(params.rate_scale, g)
    if abs(denominator) < CLOSED_FORM_POLE_RTOL * scale ** 3:
        raise PoleError(
            f"closed-form susceptibility pole: |denominator| = "
            f"{abs(denominator):.3e} < {CLOSED_FORM_POLE_RTOL:g} * scale^3")

    numerator = variant.sign_overall * (-s0 * g) * (
        2j * big_r * big_b + variant.sign_omega2 * 8j * omu ** 2)
    chi = numerator / denominator
    if variant.conjugate:
        chi = chi.conjugate()
    return Susceptibility(chi)


def chi_p_closed(params: LambdaDriveParams, s0: float) -> Susceptibility:
    """The transcribed closed-form susceptibility, printed orientation.

    See :func:`chi_p_variant`; correctness relative to the master equation
    is adjudicated in :mod:`mitm_coupling.adjudicate`.
    """
    return chi_p_variant(params, s0, PRINTED_VARIANT)


def chi_p_first_order(params: LambdaDriveParams, s0: float,
                      gamma_ref: float | None = None) -> Susceptibility:
    """First-order-in-probe susceptibility from the full master equation.

    Solves the zeroth-order populations / ground-state coherence balance and
    the first-order optical coherences analytically, for arbitrary gamma1,
    gamma2.  ``gamma_ref`` is the rate against which s0 is normalised
    (s0 = N Q^2 / (eps0 hbar gamma_ref)); defaults to gamma1.

    Requires a unique steady state: pump_r > 0 (with omega_mu = 0 allowed),
    since without the pump both ground states are dark.
    """
    g1, g2, r = params.gamma1, params.gamma2, params.pump_r
    omu = params.omega_mu
    dp, dmu = params.delta_p, params.delta_mu
    if gamma_ref is None:
        gamma_ref = g1
    g3 = g1 + g2  # total decay out of |3>
    if g3 <= 0 or r <= 0:
        raise ValueError("first-order solution requires gamma1+gamma2 > 0 "
                         "and pump_r > 0 (unique steady state)")

    w = 0.5 * r - 1j * dmu                 # ground coherence factor
    x = 0.5 * g3 - 1j * dp                 # |2><3| coherence factor
    y = 0.5 * (g3 + r) - 1j * (dp + dmu)   # |1><3| coherence factor

    n3_per_n1 = r / g3
    if omu > 0:
        d21_per_n1 = g2 * n3_per_n1 * abs(w) ** 2 / (omu ** 2 * r)
        n1 = 1.0 / (2.0 + d21_per_n1 + n3_per_n1)
        n2 = n1 * (1.0 + d21_per_n1)
        n3 = n1 * n3_per_n1
        rho12 = -1j * omu * (n2 - n1) / w
    else:
        # all population accumulates in the dark state |2>
        n1, n2, n3 = 0.0, 1.0, 0.0
        rho12 = 0.0

    rho23_per_probe = (omu * rho12 + 1j * y * (n2 - n3)) / (x * y + omu ** 2)
    return Susceptibility(s0 * gamma_ref * rho23_per_probe)


def ndd_transform(chi_p: Susceptibility | complex) -> Susceptibility:
    """Local-field (near dipole-dipole) enhancement chi / (1 - chi/3).

    Diverges as chi -> 3; raises :class:`NddPoleError` when
    |1 - chi/3| <= 1e-9.
    """
    chi = chi_p.value if isinstance(chi_p, Susceptibility) else complex(chi_p)
    denom = 1.0 - chi / 3.0
    if abs(denom) <= NDD_POLE_TOL:
        raise NddPoleError(chi)
    return Susceptibility(chi / denom)


def ndd_inverse(chi_ndd: Susceptibility | complex) -> Susceptibility:
    """Algebraic inverse of :func:`ndd_transform`: chi / (1 + chi/3)."""
    chi = chi_ndd.value if isinstance(chi_ndd, Susceptibility) else complex(chi_ndd)
    denom = 1.0 + chi / 3.0
    if abs(denom) <= NDD_POLE_TOL:
        raise NddPoleError(chi, "inverse local-field map pole")
    return Susceptibility(chi / denom)

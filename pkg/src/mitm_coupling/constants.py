"""Physical constants (SI) used throughout the package.

All values come from scipy.constants (CODATA). Only the handful of
constants the formulas actually need are re-exported, so the rest of the
code never has to remember scipy's key strings.
"""

from scipy import constants as _sc

C_LIGHT = _sc.c                  # speed of light in vacuum, m/s
HBAR = _sc.hbar                  # reduced Planck constant, J*s
EPSILON_0 = _sc.epsilon_0        # vacuum permittivity, F/m
K_BOLTZMANN = _sc.k              # Boltzmann constant, J/K

# First zero of the Bessel function J0; sets the fundamental mode of a
# circular drum under tension.
BESSEL_J0_ZERO_1 = 2.404825557695773

TWO_PI = 2.0 * _sc.pi

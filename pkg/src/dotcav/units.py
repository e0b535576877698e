"""Physical constants and unit conversions shared by the whole toolkit.

Canonical units everywhere inside the package:

- time: ns;  1/e exponential decay rates (Gamma, alpha, delta): 1/ns
- angular rates (omega, g, kappa, gamma_dipole): rad/ns  (1 rad/ns = 1 Grad/s)
- lengths: nm
- dipole moments: C*m (Debye accepted at external boundaries only)

Conversions to/from other units happen only at external interfaces (CLI,
file parsers); module-to-module exchange is always canonical.
"""

import math
from typing import Final

# Speed of light in vacuum (m/s)
C_M_PER_S: Final[float] = 299_792_458.0

# Speed of light in canonical units (nm/ns)
C_NM_PER_NS: Final[float] = 2.99792458e8

# Reduced Planck constant (J*s)
HBAR: Final[float] = 1.054571817e-34

# Vacuum permittivity (F/m)
EPS0: Final[float] = 8.8541878128e-12

# 1 Debye in C*m
DEBYE: Final[float] = 3.33564e-30


def wavelength_to_angular_frequency(lambda_nm: float) -> float:
    """Angular frequency omega = 2*pi*c/lambda, in rad/ns, for lambda in nm."""
    if lambda_nm <= 0:
        raise ValueError(f"wavelength must be positive, got {lambda_nm}")
    return 2.0 * math.pi * C_NM_PER_NS / lambda_nm


def angular_frequency_to_wavelength(omega_rad_per_ns: float) -> float:
    """Inverse of wavelength_to_angular_frequency (nm from rad/ns)."""
    if omega_rad_per_ns <= 0:
        raise ValueError(f"angular frequency must be positive, got {omega_rad_per_ns}")
    return 2.0 * math.pi * C_NM_PER_NS / omega_rad_per_ns


def cavity_field_decay(lambda_c_nm: float, q: float) -> float:
    """Cavity field (amplitude) decay rate kappa = omega/(2Q) in rad/ns.

    For the 929 nm dipole mode this gives 225.3 rad/ns at Q = 4500 and
    202.8 rad/ns at Q = 5000 (often quoted loosely as "~240 GHz"; no stated
    (lambda, Q) pair actually evaluates to 240 Grad/s).
    """
    if lambda_c_nm <= 0:
        raise ValueError(f"wavelength must be positive, got {lambda_c_nm}")
    if q <= 0:
        raise ValueError(f"quality factor must be positive, got {q}")
    return wavelength_to_angular_frequency(lambda_c_nm) / (2.0 * q)


def dipole_debye_to_si(mu_debye: float) -> float:
    """Dipole moment in C*m from Debye."""
    if mu_debye < 0:
        raise ValueError(f"dipole moment must be non-negative, got {mu_debye}")
    return mu_debye * DEBYE


def dipole_si_to_debye(mu_cm: float) -> float:
    """Dipole moment in Debye from C*m."""
    if mu_cm < 0:
        raise ValueError(f"dipole moment must be non-negative, got {mu_cm}")
    return mu_cm / DEBYE

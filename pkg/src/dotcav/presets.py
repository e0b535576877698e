"""Documented device presets for an InAs quantum dot in a GaAs membrane cavity.

Two dipole-moment presets ship with the toolkit and they are NOT mutually
consistent; both are kept on purpose and reports surface the tension:

- preset A: mu = 37.2 D, back-solved so that the 0.5 (lambda/n)^3 dipole-mode
  cavity gives a vacuum coupling g ~ 380 Grad/s.
- preset B: mu = 20.8 D, back-solved from the ~1.7 ns bulk radiative lifetime.

Either value is plausible for a large InAs dot; the two observations they are
anchored to were taken on different dots.
"""

from .device import CavitySpec, EmitterSpec
from .units import dipole_debye_to_si

GAAS_INDEX = 3.46
EMISSION_WAVELENGTH_NM = 929.0

# Dephasing 1/alpha ~ 0.5-1 ns and relaxation jitter 1/delta ~ 10 ps are the
# generic incoherent-excitation values used throughout.
DEFAULT_ALPHA = 1.0       # 1/ns
DEFAULT_DELTA = 100.0     # 1/ns
DEFAULT_GAMMA_DIPOLE = 2.0  # rad/ns


def emitter_preset_a() -> EmitterSpec:
    """Dipole anchored to the g ~ 380 Grad/s coupling estimate (37.2 D)."""
    return EmitterSpec(
        lambda_emit_nm=EMISSION_WAVELENGTH_NM,
        mu_cm=dipole_debye_to_si(37.2),
        n_host=GAAS_INDEX,
        alpha=DEFAULT_ALPHA,
        delta=DEFAULT_DELTA,
        gamma_dipole=DEFAULT_GAMMA_DIPOLE,
    )


def emitter_preset_b() -> EmitterSpec:
    """Dipole anchored to the ~1.7 ns bulk lifetime (20.8 D)."""
    return EmitterSpec(
        lambda_emit_nm=EMISSION_WAVELENGTH_NM,
        mu_cm=dipole_debye_to_si(20.8),
        n_host=GAAS_INDEX,
        alpha=DEFAULT_ALPHA,
        delta=DEFAULT_DELTA,
        gamma_dipole=DEFAULT_GAMMA_DIPOLE,
    )


def cavity_measured() -> CavitySpec:
    """The measured dipole-mode cavity: Q = 4500, V = 0.5 (lambda/n)^3."""
    return CavitySpec(lambda_c_nm=EMISSION_WAVELENGTH_NM, q=4500.0, v_n=0.5, n_cavity=GAAS_INDEX)


def cavity_strong_coupling() -> CavitySpec:
    """The Q = 5000 parameter set used for the strong-coupling estimate."""
    return CavitySpec(lambda_c_nm=EMISSION_WAVELENGTH_NM, q=5000.0, v_n=0.5, n_cavity=GAAS_INDEX)


def emitter_preset(name: str) -> EmitterSpec:
    key = name.strip().lower()
    if key in ("a", "preset-a", "preset_a"):
        return emitter_preset_a()
    if key in ("b", "preset-b", "preset_b"):
        return emitter_preset_b()
    raise ValueError(f"unknown emitter preset {name!r} (expected 'A' or 'B')")

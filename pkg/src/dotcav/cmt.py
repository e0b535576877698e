"""Temporal coupled-mode model of a cavity side-coupled to a waveguide.

Single mode, one pair of waveguide ports, energy-conserving and
time-reversal-symmetric coupling. On-resonance light is dropped from the
waveguide into the cavity; the transmitted power fraction is the Lorentzian
dip

    T(omega) = ((omega-omega0)^2 + kappa_loss^2)
             / ((omega-omega0)^2 + (kappa_loss + kappa_wg)^2)

All rates are FIELD (amplitude) decay rates in rad/ns; the corresponding
power decay rates are twice these. kappa_wg is the decay into the waveguide
(both directions combined), kappa_loss the intrinsic/out-of-plane decay.
With kappa_loss = 0 the dip reaches T(omega0) = 0: complete dropping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CmtParams:
    omega0: float       # cavity resonance, rad/ns
    kappa_wg: float     # field decay into the waveguide, rad/ns
    kappa_loss: float   # intrinsic field decay, rad/ns

    def __post_init__(self):
        if self.omega0 <= 0:
            raise ValueError("resonance frequency must be positive")
        if self.kappa_wg < 0 or self.kappa_loss < 0:
            raise ValueError("decay rates must be non-negative")
        if self.kappa_wg + self.kappa_loss == 0:
            raise ValueError("total decay rate must be positive")

    @property
    def kappa_total(self) -> float:
        return self.kappa_wg + self.kappa_loss

    @property
    def loaded_q(self) -> float:
        """omega0 / (2 kappa_total): the Q of the waveguide-loaded resonance."""
        return self.omega0 / (2.0 * self.kappa_total)


@dataclass(frozen=True)
class TransmissionCurve:
    omega: np.ndarray  # rad/ns
    t: np.ndarray      # transmitted power fraction


def transmission(params: CmtParams, omega_grid) -> TransmissionCurve:
    """Transmitted power fraction on the given angular-frequency grid."""
    omega = np.asarray(omega_grid, dtype=float)
    if omega.size == 0:
        raise ValueError("frequency grid is empty")
    det2 = (omega - params.omega0) ** 2
    t = (det2 + params.kappa_loss ** 2) / (det2 + params.kappa_total ** 2)
    return TransmissionCurve(omega=omega, t=t)


def transmission_at(params: CmtParams, omega: float) -> float:
    det2 = (omega - params.omega0) ** 2
    return (det2 + params.kappa_loss ** 2) / (det2 + params.kappa_total ** 2)


def drop_efficiency(params: CmtParams) -> float:
    """On-resonance fraction dropped to the cavity, 1 - T(omega0).

    Equals 1 - (kappa_loss / (kappa_loss + kappa_wg))^2; hits 1 for a
    loss-free cavity and 0.75 at kappa_wg = kappa_loss.
    """
    return 1.0 - (params.kappa_loss / params.kappa_total) ** 2


def default_grid(params: CmtParams, half_widths: float = 12.0, n_points: int = 2001) -> np.ndarray:
    """Uniform grid spanning omega0 +- half_widths * kappa_total."""
    if half_widths <= 0 or n_points < 2:
        raise ValueError("invalid grid parameters")
    span = half_widths * params.kappa_total
    return np.linspace(params.omega0 - span, params.omega0 + span, int(n_points))


def write_curve(path, curve: TransmissionCurve, inverted: bool = False) -> None:
    """CSV export (omega_rad_per_ns, transmission); inverted writes 1-T."""
    label = "one_minus_transmission" if inverted else "transmission"
    vals = 1.0 - curve.t if inverted else curve.t
    with open(path, "w") as fh:
        fh.write(f"omega_rad_per_ns,{label}\n")
        for w, v in zip(curve.omega.tolist(), vals.tolist()):
            fh.write(f"{w!r},{v!r}\n")

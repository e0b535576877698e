"""Thin-film transfer-matrix reflectance and membrane/mirror interference.

Two pieces:

1. stack_reflectance - normal-incidence complex reflection amplitude of a
   dielectric layer stack (characteristic 2x2 matrix per layer), e.g. a
   GaAs/AlAs quarter-wave DBR grown under a suspended membrane.

2. upward_fraction - a two-beam scalar estimate of how much of an emitter's
   radiation leaves upward when a mirror of amplitude r sits a distance d
   below it. The downward lobe returns with round-trip phase
   theta = 4 pi d / lambda + arg(r) and interferes with the upward lobe:

       f_up = |1 + |r| e^{i theta}|^2 / (|1 + |r| e^{i theta}|^2 + (1 - |r|^2))

   The 1-|r|^2 term is the power lost through the mirror, so f_up + f_down = 1
   by construction. A bare symmetric membrane (r = 0) radiates 50% up; a
   well-placed high-reflectivity DBR pushes this above 99%. This scalar model
   is a design estimate standing in for a full 3-D field simulation of the
   radiation pattern - good for trends, not for the last percent.

Lossless dielectrics only (real indices), normal incidence only.

Stack description file: '#' comments; 'ambient <index>' and
'substrate <index>' header lines; one 'index thickness_nm' line per layer,
listed from the ambient side.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LayerStack:
    ambient_index: float
    layers: tuple[tuple[float, float], ...]  # (index, thickness_nm), ambient side first
    substrate_index: float

    def __post_init__(self):
        if self.ambient_index < 1 or self.substrate_index < 1:
            raise ValueError("ambient and substrate indices must be >= 1")
        object.__setattr__(self, "layers", tuple((float(n), float(d)) for n, d in self.layers))
        for n, d in self.layers:
            if n < 1:
                raise ValueError("layer indices must be >= 1")
            if d <= 0:
                raise ValueError("layer thicknesses must be positive")


@dataclass(frozen=True)
class InterferenceResult:
    r: complex          # mirror reflection amplitude
    spacing_nm: float   # emitter-mirror gap
    f_up: float

    @property
    def big_r(self) -> float:
        return abs(self.r) ** 2


def quarter_wave_dbr(
    n_high: float = 3.46,
    n_low: float = 2.95,
    pairs: int = 15,
    design_lambda_nm: float = 929.0,
    ambient_index: float = 1.0,
    substrate_index: float = 3.46,
) -> LayerStack:
    """(high, low)^pairs quarter-wave stack, high-index layer on the ambient side."""
    if pairs < 1:
        raise ValueError("need at least one pair")
    th = design_lambda_nm / (4.0 * n_high)
    tl = design_lambda_nm / (4.0 * n_low)
    layers = ((n_high, th), (n_low, tl)) * pairs
    return LayerStack(ambient_index=ambient_index, layers=layers, substrate_index=substrate_index)


def quarter_wave_reflectance(
    n_high: float, n_low: float, pairs: int, ambient_index: float, substrate_index: float
) -> float:
    """Closed-form power reflectance of a quarter-wave stack at its design wavelength.

    Admittance recursion: each quarter-wave layer maps Y -> n^2/Y, so N
    high/low pairs give Y = (n_high/n_low)^(2N) * n_substrate and
    R = ((1 - a)/(1 + a))^2 with a = Y/n_ambient.
    """
    a = (substrate_index / ambient_index) * (n_high / n_low) ** (2 * pairs)
    return ((1.0 - a) / (1.0 + a)) ** 2


def stack_reflectance(stack: LayerStack, lambda_nm: float) -> complex:
    """Normal-incidence complex reflection amplitude of the stack.

    Characteristic-matrix product: layer j with index n and thickness d
    contributes [[cos p, i sin p / n], [i n sin p, cos p]] with
    p = 2 pi n d / lambda.
    """
    if lambda_nm <= 0:
        raise ValueError("wavelength must be positive")
    m11, m12, m21, m22 = 1.0 + 0j, 0j, 0j, 1.0 + 0j
    for n, d in stack.layers:
        p = 2.0 * math.pi * n * d / lambda_nm
        c, s = math.cos(p), math.sin(p)
        a11, a12, a21, a22 = c + 0j, 1j * s / n, 1j * n * s, c + 0j
        m11, m12, m21, m22 = (
            m11 * a11 + m12 * a21,
            m11 * a12 + m12 * a22,
            m21 * a11 + m22 * a21,
            m21 * a12 + m22 * a22,
        )
    na, ns = stack.ambient_index, stack.substrate_index
    b = m11 + m12 * ns
    c = m21 + m22 * ns
    r = (na * b - c) / (na * b + c)
    return complex(r)


def upward_fraction(r: complex, spacing_nm: float, lambda_nm: float) -> float:
    """Fraction of emission leaving upward for mirror amplitude r at gap `spacing_nm`."""
    rho = abs(r)
    if rho > 1.0 + 1e-12:
        raise ValueError("mirror reflection amplitude cannot exceed 1")
    rho = min(rho, 1.0)
    if spacing_nm < 0:
        raise ValueError("spacing must be non-negative")
    if lambda_nm <= 0:
        raise ValueError("wavelength must be positive")
    theta = 4.0 * math.pi * spacing_nm / lambda_nm + cmath.phase(r)
    up = abs(1.0 + rho * cmath.exp(1j * theta)) ** 2
    leak = 1.0 - rho * rho
    return up / (up + leak)


def downward_fraction(r: complex, spacing_nm: float, lambda_nm: float) -> float:
    return 1.0 - upward_fraction(r, spacing_nm, lambda_nm)


def optimize_spacing(
    stack: LayerStack,
    lambda_nm: float,
    d_range: tuple[float, float],
    n_grid: int = 2001,
) -> InterferenceResult:
    """Mirror gap in d_range maximizing f_up.

    Dense grid scan followed by a closed-form snap: f_up is maximal where the
    round-trip phase theta = 4 pi d / lambda + arg(r) is a multiple of 2 pi,
    so the refinement solves theta = 2 pi m for the m nearest the grid argmax
    (ties break toward smaller spacing). If no such d lies in range (range
    narrower than the lambda/2 period), the grid argmax is polished by golden
    section instead.
    """
    d_lo, d_hi = d_range
    if not (d_hi > d_lo >= 0):
        raise ValueError("need a non-empty spacing range with d_lo >= 0")
    if n_grid < 1000:
        raise ValueError("grid too coarse; use at least 1000 points")
    r = stack_reflectance(stack, lambda_nm)
    if abs(r) == 0.0:
        # f_up = 1/2 for every spacing; smallest wins the tie
        return InterferenceResult(r=r, spacing_nm=float(d_lo), f_up=0.5)

    grid = np.linspace(d_lo, d_hi, int(n_grid))
    f = np.array([upward_fraction(r, d, lambda_nm) for d in grid])
    best = int(np.argmax(f))

    # exact optima sit at theta(d) = 2 pi m; all are equivalent, so take the
    # smallest one inside the range if any exists
    phase = cmath.phase(r)
    m_min = math.ceil((4.0 * math.pi * d_lo / lambda_nm + phase) / (2.0 * math.pi) - 1e-12)
    d_star = (2.0 * math.pi * m_min - phase) * lambda_nm / (4.0 * math.pi)
    if d_lo - 1e-12 <= d_star <= d_hi:
        d_opt = min(max(d_star, d_lo), d_hi)
    else:
        # range narrower than the lambda/2 period and missing the peak:
        # polish the grid argmax instead
        d_opt = _golden_section(
            lambda d: -upward_fraction(r, d, lambda_nm),
            grid[max(best - 1, 0)],
            grid[min(best + 1, len(grid) - 1)],
        )
    return InterferenceResult(r=r, spacing_nm=float(d_opt), f_up=upward_fraction(r, d_opt, lambda_nm))


def _golden_section(func, a: float, b: float, tol: float = 1e-9, max_iter: int = 200) -> float:
    """Minimize a unimodal function on [a, b]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = func(d)
    return 0.5 * (a + b)


def spacing_sweep(stack: LayerStack, lambda_nm: float, d_range, n_points: int = 401):
    """(spacings, f_up) arrays for export/plotting."""
    r = stack_reflectance(stack, lambda_nm)
    d = np.linspace(d_range[0], d_range[1], int(n_points))
    f = np.array([upward_fraction(r, di, lambda_nm) for di in d])
    return d, f


def write_sweep(path, spacings, f_up) -> None:
    with open(path, "w") as fh:
        fh.write("spacing_nm,f_up\n")
        for d, f in zip(np.asarray(spacings).tolist(), np.asarray(f_up).tolist()):
            fh.write(f"{d!r},{f!r}\n")


def read_stack(path) -> LayerStack:
    """Parse the documented stack description file."""
    ambient = None
    substrate = None
    layers: list[tuple[float, float]] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "ambient":
                if len(parts) != 2:
                    raise ValueError(f"{path}:{lineno}: expected 'ambient <index>'")
                ambient = float(parts[1])
            elif parts[0] == "substrate":
                if len(parts) != 2:
                    raise ValueError(f"{path}:{lineno}: expected 'substrate <index>'")
                substrate = float(parts[1])
            else:
                if len(parts) != 2:
                    raise ValueError(f"{path}:{lineno}: expected 'index thickness_nm'")
                layers.append((float(parts[0]), float(parts[1])))
    if ambient is None or substrate is None:
        raise ValueError(f"{path}: missing ambient/substrate header lines")
    return LayerStack(ambient_index=ambient, layers=tuple(layers), substrate_index=substrate)


def write_stack(path, stack: LayerStack) -> None:
    with open(path, "w") as fh:
        fh.write(f"ambient {stack.ambient_index!r}\n")
        fh.write(f"substrate {stack.substrate_index!r}\n")
        for n, d in stack.layers:
            fh.write(f"{n!r} {d!r}\n")

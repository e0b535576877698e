"""Cavity mode volume from discretized permittivity / field-intensity grids.

    V = [ sum_cells eps * |E|^2 * dV ] / max_cells( eps * |E|^2 )

i.e. the electromagnetic energy integral divided by the peak energy density
(the textbook definition; the denominator is a max over space, not a max of
an integral). Midpoint quadrature on a rectilinear grid; the discrete max is
used without interpolation. Fields come from external solvers or from the
synthetic generators below - nothing here computes E(r).

Grid file format (text, whitespace-separated, '#' comments allowed):

    dotcav-grid 1
    nx ny nz
    dx dy dz            # cell spacing in nm
    <nx*ny*nz values of eps,  row-major (z fastest)>
    <nx*ny*nz values of |E|^2, row-major (z fastest)>

Values may be split across lines arbitrarily. See tests for a round trip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_MAGIC = "dotcav-grid"
_FORMAT_VERSION = 1


@dataclass(frozen=True)
class FieldGrid:
    """Scalar permittivity and field intensity sampled at cell midpoints.

    eps and e_sq are (nx, ny, nz) arrays; spacing is (dx, dy, dz) in nm.
    """

    spacing: tuple[float, float, float]
    eps: np.ndarray
    e_sq: np.ndarray

    def __post_init__(self):
        eps = np.asarray(self.eps, dtype=float)
        e_sq = np.asarray(self.e_sq, dtype=float)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "e_sq", e_sq)
        if eps.ndim != 3 or e_sq.shape != eps.shape:
            raise ValueError("eps and e_sq must be 3-D arrays of identical shape")
        if min(eps.shape) < 1:
            raise ValueError("grid dimensions must be >= 1")
        if len(self.spacing) != 3 or any(d <= 0 for d in self.spacing):
            raise ValueError("cell spacings must be positive")
        if np.any(eps < 1.0):
            raise ValueError("relative permittivity must be >= 1 everywhere")
        if np.any(e_sq < 0.0):
            raise ValueError("field intensity must be non-negative")
        if not np.any(eps * e_sq > 0.0):
            raise ValueError("energy density is zero everywhere")

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.eps.shape

    @property
    def cell_volume(self) -> float:
        dx, dy, dz = self.spacing
        return dx * dy * dz


def mode_volume(grid: FieldGrid) -> float:
    """Mode volume in nm^3.

    The energy sum uses exact compensated summation (math.fsum), so the
    result is independent of any partitioning of the grid to well below the
    1e-12 relative level.
    """
    density = grid.eps * grid.e_sq
    peak = density.max()
    if peak <= 0.0:
        raise ValueError("energy density is zero everywhere; mode volume undefined")
    total = math.fsum(density.ravel().tolist())
    return total * grid.cell_volume / peak


def normalized_mode_volume(v_nm3: float, lambda_nm: float, n: float) -> float:
    """Mode volume in cubic-wavelength-in-material units, v / (lambda/n)^3."""
    if v_nm3 <= 0 or lambda_nm <= 0 or n <= 0:
        raise ValueError("volume, wavelength and index must be positive")
    return v_nm3 / (lambda_nm / n) ** 3


# ---------------------------------------------------------------------------
# synthetic grids for tests and demos


def uniform_grid(shape=(8, 8, 8), spacing=(10.0, 10.0, 10.0), eps=1.0, e_sq=1.0) -> FieldGrid:
    """Constant eps and |E|^2 everywhere; V equals the domain volume."""
    nx, ny, nz = shape
    return FieldGrid(
        spacing=tuple(spacing),
        eps=np.full((nx, ny, nz), float(eps)),
        e_sq=np.full((nx, ny, nz), float(e_sq)),
    )


def sine_box_grid(n_per_axis=64, box_nm=(400.0, 300.0, 200.0), eps=1.0) -> FieldGrid:
    """Fundamental box mode E = sin(pi x/a) sin(pi y/b) sin(pi z/c), uniform eps.

    The continuum mode volume is a*b*c/8; midpoint sampling converges to it
    from above as the grid refines (the discrete peak slightly undershoots 1).
    """
    a, b, c = box_nm
    n = int(n_per_axis)
    dx, dy, dz = a / n, b / n, c / n
    x = (np.arange(n) + 0.5) * dx
    y = (np.arange(n) + 0.5) * dy
    z = (np.arange(n) + 0.5) * dz
    ex = np.sin(np.pi * x / a)
    ey = np.sin(np.pi * y / b)
    ez = np.sin(np.pi * z / c)
    e = ex[:, None, None] * ey[None, :, None] * ez[None, None, :]
    return FieldGrid(
        spacing=(dx, dy, dz),
        eps=np.full((n, n, n), float(eps)),
        e_sq=e * e,
    )


# ---------------------------------------------------------------------------
# file I/O


def write_grid(path, grid: FieldGrid) -> None:
    """Write a FieldGrid in the documented text layout (full precision)."""
    nx, ny, nz = grid.shape
    dx, dy, dz = grid.spacing
    with open(path, "w") as fh:
        fh.write(f"{_MAGIC} {_FORMAT_VERSION}\n")
        fh.write(f"{nx} {ny} {nz}\n")
        fh.write(f"{dx!r} {dy!r} {dz!r}\n")
        for arr in (grid.eps, grid.e_sq):
            flat = arr.ravel()
            for start in range(0, flat.size, 6):
                fh.write(" ".join(repr(v) for v in flat[start:start + 6].tolist()) + "\n")


def read_grid(path) -> FieldGrid:
    """Parse the documented grid layout back into a FieldGrid."""
    with open(path) as fh:
        tokens: list[str] = []
        for line in fh:
            line = line.split("#", 1)[0]
            tokens.extend(line.split())
    if len(tokens) < 2 or tokens[0] != _MAGIC:
        raise ValueError(f"{path}: not a {_MAGIC} file")
    if int(tokens[1]) != _FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported format version {tokens[1]}")
    nx, ny, nz = (int(t) for t in tokens[2:5])
    dx, dy, dz = (float(t) for t in tokens[5:8])
    n = nx * ny * nz
    values = tokens[8:]
    if len(values) != 2 * n:
        raise ValueError(f"{path}: expected {2 * n} data values, found {len(values)}")
    eps = np.array(values[:n], dtype=float).reshape(nx, ny, nz)
    e_sq = np.array(values[n:], dtype=float).reshape(nx, ny, nz)
    return FieldGrid(spacing=(dx, dy, dz), eps=eps, e_sq=e_sq)

"""Cavity photoluminescence spectra: synthesis and Lorentzian peak fitting.

The measured quality factor of a cavity is extracted by fitting

    model(lambda) = offset + amplitude * (f/2)^2 / ((lambda-lambda0)^2 + (f/2)^2)

to a spectrum and reporting Q = lambda0 / f (f = FWHM). The fit is a
hand-rolled damped least-squares (Levenberg-Marquardt style) loop on the
normal equations with adaptive damping; analytic Jacobian; it converges when
the relative parameter step drops below 1e-10 (or gives up after 200
iterations and raises FitFailedError with diagnostics).

Spectrum files are two-column CSV (wavelength_nm, counts).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FitFailedError
from .rng import DOMAIN_SPECTRUM, philox_stream

_MAX_ITER = 200
_STEP_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Sampled intensity vs wavelength; wavelengths strictly increasing."""

    wavelengths: np.ndarray  # nm
    counts: np.ndarray

    def __post_init__(self):
        wl = np.asarray(self.wavelengths, dtype=float)
        ct = np.asarray(self.counts, dtype=float)
        object.__setattr__(self, "wavelengths", wl)
        object.__setattr__(self, "counts", ct)
        if wl.ndim != 1 or wl.shape != ct.shape:
            raise ValueError("wavelengths and counts must be 1-D arrays of equal length")
        if wl.size < 8:
            raise ValueError("need at least 8 samples")
        if np.any(np.diff(wl) <= 0):
            raise ValueError("wavelengths must be strictly increasing")
        if np.any(ct < 0):
            raise ValueError("counts must be non-negative")


@dataclass(frozen=True)
class LorentzianFit:
    lambda0_nm: float
    fwhm_nm: float
    amplitude: float
    offset: float
    residual_norm: float   # RMS residual / fitted amplitude
    n_iterations: int

    @property
    def q(self) -> float:
        return self.lambda0_nm / self.fwhm_nm


def lorentzian(wl, lambda0, fwhm, amplitude, offset):
    h2 = (0.5 * fwhm) ** 2
    return offset + amplitude * h2 / ((wl - lambda0) ** 2 + h2)


def synthesize_spectrum(
    lambda0_nm: float,
    q: float,
    amplitude: float = 1000.0,
    offset: float = 50.0,
    noise_rel: float = 0.0,
    n_points: int = 200,
    span_fwhm: float = 10.0,
    seed: int = 0,
) -> Spectrum:
    """Lorentzian line plus multiplicative Gaussian noise of relative sigma noise_rel.

    Samples n_points wavelengths uniformly over lambda0 +- span_fwhm*fwhm/2.
    Deterministic for a given seed.
    """
    if q <= 0:
        raise ValueError("quality factor must be positive")
    if lambda0_nm <= 0 or amplitude <= 0 or offset < 0:
        raise ValueError("invalid line-shape parameters")
    if noise_rel < 0 or n_points < 8 or span_fwhm <= 0:
        raise ValueError("invalid sampling parameters")
    fwhm = lambda0_nm / q
    half_span = 0.5 * span_fwhm * fwhm
    wl = np.linspace(lambda0_nm - half_span, lambda0_nm + half_span, int(n_points))
    counts = lorentzian(wl, lambda0_nm, fwhm, amplitude, offset)
    if noise_rel > 0:
        z = philox_stream(seed, DOMAIN_SPECTRUM).standard_normal(wl.size)
        counts = np.clip(counts * (1.0 + noise_rel * z), 0.0, None)
    return Spectrum(wavelengths=wl, counts=counts)


def _initial_guess(wl, ct):
    offset = float(ct.min())
    peak_idx = int(np.argmax(ct))
    amplitude = float(ct[peak_idx] - offset)
    half = offset + 0.5 * amplitude
    # first half-max crossings walking outward from the peak
    left = wl[0]
    for i in range(peak_idx, 0, -1):
        if ct[i - 1] <= half <= ct[i]:
            frac = (half - ct[i - 1]) / (ct[i] - ct[i - 1])
            left = wl[i - 1] + frac * (wl[i] - wl[i - 1])
            break
    right = wl[-1]
    for i in range(peak_idx, wl.size - 1):
        if ct[i + 1] <= half <= ct[i]:
            frac = (ct[i] - half) / (ct[i] - ct[i + 1])
            right = wl[i] + frac * (wl[i + 1] - wl[i])
            break
    fwhm = right - left
    if fwhm <= 0:
        fwhm = (wl[-1] - wl[0]) / 4.0
    return np.array([wl[peak_idx], fwhm, amplitude, offset])


def _jacobian(wl, p):
    lambda0, fwhm, amplitude, offset = p
    h = 0.5 * fwhm
    d = wl - lambda0
    denom = d * d + h * h
    jac = np.empty((wl.size, 4))
    jac[:, 0] = amplitude * h * h * 2.0 * d / (denom * denom)
    jac[:, 1] = amplitude * h * d * d / (denom * denom)  # d/dfwhm = a*2h*d^2/denom^2 * dh/df
    jac[:, 2] = h * h / denom
    jac[:, 3] = 1.0
    return jac


def fit_lorentzian(spectrum: Spectrum) -> LorentzianFit:
    """Least-squares Lorentzian fit of (lambda0, fwhm, amplitude, offset).

    Initialization: lambda0 at the count maximum, offset at the minimum,
    fwhm from the half-max crossing width. Raises FitFailedError on flat
    input or non-convergence.
    """
    wl = spectrum.wavelengths
    ct = spectrum.counts
    if ct.max() <= ct.min():
        raise FitFailedError("flat spectrum: no discernible peak above the offset estimate")

    p = _initial_guess(wl, ct)
    resid = lorentzian(wl, *p) - ct
    cost = float(resid @ resid)
    damping = 1e-3
    n_iter = 0
    converged = False
    for n_iter in range(1, _MAX_ITER + 1):
        jac = _jacobian(wl, p)
        jtj = jac.T @ jac
        jtr = jac.T @ resid
        accepted = False
        for _ in range(25):
            a = jtj + damping * np.diag(np.diag(jtj))
            try:
                step = np.linalg.solve(a, -jtr)
            except np.linalg.LinAlgError:
                damping *= 10.0
                continue
            p_new = p + step
            p_new[1] = abs(p_new[1])  # model is even in fwhm
            resid_new = lorentzian(wl, *p_new) - ct
            cost_new = float(resid_new @ resid_new)
            if np.isfinite(cost_new) and cost_new <= cost:
                accepted = True
                break
            damping *= 10.0
        if not accepted:
            raise FitFailedError(
                f"damping exhausted after {n_iter} iterations (cost {cost:.6g})"
            )
        rel_step = np.max(np.abs(step) / (np.abs(p_new) + 1e-300))
        p, resid, cost = p_new, resid_new, cost_new
        damping = max(damping / 3.0, 1e-12)
        if rel_step < _STEP_TOL:
            converged = True
            break
    if not converged:
        raise FitFailedError(
            f"no convergence in {_MAX_ITER} iterations (last relative step {rel_step:.3g})"
        )
    lambda0, fwhm, amplitude, offset = p
    if fwhm <= 0 or amplitude <= 0:
        raise FitFailedError(f"degenerate optimum: fwhm={fwhm:.3g}, amplitude={amplitude:.3g}")
    rms = float(np.sqrt(cost / wl.size))
    return LorentzianFit(
        lambda0_nm=float(lambda0),
        fwhm_nm=float(fwhm),
        amplitude=float(amplitude),
        offset=float(offset),
        residual_norm=rms / float(amplitude),
        n_iterations=n_iter,
    )


def format_fit_report(fit: LorentzianFit) -> str:
    """Flat key = value rendering of a fit result."""
    pairs = [
        ("lambda0_nm", fit.lambda0_nm),
        ("fwhm_nm", fit.fwhm_nm),
        ("q", fit.q),
        ("amplitude", fit.amplitude),
        ("offset", fit.offset),
        ("residual_norm", fit.residual_norm),
        ("n_iterations", fit.n_iterations),
    ]
    return "".join(f"{key} = {value!r}\n" for key, value in pairs)


def write_fit_report(path, fit: LorentzianFit) -> None:
    with open(path, "w") as fh:
        fh.write(format_fit_report(fit))


def write_spectrum(path, spectrum: Spectrum) -> None:
    with open(path, "w") as fh:
        fh.write("wavelength_nm,counts\n")
        for wl, ct in zip(spectrum.wavelengths.tolist(), spectrum.counts.tolist()):
            fh.write(f"{wl!r},{ct!r}\n")


def read_spectrum(path) -> Spectrum:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 2:
        raise ValueError(f"{path}: expected two columns (wavelength_nm, counts)")
    return Spectrum(wavelengths=data[:, 0], counts=data[:, 1])

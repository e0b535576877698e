"""Two-photon interference (wavepacket overlap) by Monte Carlo.

Each trial draws two photons from the same source model used everywhere in
the package: start time t0 ~ Exp(delta) (the excitation-relaxation jitter;
exactly 0 with no_jitter=True), amplitude sqrt(G) exp(-G (t - t0)/2) for
t >= t0, and an independent diffusing phase whose increments have variance
rate alpha, so the single-photon coherence decays as exp(-(alpha/2)|t-s|).
The squared overlap |integral psi1* psi2 dt|^2 is evaluated on a midpoint
time grid and averaged over trials. The overlap depends on the two phases
only through their difference - itself a diffusion at rate 2*alpha - so
each trial draws that relative phase path directly (an exact
reparametrization, not an approximation).

Closed-form targets the estimator must reproduce (used as test oracles):

    E[overlap] = G/(G+alpha)                    with no jitter,
    E[overlap] = G/(G+alpha) * delta/(delta+G)  with Exp(delta) jitter.

Every trial owns a counter-based random stream keyed by (seed, trial index),
so the estimate is a pure function of (seed, parameters) and independent of
how trials are distributed over worker threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..rng import DOMAIN_HOM, philox_stream
from .backend import get_kernels

_TRIAL_CHUNK = 1024  # trials per kernel call; has no effect on the draws


@dataclass(frozen=True)
class HomEstimate:
    mean_overlap: float
    std_error: float
    trials: int


def hom_overlap_mc(
    gamma: float,
    alpha: float,
    delta: float | None = None,
    trials: int = 10_000,
    no_jitter: bool = False,
    span_lifetimes: float = 8.0,
    points_per_lifetime: int = 200,
    seed: int = 0,
    threads: int = 1,
    backend: str | None = None,
) -> HomEstimate:
    """Mean squared two-photon overlap, with its Monte Carlo standard error."""
    if gamma <= 0:
        raise ValueError("radiative rate must be positive")
    if alpha < 0:
        raise ValueError("dephasing rate must be non-negative")
    if not no_jitter and (delta is None or delta <= 0):
        raise ValueError("relaxation rate must be positive (or pass no_jitter=True)")
    if trials < 1:
        raise ValueError("need at least one trial")
    if span_lifetimes <= 0 or points_per_lifetime < 2:
        raise ValueError("degenerate time grid")

    n_grid = int(round(span_lifetimes * points_per_lifetime))
    dt = 1.0 / (gamma * points_per_lifetime)
    t_mid = (np.arange(n_grid) + 0.5) * dt
    sigma_step = math.sqrt(2.0 * alpha * dt)  # relative-phase diffusion rate
    kern = get_kernels(backend)

    overlaps = np.empty(trials, dtype=np.float64)

    def _run_chunk(start: int) -> None:
        n = min(_TRIAL_CHUNK, trials - start)
        t01 = np.zeros(n)
        t02 = np.zeros(n)
        z = np.empty((n, n_grid)) if alpha > 0 else None
        for i in range(n):
            g = philox_stream(seed, DOMAIN_HOM, start + i)
            if not no_jitter:
                starts = g.standard_exponential(2) / delta
                t01[i] = starts[0]
                t02[i] = starts[1]
            if alpha > 0:
                g.standard_normal(out=z[i])
        overlaps[start:start + n] = kern.hom_overlap_chunk(
            t_mid, dt, gamma, t01, t02, sigma_step, z
        )

    starts = range(0, trials, _TRIAL_CHUNK)
    if threads > 1 and trials > _TRIAL_CHUNK:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            list(pool.map(_run_chunk, starts))
    else:
        for s in starts:
            _run_chunk(s)

    mean = float(np.mean(overlaps))
    if trials > 1:
        std_error = float(np.std(overlaps, ddof=1) / math.sqrt(trials))
    else:
        std_error = 0.0
    return HomEstimate(mean_overlap=mean, std_error=std_error, trials=trials)

"""Pure numpy implementations of the Monte Carlo hot kernels.

Fallback used when the compiled extension is unavailable (or when forced via
DOTCAV_BACKEND=python). Semantics match dotcav/photonstats/_kernels.pyx:
the histogram kernel is bitwise identical across backends (integer counts of
exactly-rounded float comparisons); the interference kernel agrees to float
roundoff in the transcendental calls.
"""

import numpy as np

BACKEND_NAME = "python"

_PAIR_CHUNK = 65536  # t1 rows per vectorized block; bounds peak memory


def pair_time_histogram(t1, t2, bin_width, max_lag, n_bins):
    """Histogram of all pairwise differences t2[j] - t1[i] with |tau| <= max_lag.

    Both inputs must be sorted ascending. Bin k covers
    [-max_lag + k*bin_width, ...); the closed right edge tau = +max_lag is
    clamped into the last bin.
    """
    counts = np.zeros(int(n_bins), dtype=np.int64)
    t1 = np.ascontiguousarray(t1, dtype=np.float64)
    t2 = np.ascontiguousarray(t2, dtype=np.float64)
    if t1.size == 0 or t2.size == 0:
        return counts
    inv_bw = 1.0 / bin_width
    for s in range(0, t1.size, _PAIR_CHUNK):
        c = t1[s:s + _PAIR_CHUNK]
        lo = np.searchsorted(t2, c - max_lag, side="left")
        hi = np.searchsorted(t2, c + max_lag, side="right")
        runs = hi - lo
        total = int(runs.sum())
        if total == 0:
            continue
        # enumerate the ragged index ranges lo[i] .. hi[i]
        owner = np.repeat(np.arange(c.size), runs)
        starts = np.concatenate(([0], np.cumsum(runs)[:-1]))
        j = np.arange(total) - np.repeat(starts, runs) + np.repeat(lo, runs)
        tau = t2[j] - c[owner]
        idx = np.floor((tau + max_lag) * inv_bw).astype(np.int64)
        np.clip(idx, 0, n_bins - 1, out=idx)
        counts += np.bincount(idx, minlength=int(n_bins)).astype(np.int64)
    return counts


def hom_overlap_chunk(t_mid, dt, gamma, t01, t02, sigma_step, rel_normals):
    """Squared wavepacket overlap |integral psi1* psi2 dt|^2 for a chunk of trials.

    t_mid: (n,) midpoint time grid. t01, t02: (C,) photon start times.
    rel_normals: (C, n) standard-normal increments of the RELATIVE phase
    (the two independent single-photon diffusions enter only through their
    difference, a diffusion at twice the rate), or None without dephasing;
    sigma_step = sqrt(2 * alpha * dt). The amplitude product collapses to one
    exponential, gamma * exp(-0.5*gamma*(2t - t01 - t02)) on t >= max(t01, t02).
    """
    t01 = np.asarray(t01, dtype=np.float64)
    t02 = np.asarray(t02, dtype=np.float64)
    t_start = np.maximum(t01, t02)[:, None]
    expo = -0.5 * gamma * (2.0 * t_mid[None, :] - (t01 + t02)[:, None])
    w = np.where(t_mid[None, :] >= t_start, gamma * np.exp(np.minimum(expo, 0.0)), 0.0)
    if rel_normals is None:
        s = w.sum(axis=1) * dt
        return s * s
    dphi = sigma_step * np.cumsum(rel_normals, axis=1)
    re = (w * np.cos(dphi)).sum(axis=1) * dt
    im = (w * np.sin(dphi)).sum(axis=1) * dt
    return re * re + im * im

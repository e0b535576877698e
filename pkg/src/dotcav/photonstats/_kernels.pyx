# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Monte Carlo hot kernels (see _kernels_py.py for the fallback).

Same call signatures and semantics as the pure numpy versions; the pair
histogram is bitwise identical, the interference kernel identical up to the
last-ulp behaviour of exp/cos/sin.
"""

import numpy as np

cimport cython
cimport numpy as cnp
from libc.math cimport cos, exp, floor, sin

cnp.import_array()

BACKEND_NAME = "compiled"


def pair_time_histogram(t1, t2, double bin_width, double max_lag, long n_bins):
    """Histogram of all pairwise differences t2[j] - t1[i] with |tau| <= max_lag."""
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts = np.zeros(n_bins, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.ascontiguousarray(t1, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] b = np.ascontiguousarray(t2, dtype=np.float64)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return counts
    _pair_hist(a, b, bin_width, max_lag, n_bins, counts)
    return counts


@cython.boundscheck(False)
cdef void _pair_hist(
    double[::1] t1,
    double[::1] t2,
    double bin_width,
    double max_lag,
    long n_bins,
    cnp.int64_t[::1] counts,
) noexcept nogil:
    cdef Py_ssize_t n1 = t1.shape[0]
    cdef Py_ssize_t n2 = t2.shape[0]
    cdef Py_ssize_t i, j, lo = 0, hi = 0
    cdef double ti, tau, inv_bw = 1.0 / bin_width
    cdef long idx
    for i in range(n1):
        ti = t1[i]
        while lo < n2 and t2[lo] < ti - max_lag:
            lo += 1
        if hi < lo:
            hi = lo
        while hi < n2 and t2[hi] <= ti + max_lag:
            hi += 1
        for j in range(lo, hi):
            tau = t2[j] - ti
            idx = <long>floor((tau + max_lag) * inv_bw)
            if idx < 0:
                idx = 0
            elif idx >= n_bins:
                idx = n_bins - 1
            counts[idx] += 1


def hom_overlap_chunk(t_mid, double dt, double gamma, t01, t02,
                      double sigma_step, rel_normals):
    """Squared wavepacket overlap |integral psi1* psi2 dt|^2 per trial."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] grid = np.ascontiguousarray(t_mid, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s1 = np.ascontiguousarray(t01, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s2 = np.ascontiguousarray(t02, dtype=np.float64)
    cdef Py_ssize_t n_trials = s1.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n_trials, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] z
    if rel_normals is None:
        _hom_chunk_nophase(grid, dt, gamma, s1, s2, out)
    else:
        z = np.ascontiguousarray(rel_normals, dtype=np.float64)
        _hom_chunk(grid, dt, gamma, s1, s2, sigma_step, z, out)
    return out


cdef void _hom_chunk_nophase(
    double[::1] grid, double dt, double gamma,
    double[::1] t01, double[::1] t02, double[::1] out,
) noexcept nogil:
    cdef Py_ssize_t c, k, n = grid.shape[0]
    cdef double t_start, s, expo, acc
    for c in range(t01.shape[0]):
        t_start = t01[c] if t01[c] > t02[c] else t02[c]
        s = t01[c] + t02[c]
        acc = 0.0
        for k in range(n):
            if grid[k] >= t_start:
                expo = -0.5 * gamma * (2.0 * grid[k] - s)
                if expo > 0.0:
                    expo = 0.0
                acc += gamma * exp(expo)
        acc *= dt
        out[c] = acc * acc


cdef void _hom_chunk(
    double[::1] grid, double dt, double gamma,
    double[::1] t01, double[::1] t02, double sigma_step,
    double[:, ::1] z, double[::1] out,
) noexcept nogil:
    cdef Py_ssize_t c, k, n = grid.shape[0]
    cdef double t_start, s, expo, w, dphi, cum, re, im
    for c in range(t01.shape[0]):
        t_start = t01[c] if t01[c] > t02[c] else t02[c]
        s = t01[c] + t02[c]
        re = 0.0
        im = 0.0
        cum = 0.0
        for k in range(n):
            cum += z[c, k]
            if grid[k] >= t_start:
                expo = -0.5 * gamma * (2.0 * grid[k] - s)
                if expo > 0.0:
                    expo = 0.0
                w = gamma * exp(expo)
                dphi = sigma_step * cum
                re += w * cos(dphi)
                im += w * sin(dphi)
        re *= dt
        im *= dt
        out[c] = re * re + im * im

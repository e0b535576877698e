"""Compiled-extension kernels against the pure numpy fallbacks.

The histogram kernel must agree bitwise (it is integer counting over
exactly-rounded float arithmetic); the interference kernel may differ in the
last ulps of exp/cos/sin, so it is held to a tight relative tolerance.
"""

import math

import numpy as np
import pytest

from dotcav.photonstats import PulseTrainConfig, hbt_correlate, hom_overlap_mc, simulate_emission_train
from dotcav.photonstats.backend import get_kernels
from dotcav.photonstats import _kernels_py

try:
    from dotcav.photonstats import _kernels  # noqa: F401
    HAVE_COMPILED = True
except ImportError:
    HAVE_COMPILED = False

needs_compiled = pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernels not built")


def test_backend_selection():
    assert get_kernels("python") is _kernels_py
    with pytest.raises(ValueError):
        get_kernels("fortran")


@needs_compiled
def test_pair_histogram_bitwise_identical():
    rng = np.random.default_rng(0)
    t1 = np.sort(rng.uniform(0.0, 5000.0, 20_000))
    t2 = np.sort(rng.uniform(0.0, 5000.0, 20_000))
    for bw, lag in [(0.1, 39.0), (0.25, 20.0), (1.0, 13.0)]:
        n_bins = int(round(2 * lag / bw))
        a = get_kernels("compiled").pair_time_histogram(t1, t2, bw, lag, n_bins)
        b = get_kernels("python").pair_time_histogram(t1, t2, bw, lag, n_bins)
        np.testing.assert_array_equal(a, b)
        assert a.sum() > 0


@needs_compiled
def test_pair_histogram_edge_cases_match():
    # duplicated times, taus exactly on the +max_lag edge, empty detectors
    t1 = np.array([0.0, 1.0, 1.0, 2.0])
    t2 = np.array([0.0, 1.0, 3.0, 3.0])
    for kern in (get_kernels("compiled"), get_kernels("python")):
        counts = kern.pair_time_histogram(t1, t2, 0.5, 1.0, 4)
        assert counts.sum() == 9  # all |tau| <= 1 pairs, +1.0 clamped into last bin
    a = get_kernels("compiled").pair_time_histogram(t1, t2, 0.5, 1.0, 4)
    b = get_kernels("python").pair_time_histogram(t1, t2, 0.5, 1.0, 4)
    np.testing.assert_array_equal(a, b)
    empty = get_kernels("compiled").pair_time_histogram(np.array([]), t2, 0.5, 1.0, 4)
    np.testing.assert_array_equal(empty, np.zeros(4, dtype=np.int64))


@needs_compiled
def test_hbt_same_histogram_on_both_backends():
    rec = simulate_emission_train(
        PulseTrainConfig(n_pulses=100_000, gamma=2.0, delta=100.0,
                         multi_excitation_prob=0.25, seed=17)
    )
    hc = hbt_correlate(rec, backend="compiled")
    hp = hbt_correlate(rec, backend="python")
    np.testing.assert_array_equal(hc.counts, hp.counts)
    assert hc.normalization == hp.normalization


@needs_compiled
def test_hom_kernel_close_across_backends():
    rng = np.random.default_rng(1)
    n, trials = 800, 64
    dt = 1.0 / (7.07 * 100)
    t_mid = (np.arange(n) + 0.5) * dt
    t01 = rng.exponential(0.01, trials)
    t02 = rng.exponential(0.01, trials)
    z = rng.standard_normal((trials, n))
    a = get_kernels("compiled").hom_overlap_chunk(
        t_mid, dt, 7.07, t01, t02, math.sqrt(2.0 * dt), z
    )
    b = get_kernels("python").hom_overlap_chunk(
        t_mid, dt, 7.07, t01, t02, math.sqrt(2.0 * dt), z
    )
    np.testing.assert_allclose(a, b, rtol=1e-10)
    # no-dephasing variant
    a0 = get_kernels("compiled").hom_overlap_chunk(t_mid, dt, 7.07, t01, t02, 0.0, None)
    b0 = get_kernels("python").hom_overlap_chunk(t_mid, dt, 7.07, t01, t02, 0.0, None)
    np.testing.assert_allclose(a0, b0, rtol=1e-12)


@needs_compiled
def test_hom_estimates_close_across_backends():
    kw = dict(gamma=7.0710678, alpha=1.0, delta=100.0, trials=2_000, seed=21)
    a = hom_overlap_mc(backend="compiled", **kw)
    b = hom_overlap_mc(backend="python", **kw)
    assert a.mean_overlap == pytest.approx(b.mean_overlap, rel=1e-11)
    assert a.std_error == pytest.approx(b.std_error, rel=1e-8)

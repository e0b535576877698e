"""Intensity cross-correlation histograms and what they measure.

hbt_correlate bins every D1 x D2 detection-time difference of a photon
record into a histogram over |tau| <= max_lag. For a pulsed source the
histogram is a comb of peaks at multiples of the repetition period T; the
areas are normalized so the mean side peak (|m| >= 1, complete windows only)
has area 1, which makes the central-peak area the standard g2(0) estimate.

extract_lifetime_from_sidepeaks recovers the radiative rate from the
exponential broadening of the side peaks: within window m the expected
profile is the periodically wrapped two-sided exponential

    S_m(u) = sum_k exp(-G |u - k T|)  -  exp(-G (|m| T + sign(m) u))

(u = tau - m T; the subtracted term is the absent same-pulse contribution of
a single-photon train). The rate is fitted by maximizing the binned Poisson
log-likelihood of that shape, pooled over all complete side windows, so both
window truncation and tail leakage between neighbouring peaks are modelled
exactly. Dark counts are not modelled as a background term; feed it
dark-free records for unbiased rates.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import FitFailedError, NormalizationError
from .backend import get_kernels
from .train import PhotonRecords

_T1_CHUNK = 65536  # fixed work-splitting unit; independent of thread count


@dataclass(frozen=True)
class CorrelationHistogram:
    counts: np.ndarray        # raw pair counts per bin, int64
    bin_width: float          # ns
    max_lag: float            # ns (snapped to a whole number of bins)
    rep_period: float         # ns
    normalization: float      # mean complete-side-peak area (raw counts)

    @property
    def n_bins(self) -> int:
        return self.counts.size

    @property
    def bin_centers(self) -> np.ndarray:
        return -self.max_lag + (np.arange(self.n_bins) + 0.5) * self.bin_width

    @property
    def max_complete_peak(self) -> int:
        """Largest |m| whose full window [mT - T/2, mT + T/2] is covered."""
        return int(math.floor((self.max_lag - self.rep_period / 2.0) / self.rep_period + 1e-9))

    def window_slice(self, m: int) -> slice:
        """Bins whose centers fall in [m*T - T/2, m*T + T/2)."""
        centers = self.bin_centers
        lo = float(m * self.rep_period - self.rep_period / 2.0)
        hi = float(m * self.rep_period + self.rep_period / 2.0)
        return slice(
            int(np.searchsorted(centers, lo, side="left")),
            int(np.searchsorted(centers, hi, side="left")),
        )

    def peak_area(self, m: int) -> float:
        return float(self.counts[self.window_slice(m)].sum())

    @property
    def normalized_counts(self) -> np.ndarray:
        return self.counts / self.normalization


def hbt_correlate(
    records: PhotonRecords,
    bin_width: float = 0.1,
    max_lag: float | None = None,
    threads: int = 1,
    backend: str | None = None,
) -> CorrelationHistogram:
    """Cross-correlation histogram of the two detectors of an HBT setup.

    max_lag defaults to 3 repetition periods and is snapped to a whole number
    of bins. Raises NormalizationError when there are no cross-detector pairs
    or no complete side peak to normalize against.
    """
    if bin_width <= 0:
        raise ValueError("bin width must be positive")
    if max_lag is None:
        max_lag = 3.0 * records.rep_period
    if max_lag <= 0:
        raise ValueError("max_lag must be positive")
    n_bins = max(1, int(round(2.0 * max_lag / bin_width)))
    max_lag = n_bins * bin_width / 2.0

    t1 = records.detector_times(0)
    t2 = records.detector_times(1)
    if t1.size == 0 or t2.size == 0:
        raise NormalizationError(
            f"no cross-detector pairs (D1: {t1.size} events, D2: {t2.size} events)"
        )

    kern = get_kernels(backend)
    chunks = [t1[s:s + _T1_CHUNK] for s in range(0, t1.size, _T1_CHUNK)]

    def _one(chunk):
        return kern.pair_time_histogram(chunk, t2, bin_width, max_lag, n_bins)

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            parts = list(pool.map(_one, chunks))
    else:
        parts = [_one(c) for c in chunks]
    counts = np.sum(parts, axis=0, dtype=np.int64) if parts else np.zeros(n_bins, np.int64)

    hist = CorrelationHistogram(
        counts=counts,
        bin_width=bin_width,
        max_lag=max_lag,
        rep_period=records.rep_period,
        normalization=1.0,
    )
    m_max = hist.max_complete_peak
    if m_max < 1:
        raise NormalizationError(
            "max_lag too short: no complete side peak inside the histogram range"
        )
    side = [hist.peak_area(m) for m in range(1, m_max + 1)]
    side += [hist.peak_area(-m) for m in range(1, m_max + 1)]
    norm = float(np.mean(side))
    if norm <= 0:
        raise NormalizationError("all side-peak areas are zero")
    return CorrelationHistogram(
        counts=counts,
        bin_width=bin_width,
        max_lag=max_lag,
        rep_period=records.rep_period,
        normalization=norm,
    )


def g2_zero(hist: CorrelationHistogram) -> float:
    """Central-peak area divided by the mean side-peak area."""
    if hist.max_complete_peak < 2:
        raise ValueError("histogram must cover complete peaks out to |m| = 2")
    if hist.normalization <= 0:
        raise NormalizationError("zero side-peak area")
    return hist.peak_area(0) / hist.normalization


# ---------------------------------------------------------------------------
# side-peak lifetime fit


def _window_model_integral(gamma, a, b, m, rep_period):
    """Integral over [a, b] (u-coordinates) of the window-m profile S_m."""
    t = rep_period
    g = gamma
    # k = 0 term of the wrap sum
    if a >= 0.0:
        k0 = (math.exp(-g * a) - math.exp(-g * b)) / g
    elif b <= 0.0:
        k0 = (math.exp(g * b) - math.exp(g * a)) / g
    else:
        k0 = (2.0 - math.exp(g * a) - math.exp(-g * b)) / g
    # k >= 1 and k <= -1 geometric tails; written overflow-safe
    denom = g * (1.0 - math.exp(-g * t))
    tail_pos = (math.exp(-g * (t - b)) - math.exp(-g * (t - a))) / denom
    tail_neg = (math.exp(-g * (t + a)) - math.exp(-g * (t + b))) / denom
    # subtract the absent same-pulse component
    mt = abs(m) * t
    if m > 0:
        missing = (math.exp(-g * (mt + a)) - math.exp(-g * (mt + b))) / g
    else:
        missing = (math.exp(-g * (mt - b)) - math.exp(-g * (mt - a))) / g
    return k0 + tail_pos + tail_neg - missing


def _pooled_log_likelihood(gamma, windows):
    ll = 0.0
    for m, rep_period, edges, counts in windows:
        total = _window_model_integral(gamma, edges[0], edges[-1], m, rep_period)
        if total <= 0.0:
            return -math.inf
        for i, c in enumerate(counts):
            if c == 0:
                continue
            p = _window_model_integral(gamma, edges[i], edges[i + 1], m, rep_period) / total
            if p <= 0.0:
                return -math.inf
            ll += c * math.log(p)
    return ll


def _golden_max(func, lo, hi, tol=1e-12, max_iter=300):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = func(d)
    return 0.5 * (a + b)


def extract_lifetime_from_sidepeaks(hist: CorrelationHistogram, min_counts: int = 1000) -> float:
    """Radiative rate (1/ns) from the exponential side-peak broadening.

    Pools every complete side window holding at least `min_counts` pairs and
    maximizes the binned Poisson likelihood of the wrapped two-sided
    exponential over the rate. Needs at least two usable side peaks.
    """
    m_max = hist.max_complete_peak
    usable = []
    areas = {}
    for m in [m for k in range(1, m_max + 1) for m in (k, -k)]:
        sl = hist.window_slice(m)
        counts = hist.counts[sl]
        area = float(counts.sum())
        areas[m] = area
        if area >= min_counts:
            edges = -hist.max_lag + np.arange(sl.start, sl.stop + 1) * hist.bin_width \
                - m * hist.rep_period
            usable.append((m, hist.rep_period, edges, counts))
    if len(usable) < 2:
        raise FitFailedError(
            f"need at least two side peaks with >= {min_counts} counts; areas: {areas}"
        )

    # moment-based starting point: mean |u| of the pooled windows
    wsum = 0.0
    csum = 0.0
    for m, _, edges, counts in usable:
        centers = 0.5 * (edges[:-1] + edges[1:])
        wsum += float(np.sum(np.abs(centers) * counts))
        csum += float(np.sum(counts))
    mean_abs = max(wsum / csum, 1e-9)
    g0 = 1.0 / mean_abs

    ln_g = _golden_max(
        lambda lg: _pooled_log_likelihood(math.exp(lg), usable),
        math.log(g0 / 50.0),
        math.log(g0 * 50.0),
    )
    return math.exp(ln_g)


def write_histogram(path, hist: CorrelationHistogram) -> None:
    """CSV export (bin_center_ns, normalized_count)."""
    with open(path, "w") as fh:
        fh.write("bin_center_ns,normalized_count\n")
        for c, v in zip(hist.bin_centers.tolist(), hist.normalized_counts.tolist()):
            fh.write(f"{c!r},{v!r}\n")

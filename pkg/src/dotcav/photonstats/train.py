"""Pulsed-excitation photon emission trains and their detection records.

Model: an instantaneous excitation pulse every rep_period; the excited system
relaxes through a feeding stage (rate delta, the arrival-time jitter) and
then emits (radiative rate gamma), so each photon lands at

    t = pulse_start + Exp(delta) + Exp(gamma).

Two source models:

- "single":  one photon with probability excitation_prob, plus at most one
             extra photon with probability multi_excitation_prob (re-drawn
             delays) - the imperfect single-photon source.
- "poisson": photon number per pulse ~ Poisson(excitation_prob), the
             attenuated-laser comparison source (multi_excitation_prob
             must be 0 there).

Detection: every photon is routed to detector D1 or D2 with probability 1/2
(the beamsplitter of an intensity-correlation setup), kept with probability
`efficiency`, and merged with dark counts drawn as a Poisson process over the
full span. Records are sorted by detection time.

Randomness comes from counter-based streams: emission uses one stream per
65536-pulse block, dark counts a dedicated stream, so a run is a pure
function of (seed, config) no matter how many worker threads execute it.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..rng import DOMAIN_DARK, DOMAIN_TRAIN, philox_stream

BLOCK_PULSES = 65536

SOURCE_MODELS = ("single", "poisson")


@dataclass(frozen=True)
class PulseTrainConfig:
    n_pulses: int
    gamma: float                        # radiative rate, 1/ns
    delta: float                        # feeding/jitter rate, 1/ns
    rep_period: float = 13.0            # ns
    excitation_prob: float = 1.0        # Poisson mean in "poisson" mode
    multi_excitation_prob: float = 0.0
    dark_count_rate: float = 0.0        # 1/ns
    efficiency: float = 1.0
    source: str = "single"
    seed: int = 0

    def __post_init__(self):
        if self.n_pulses < 0:
            raise ValueError("n_pulses must be non-negative")
        if self.rep_period <= 0:
            raise ValueError("repetition period must be positive")
        if self.gamma <= 0 or self.delta <= 0:
            raise ValueError("gamma and delta must be positive")
        if self.source not in SOURCE_MODELS:
            raise ValueError(f"source must be one of {SOURCE_MODELS}")
        if self.source == "single" and not 0.0 <= self.excitation_prob <= 1.0:
            raise ValueError("excitation probability must lie in [0, 1]")
        if self.source == "poisson" and self.excitation_prob < 0:
            raise ValueError("poisson mean must be non-negative")
        if not 0.0 <= self.multi_excitation_prob <= 1.0:
            raise ValueError("multi-excitation probability must lie in [0, 1]")
        if self.source == "poisson" and self.multi_excitation_prob != 0.0:
            raise ValueError("poisson mode already draws the photon number; "
                             "multi_excitation_prob must be 0")
        if self.dark_count_rate < 0:
            raise ValueError("dark count rate must be non-negative")
        if not 0.0 <= self.efficiency <= 1.0:
            raise ValueError("detector efficiency must lie in [0, 1]")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")

    @property
    def span(self) -> float:
        return self.n_pulses * self.rep_period


@dataclass(frozen=True)
class PhotonRecords:
    """Detection records sorted by time.

    pulse_index: emission pulse for emitted photons; for dark counts, the
    pulse window the event falls into. detector: 0 for D1, 1 for D2.
    """

    pulse_index: np.ndarray   # int64
    detect_time: np.ndarray   # float64, ns
    detector: np.ndarray      # int8
    rep_period: float

    def __len__(self) -> int:
        return self.detect_time.size

    def detector_times(self, which: int) -> np.ndarray:
        """Sorted detection times of one detector (0 = D1, 1 = D2)."""
        return self.detect_time[self.detector == which]


def _simulate_block(config: PulseTrainConfig, block: int):
    start = block * BLOCK_PULSES
    n = min(BLOCK_PULSES, config.n_pulses - start)
    g = philox_stream(config.seed, DOMAIN_TRAIN, block)
    pulse_start = (start + np.arange(n, dtype=np.int64)) * config.rep_period

    if config.source == "poisson":
        k = g.poisson(config.excitation_prob, n)
        total = int(k.sum())
        idx = np.repeat(start + np.arange(n, dtype=np.int64), k)
        delays = g.standard_exponential(total) / config.delta \
            + g.standard_exponential(total) / config.gamma
        times = np.repeat(pulse_start, k) + delays
        route = g.random(total)
        keep_u = g.random(total)
    else:
        # fixed draw layout: all arrays drawn regardless of the masks
        u_exc = g.random(n)
        d1 = g.standard_exponential(n) / config.delta
        r1 = g.standard_exponential(n) / config.gamma
        route1 = g.random(n)
        keep1 = g.random(n)
        u_multi = g.random(n)
        d2 = g.standard_exponential(n) / config.delta
        r2 = g.standard_exponential(n) / config.gamma
        route2 = g.random(n)
        keep2 = g.random(n)

        m1 = u_exc < config.excitation_prob
        m2 = u_multi < config.multi_excitation_prob
        idx_all = start + np.arange(n, dtype=np.int64)
        idx = np.concatenate([idx_all[m1], idx_all[m2]])
        times = np.concatenate([(pulse_start + d1 + r1)[m1], (pulse_start + d2 + r2)[m2]])
        route = np.concatenate([route1[m1], route2[m2]])
        keep_u = np.concatenate([keep1[m1], keep2[m2]])

    kept = keep_u < config.efficiency
    return idx[kept], times[kept], (route[kept] >= 0.5).astype(np.int8)


def simulate_emission_train(config: PulseTrainConfig, threads: int = 1) -> PhotonRecords:
    """Simulate the detection record of a pulsed source.

    Deterministic given (seed, config); the thread count only distributes
    per-block work and never changes the result.
    """
    n_blocks = (config.n_pulses + BLOCK_PULSES - 1) // BLOCK_PULSES
    if threads > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            parts = list(pool.map(lambda b: _simulate_block(config, b), range(n_blocks)))
    else:
        parts = [_simulate_block(config, b) for b in range(n_blocks)]

    idx_parts = [p[0] for p in parts]
    time_parts = [p[1] for p in parts]
    det_parts = [p[2] for p in parts]

    if config.dark_count_rate > 0 and config.n_pulses > 0:
        g = philox_stream(config.seed, DOMAIN_DARK)
        n_dark = int(g.poisson(config.dark_count_rate * config.span))
        t_dark = g.random(n_dark) * config.span
        idx_parts.append(np.floor(t_dark / config.rep_period).astype(np.int64))
        time_parts.append(t_dark)
        det_parts.append((g.random(n_dark) >= 0.5).astype(np.int8))

    idx = np.concatenate(idx_parts) if idx_parts else np.empty(0, dtype=np.int64)
    times = np.concatenate(time_parts) if time_parts else np.empty(0, dtype=np.float64)
    det = np.concatenate(det_parts) if det_parts else np.empty(0, dtype=np.int8)

    order = np.lexsort((det, idx, times))
    return PhotonRecords(
        pulse_index=idx[order],
        detect_time=times[order],
        detector=det[order],
        rep_period=config.rep_period,
    )


_DETECTOR_LABELS = ("D1", "D2")


def write_records(path, records: PhotonRecords) -> None:
    """Line-delimited export: pulse_index,detect_time_ns,detector."""
    with open(path, "w") as fh:
        fh.write(f"# rep_period_ns = {records.rep_period!r}\n")
        fh.write("pulse_index,detect_time_ns,detector\n")
        for i, t, d in zip(
            records.pulse_index.tolist(), records.detect_time.tolist(), records.detector.tolist()
        ):
            fh.write(f"{i},{t!r},{_DETECTOR_LABELS[d]}\n")


def read_records(path) -> PhotonRecords:
    rep_period = None
    idx, times, det = [], [], []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("#"):
                if "rep_period_ns" in line:
                    rep_period = float(line.split("=", 1)[1])
                continue
            if not line or line.startswith("pulse_index"):
                continue
            i, t, d = line.split(",")
            idx.append(int(i))
            times.append(float(t))
            det.append(_DETECTOR_LABELS.index(d))
    if rep_period is None:
        raise ValueError(f"{path}: missing '# rep_period_ns = ...' header")
    return PhotonRecords(
        pulse_index=np.array(idx, dtype=np.int64),
        detect_time=np.array(times, dtype=np.float64),
        detector=np.array(det, dtype=np.int8),
        rep_period=rep_period,
    )

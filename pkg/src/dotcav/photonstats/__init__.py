"""Monte Carlo photon statistics: emission trains, HBT g2, HOM overlap."""

from .backend import BACKEND, get_kernels
from .correlate import (
    CorrelationHistogram,
    extract_lifetime_from_sidepeaks,
    g2_zero,
    hbt_correlate,
    write_histogram,
)
from .hom import HomEstimate, hom_overlap_mc
from .train import (
    PhotonRecords,
    PulseTrainConfig,
    read_records,
    simulate_emission_train,
    write_records,
)

__all__ = [
    "BACKEND",
    "CorrelationHistogram",
    "HomEstimate",
    "PhotonRecords",
    "PulseTrainConfig",
    "extract_lifetime_from_sidepeaks",
    "g2_zero",
    "get_kernels",
    "hbt_correlate",
    "hom_overlap_mc",
    "read_records",
    "simulate_emission_train",
    "write_histogram",
    "write_records",
]

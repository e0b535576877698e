"""Counter-based random streams for reproducible, order-independent sampling.

Every stochastic routine in the package pulls its randomness from a Philox
counter-based generator keyed by (domain, index, seed). Streams for distinct
(domain, index) pairs are independent, can be created in any order, and do
not depend on how work is split across threads - which is what makes the
simulations bitwise reproducible at any parallelism level.
"""

import numpy as np

# Stream domains. Each stochastic subsystem owns one so that identical seeds
# never alias across subsystems.
DOMAIN_TRAIN = 1       # pulse-train emission blocks
DOMAIN_DARK = 2        # dark-count Poisson process
DOMAIN_HOM = 3         # two-photon interference trials
DOMAIN_SPECTRUM = 4    # synthetic spectrum noise

_MASK64 = (1 << 64) - 1


def philox_stream(seed: int, domain: int, index: int = 0) -> np.random.Generator:
    """Generator for stream `index` of `domain`, rooted at `seed`.

    The Philox key is the 128-bit word (domain<<56 | index) << 64 | seed, so
    the (domain, index) pair selects an independent stream deterministically.
    """
    if not 0 <= seed <= _MASK64:
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    if index < 0:
        raise ValueError("stream index must be non-negative")
    key = ((domain << 56 | index) << 64) | seed
    return np.random.Generator(np.random.Philox(key=key))

"""Module Seeding.

Every random stream in the project is derived from one explicit 64-bit seed.
Sub-streams are addressed by integer keys (fold, epoch, class, signer, ...)
through `numpy.random.SeedSequence` spawn keys, so a stream never depends on
how many numbers another stream consumed.
"""

from __future__ import annotations

import numpy as np

SEED_MASK = (1 << 64) - 1


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """Create the generator addressed by `seed` and a tuple of integer keys.

    Parameters
    ----------
    seed : int
        The experiment seed, reduced to 64 bits.
    *keys : int
        The counters identifying the sub-stream.

    Returns
    -------
    np.random.Generator
        A fresh, independent generator.
    """
    sequence = np.random.SeedSequence(
        entropy=seed & SEED_MASK,
        spawn_key=tuple(int(key) for key in keys),
    )
    return np.random.default_rng(sequence)

"""Named random streams derived from a single seed.

``stream(seed, label, index)`` is a pure function of its arguments, so
trial ``i`` of an experiment draws the same numbers no matter how many
other trials ran before it.
"""

import zlib

import numpy as np


def stream(seed: int, label: str, index: int = 0) -> np.random.Generator:
    key = [int(seed) & 0xFFFFFFFFFFFFFFFF, zlib.crc32(label.encode()), int(index)]
    return np.random.default_rng(np.random.SeedSequence(key))

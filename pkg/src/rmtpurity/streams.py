"""Deterministic splittable random streams for ensemble realizations.

Every stochastic quantity in this package is drawn from a
:class:`numpy.random.Generator`.  For reproducible parallel ensemble
averaging the Monte-Carlo engine keys one stream per realization through
:class:`RngStream`: the pair ``(seed, index)`` fully determines the draw
sequence, independent of process, thread, or worker count.
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["RngStream"]


@dataclass(frozen=True)
class RngStream:
    """A counter-style random stream keyed by ``(seed, index)``.

    Two streams with distinct indices are statistically independent
    (numpy ``SeedSequence`` spawn keys); the same ``(seed, index)``
    replays the identical sequence on every run.
    """

    seed: int
    index: int = 0

    def __post_init__(self):
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        if self.index < 0:
            raise ValueError("stream index must be a non-negative integer")

    @property
    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this stream."""
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.index,))
        return np.random.Generator(np.random.PCG64(seq))

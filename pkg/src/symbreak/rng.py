"""Reproducible, splittable random streams.

The generator is pinned: Philox4x64-10 (numpy's ``np.random.Philox``)
keyed with the 64-bit pair ``(master_seed, stream_id)``.  Uniform integers
below a bound are produced from the raw 64-bit word stream by rejection
sampling, so identical ``(master_seed, stream_id)`` pairs reproduce
identical sequences on every host and under any parallel schedule.

Monte Carlo convention: trial ``t`` of a run with base stream ``s`` uses
stream id ``(s * 2**32 + t) mod 2**64``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SeededRng:
    """A value object naming one Philox stream; drawing is stateless."""

    master_seed: int
    stream_id: int = 0

    def _bit_generator(self):
        key = np.array(
            [self.master_seed & _MASK64, self.stream_id & _MASK64], dtype=np.uint64
        )
        return np.random.Philox(key=key)

    def raw_words(self, count):
        """The first `count` raw 64-bit words of this stream."""
        return self._bit_generator().random_raw(count)

    def integers_below(self, bound, count):
        """`count` iid uniform draws from {0, ..., bound-1} (rejection sampled)."""
        if bound < 1:
            raise ValueError("bound must be positive")
        out = []
        threshold = (1 << 64) - ((1 << 64) % bound)
        bg = self._bit_generator()
        while len(out) < count:
            words = bg.random_raw(max(count - len(out), 16))
            for w in words:
                w = int(w)
                if w < threshold:
                    out.append(w % bound)
                    if len(out) == count:
                        break
        return out

    def stream(self, stream_id):
        """The sibling stream with the same master seed."""
        return SeededRng(self.master_seed, stream_id)

    def trial_stream(self, trial):
        """The per-trial stream: (stream_id * 2^32 + trial) mod 2^64."""
        return SeededRng(self.master_seed, (self.stream_id * (1 << 32) + trial) & _MASK64)

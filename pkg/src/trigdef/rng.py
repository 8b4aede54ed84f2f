"""Seeded, splittable integer stream used for every random choice.

Algorithm (frozen):

* the stream for ``(seed, key)`` is numpy's PCG64 bit generator seeded with
  ``SeedSequence(entropy=seed, spawn_key=key)``; ``seed`` is a 64-bit
  unsigned integer and ``key`` a tuple of small nonnegative integers;
* only raw 64-bit words (``random_raw``) are consumed, so the stream does not
  depend on numpy's distribution code;
* an integer in ``[lo, hi]`` is drawn by rejection: with ``m = hi - lo + 1``
  a word ``w`` is accepted when ``w < 2**64 - (2**64 % m)`` and mapped to
  ``lo + w % m``.

``split(*key)`` derives an independent child stream by extending the key.
"""

from __future__ import annotations

import numpy as np

_WORD = 1 << 64


class IntegerStream:
    def __init__(self, seed: int, key: tuple[int, ...] = ()):
        if not 0 <= seed < _WORD:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self.key = tuple(key)
        self._bits = np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=self.key))

    def word(self) -> int:
        return int(self._bits.random_raw())

    def integer(self, lo: int, hi: int) -> int:
        m = hi - lo + 1
        if m <= 0:
            raise ValueError("empty range")
        limit = _WORD - (_WORD % m)
        while True:
            w = self.word()
            if w < limit:
                return lo + w % m

    def integers(self, count: int, lo: int, hi: int) -> list[int]:
        return [self.integer(lo, hi) for _ in range(count)]

    def split(self, *key: int) -> "IntegerStream":
        return IntegerStream(self.seed, self.key + tuple(key))

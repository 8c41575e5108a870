"""Seeded, splittable random streams.

A stream is identified by a 64-bit seed.  Child streams are derived with the
splitmix64 finalizer, so a task can own its stream without sharing state and
serial and parallel runs draw identical values.
"""
from __future__ import annotations

import random

_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


class RandomStream:
    def __init__(self, seed: int = 0):
        self.seed = seed & _MASK
        self._rand = random.Random(splitmix64(self.seed))
        self._replacers: dict = {}

    def child(self, tag: int) -> "RandomStream":
        return RandomStream(splitmix64(self.seed ^ splitmix64(tag & _MASK)))

    def randrange(self, n: int) -> int:
        return self._rand.randrange(n)

    def random(self) -> float:
        return self._rand.random()

    def replacer(self, G):
        """Product-replacement state for ``G``, created on first use."""
        entry = self._replacers.get(id(G))
        if entry is None or entry[0] is not G:
            from .permcore import ProductReplacement

            entry = (G, ProductReplacement(G.raw_generators, G.degree, self.child(len(self._replacers) + 1)))
            self._replacers[id(G)] = entry
        return entry[1]

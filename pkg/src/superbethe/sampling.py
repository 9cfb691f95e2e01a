"""Seeded drawing of small generic rational parameters.

All randomness flows from one seeded generator per consumer; values are p/q
with |p| <= 64, q <= 64. "Generic" draws keep every pairwise difference away
from 0 and +-c, which is exactly the pole set of the g/f/h coefficients and
of the symmetrized products, so drawn campaigns never hit a removable
precondition failure.
"""

from __future__ import annotations

import random

from .rational import ONE, rat
from .scalars import is_zero


class ParameterSampler:
    def __init__(self, seed, c=1):
        self.rng = random.Random(seed)
        self.c = ONE * c

    def rational(self):
        return rat(self.rng.randint(-64, 64), self.rng.randint(1, 64))

    def nonzero(self):
        while True:
            x = self.rational()
            if not is_zero(x):
                return x

    def twist(self):
        return (self.nonzero(), self.nonzero(), self.nonzero())

    def _generic_against(self, x, others):
        for y in others:
            d = x - y
            if is_zero(d) or is_zero(d - self.c) or is_zero(d + self.c):
                return False
        return True

    def generic(self, n, avoid=()):
        """n values whose mutual differences (and differences against avoid)
        miss 0 and +-c."""
        out = []
        avoid = list(avoid)
        while len(out) < n:
            x = self.rational()
            if self._generic_against(x, avoid + out):
                out.append(x)
        return tuple(out)

    def generic_one(self, avoid=()):
        return self.generic(1, avoid)[0]

"""Seedable, portable random stream for simulation and live sessions.

The generator is PCG32 (O'Neill's pcg32, the XSH-RR 64/32 variant):

    state' = state * 6364136223846793005 + increment   (mod 2^64)
    output = rotate32((state ^ (state >> 18)) >> 27, state >> 59)

with ``increment = (sequence << 1) | 1``.  Seeding follows the reference
``pcg32_srandom``: zero the state, step, add the seed, step again.  The
recurrence is a plain 64-bit LCG underneath, so the stream can be advanced
by any number of steps in O(log n); replay uses that to re-position the
stream at logged counters.

Derived draws and their stream cost:

* ``next_uint32``        — 1 step.
* ``randbelow(n)``       — rejection sampling on 32-bit words; 1 step per
  attempt, unbiased, never rejects when n is a power of two.
* ``next_uint53``        — 2 steps (high word first).
* ``weighted_index``     — 2 steps; walks an integer cutoff table scaled to
  2^53 (per-category bias below 2^-53, used only for Monte Carlo sampling,
  never for exact enumeration).

Every consumer documents its per-event draw order; the session engine logs
the step counter with each event so replays are bit-identical.
"""

from __future__ import annotations

from fractions import Fraction

_MULT = 6364136223846793005
_MASK64 = (1 << 64) - 1
_SCALE_BITS = 53
_SCALE = 1 << _SCALE_BITS


class Pcg32:
    def __init__(self, seed: int, sequence: int = 0) -> None:
        self._inc = (((sequence & _MASK64) << 1) | 1) & _MASK64
        self._state = 0
        self.counter = 0  # 32-bit outputs produced so far
        self._step()
        self._state = (self._state + (seed & _MASK64)) & _MASK64
        self._step()
        self.counter = 0

    def _step(self) -> None:
        self._state = (self._state * _MULT + self._inc) & _MASK64
        self.counter += 1

    def next_uint32(self) -> int:
        old = self._state
        self._step()
        xorshifted = (((old >> 18) ^ old) >> 27) & 0xFFFFFFFF
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & 0xFFFFFFFF

    def advance(self, steps: int) -> None:
        """Jump the stream forward by ``steps`` outputs in O(log steps)."""
        if steps < 0:
            raise ValueError("cannot rewind the stream")
        acc_mult, acc_plus = 1, 0
        cur_mult, cur_plus = _MULT, self._inc
        n = steps
        while n:
            if n & 1:
                acc_mult = (acc_mult * cur_mult) & _MASK64
                acc_plus = (acc_plus * cur_mult + cur_plus) & _MASK64
            cur_plus = ((cur_mult + 1) * cur_plus) & _MASK64
            cur_mult = (cur_mult * cur_mult) & _MASK64
            n >>= 1
        self._state = (self._state * acc_mult + acc_plus) & _MASK64
        self.counter += steps

    def randbelow(self, n: int) -> int:
        """Unbiased integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("randbelow needs a positive bound")
        threshold = (1 << 32) % n
        while True:
            r = self.next_uint32()
            if r >= threshold:
                return r % n

    def next_uint53(self) -> int:
        hi = self.next_uint32()
        lo = self.next_uint32()
        return ((hi << 32) | lo) >> (64 - _SCALE_BITS)

    def weighted_index(self, cutoffs: list[int]) -> int:
        """Index into a cutoff table built by :func:`cumulative_cutoffs`."""
        u = self.next_uint53()
        for i, c in enumerate(cutoffs):
            if u < c:
                return i
        return len(cutoffs) - 1


def cumulative_cutoffs(weights: list[Fraction]) -> list[int]:
    """Integer CDF cutoffs at 2^53 granularity for ``weighted_index``.

    Weights must be nonnegative rationals summing to 1.
    """
    total = sum(weights)
    if total != 1:
        raise ValueError(f"weights sum to {total}, expected 1")
    cutoffs: list[int] = []
    acc = Fraction(0)
    for w in weights:
        if w < 0:
            raise ValueError("negative weight")
        acc += w
        cutoffs.append(min(_SCALE, (acc.numerator * _SCALE) // acc.denominator))
    cutoffs[-1] = _SCALE  # guard against floor shaving the last bucket
    return cutoffs

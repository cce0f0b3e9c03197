"""HyperLogLog counters with a portable seeded 64-bit hash.

Hash
----
``hash64(x, seed) = mix(x XOR mix(seed))`` where ``mix`` is the SplitMix64
finalizer on unsigned 64-bit integers::

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

all arithmetic modulo 2**64. The top ``p`` bits of the hash pick a register;
the register receives ``1 + (number of leading zeros in the remaining
64 - p bits)``.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "DEFAULT_HASH_SEED",
    "HllCounter",
    "hash64",
    "hll_add",
    "hll_union",
    "estimate_registers",
    "register_updates",
]

DEFAULT_HASH_SEED = 0x5EED
_U64 = np.uint64
_M1 = _U64(0xBF58476D1CE4E5B9)
_M2 = _U64(0x94D049BB133111EB)
_POW2_NEG = np.ldexp(1.0, -np.arange(66))


def _mix(z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = (z ^ (z >> _U64(30))) * _M1
        z = (z ^ (z >> _U64(27))) * _M2
    return z ^ (z >> _U64(31))


def hash64(items, seed: int = DEFAULT_HASH_SEED) -> np.ndarray:
    x = np.asarray(items).astype(np.uint64, copy=False).reshape(-1)
    s = _mix(np.array([seed & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64))
    return _mix(x ^ s)


def _bit_length(x: np.ndarray) -> np.ndarray:
    # exact for 64-bit values: each 32-bit half converts to float64 losslessly
    hi = (x >> _U64(32)).astype(np.float64)
    lo = (x & _U64(0xFFFFFFFF)).astype(np.float64)
    bl_hi = np.frexp(hi)[1]
    bl_lo = np.frexp(lo)[1]
    return np.where(hi > 0, bl_hi + 32, bl_lo).astype(np.int64)


def register_updates(items, p: int, seed: int = DEFAULT_HASH_SEED) -> tuple[np.ndarray, np.ndarray]:
    """``(register index, rank)`` for each item."""
    h = hash64(items, seed)
    width = 64 - p
    idx = (h >> _U64(width)).astype(np.int64)
    rest = h & _U64((1 << width) - 1)
    rank = width - _bit_length(rest) + 1
    return idx, rank.astype(np.uint8)


def _alpha(m: int) -> float:
    return {16: 0.673, 32: 0.697, 64: 0.709}.get(m, 0.7213 / (1.0 + 1.079 / m))


def estimate_registers(regs: np.ndarray) -> np.ndarray:
    """Cardinality estimate for each row of a ``(..., m)`` register array.

    Raw HyperLogLog estimate with linear counting below ``2.5 m`` and the
    large-range correction for a 64-bit hash space.
    """
    regs = np.asarray(regs)
    m = regs.shape[-1]
    inv = _POW2_NEG[regs].sum(axis=-1)
    raw = _alpha(m) * m * m / inv
    zeros = np.count_nonzero(regs == 0, axis=-1)
    small = (raw <= 2.5 * m) & (zeros > 0)
    with np.errstate(divide="ignore"):
        lin = m * np.log(m / np.maximum(zeros, 1))
    est = np.where(small, lin, raw)
    two64 = 2.0**64
    big = est > two64 / 30
    if np.any(big):
        est = np.where(big, -two64 * np.log1p(-np.minimum(est, two64 * (1 - 1e-16)) / two64), est)
    return est


class HllCounter:
    """A single HyperLogLog counter with ``2**p`` registers."""

    __slots__ = ("p", "registers", "seed")

    def __init__(self, p: int = 10, seed: int = DEFAULT_HASH_SEED, registers: np.ndarray | None = None):
        if not 4 <= p <= 16:
            raise ValueError(f"precision must be in [4, 16], got {p}")
        self.p = p
        self.seed = seed
        if registers is None:
            registers = np.zeros(1 << p, dtype=np.uint8)
        elif registers.shape != (1 << p,):
            raise ValueError("register array does not match precision")
        self.registers = registers

    @property
    def m(self) -> int:
        return 1 << self.p

    def add(self, item) -> HllCounter:
        return self.add_many([item])

    def add_many(self, items) -> HllCounter:
        idx, rank = register_updates(items, self.p, self.seed)
        np.maximum.at(self.registers, idx, rank)
        return self

    def union(self, other: HllCounter) -> HllCounter:
        if self.p != other.p:
            raise ValueError(f"cannot union counters of precision {self.p} and {other.p}")
        if self.seed != other.seed:
            raise ValueError("cannot union counters built with different hash seeds")
        return HllCounter(self.p, self.seed, np.maximum(self.registers, other.registers))

    def estimate(self) -> float:
        return float(estimate_registers(self.registers))

    def copy(self) -> HllCounter:
        return HllCounter(self.p, self.seed, self.registers.copy())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HllCounter)
            and self.p == other.p
            and np.array_equal(self.registers, other.registers)
        )

    def __repr__(self) -> str:
        return f"HllCounter(p={self.p}, estimate={self.estimate():.1f})"


def hll_add(counter: HllCounter, item) -> HllCounter:
    """Return a copy of ``counter`` with ``item`` added."""
    return counter.copy().add(item)


def hll_union(a: HllCounter, b: HllCounter) -> HllCounter:
    return a.union(b)

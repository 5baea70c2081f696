"""The mixed alphabet Z2^gamma x Z4^delta: vectors, weights, Gray map.

Weight tables per quaternary symbol (binary symbols contribute their value
under every metric):

    hamming    [0, 1, 1, 1]
    lee        [0, 1, 2, 1]
    euclidean  [0, 1, 4, 1]

The Gray map sends 0 -> (0,0), 1 -> (0,1), 2 -> (1,1), 3 -> (1,0) and makes
Lee distance on the mixed space equal Hamming distance on binary strings of
length gamma + 2*delta.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

from . import _bitops as B


class DimensionError(ValueError):
    """Operands do not share the same (gamma, delta) shape."""


class Metric(enum.Enum):
    HAMMING = "hamming"
    LEE = "lee"
    EUCLIDEAN = "euclidean"

    @property
    def quat_table(self) -> tuple[int, int, int, int]:
        return {
            Metric.HAMMING: (0, 1, 1, 1),
            Metric.LEE: (0, 1, 2, 1),
            Metric.EUCLIDEAN: (0, 1, 4, 1),
        }[self]

    def __str__(self) -> str:
        return self.value


GRAY_TABLE = {0: (0, 0), 1: (0, 1), 2: (1, 1), 3: (1, 0)}


def gray_symbol(q: int) -> tuple[int, int]:
    """Gray image of one quaternary residue."""
    return GRAY_TABLE[q]


@dataclass(frozen=True)
class BinaryVector:
    """A vector over Z2 of any length, packed with bit 0 most significant."""

    n: int
    key: int

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BinaryVector":
        bits = tuple(int(b) for b in bits)
        key = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"binary digit out of range: {b}")
            key = key << 1 | b
        return cls(len(bits), key)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.key >> (self.n - 1 - i)) & 1 for i in range(self.n))

    def weight(self) -> int:
        return self.key.bit_count()

    def distance(self, other: "BinaryVector") -> int:
        if self.n != other.n:
            raise DimensionError(f"length mismatch: {self.n} vs {other.n}")
        return (self.key ^ other.key).bit_count()

    def __add__(self, other: "BinaryVector") -> "BinaryVector":
        if self.n != other.n:
            raise DimensionError(f"length mismatch: {self.n} vs {other.n}")
        return BinaryVector(self.n, self.key ^ other.key)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class MixedVector:
    """An element of Z2^gamma x Z4^delta, stored as one packed integer.

    The packing (1 bit per binary symbol, 2 bits per quaternary symbol,
    leftmost coordinate most significant) makes numeric order on keys equal
    lexicographic order on digit strings; whole-ambient sweeps iterate a
    plain integer range.
    """

    gamma: int
    delta: int
    key: int

    @classmethod
    def from_digits(cls, bits: Iterable[int], quats: Iterable[int]) -> "MixedVector":
        bits = tuple(int(b) for b in bits)
        quats = tuple(int(q) for q in quats)
        key = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"binary digit out of range: {b}")
            key = key << 1 | b
        for q in quats:
            if q not in (0, 1, 2, 3):
                raise ValueError(f"quaternary digit out of range: {q}")
            key = key << 2 | q
        return cls(len(bits), len(quats), key)

    @classmethod
    def zero(cls, gamma: int, delta: int) -> "MixedVector":
        return cls(gamma, delta, 0)

    @property
    def bits(self) -> tuple[int, ...]:
        s = 2 * self.delta
        return tuple((self.key >> (s + self.gamma - 1 - i)) & 1 for i in range(self.gamma))

    @property
    def quats(self) -> tuple[int, ...]:
        return tuple((self.key >> (2 * (self.delta - 1 - j))) & 3 for j in range(self.delta))

    def _check_shape(self, other: "MixedVector") -> None:
        if (self.gamma, self.delta) != (other.gamma, other.delta):
            raise DimensionError(
                f"shape mismatch: ({self.gamma},{self.delta}) vs ({other.gamma},{other.delta})"
            )

    def __add__(self, other: "MixedVector") -> "MixedVector":
        self._check_shape(other)
        return MixedVector(self.gamma, self.delta, B.key_add(self.key, other.key, self.gamma, self.delta))

    def __sub__(self, other: "MixedVector") -> "MixedVector":
        return self + (-other)

    def __neg__(self) -> "MixedVector":
        return MixedVector(self.gamma, self.delta, B.key_neg(self.key, self.gamma, self.delta))

    def __rmul__(self, a: int) -> "MixedVector":
        return MixedVector(self.gamma, self.delta, B.key_scalar(a, self.key, self.gamma, self.delta))

    def order(self) -> int:
        """Additive order: 1, 2 or 4."""
        if self.key == 0:
            return 1
        return 4 if B.key_scalar(2, self.key, self.gamma, self.delta) else 2

    def weight(self, metric: Metric) -> int:
        return B.key_weight(self.key, self.gamma, self.delta, metric.value)

    def gray(self) -> BinaryVector:
        return BinaryVector(self.gamma + 2 * self.delta, B.key_gray(self.key, self.gamma, self.delta))

    def render(self) -> str:
        return "".join(str(b) for b in self.bits) + " | " + "".join(str(q) for q in self.quats)

    @classmethod
    def parse(cls, text: str) -> "MixedVector":
        if "|" not in text:
            raise ValueError(f"missing '|' separator in {text!r}")
        left, _, right = text.partition("|")
        bits = [int(c) for c in left if not c.isspace()]
        quats = [int(c) for c in right if not c.isspace()]
        return cls.from_digits(bits, quats)

    def __str__(self) -> str:
        return self.render()


# --- module-level operations -------------------------------------------------

def gray_map(v: MixedVector) -> BinaryVector:
    """Binary image: the binary part followed by the Gray pairs in order."""
    return v.gray()


def weight(v: MixedVector, metric: Metric) -> int:
    return v.weight(metric)


def distance(u: MixedVector, v: MixedVector, metric: Metric) -> int:
    return (u - v).weight(metric)


def inner_product(u: MixedVector, v: MixedVector) -> int:
    u._check_shape(v)
    return B.key_inner(u.key, v.key, u.gamma, u.delta)


def add(u: MixedVector, v: MixedVector) -> MixedVector:
    return u + v


def scalar_mul(a: int, v: MixedVector) -> MixedVector:
    return a * v


def ambient_size(gamma: int, delta: int) -> int:
    return 1 << (gamma + 2 * delta)


def iter_ambient(gamma: int, delta: int) -> Iterator[MixedVector]:
    """All ambient vectors in lexicographic order (desk scale only)."""
    for key in range(ambient_size(gamma, delta)):
        yield MixedVector(gamma, delta, key)

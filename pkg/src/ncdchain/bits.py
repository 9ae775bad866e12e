"""Packed bit strings.

Bits are stored with ``np.packbits`` (MSB-first inside each byte) together
with the exact bit count, so strings of any length round-trip without
padding artefacts. Padding bits in the last byte are always zero, which
lets equality and XOR work directly on the packed bytes.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import DimensionError

__all__ = ["BitString", "xor_strings"]


class BitString:
    """Immutable sequence of ``length`` bits."""

    __slots__ = ("_packed", "_length")

    def __init__(self, packed: np.ndarray, length: int):
        packed = np.asarray(packed, dtype=np.uint8)
        if length < 0:
            raise ValueError("length must be nonnegative")
        if packed.ndim != 1 or packed.size != (length + 7) // 8:
            raise DimensionError(
                f"packed buffer of {packed.size} bytes cannot hold exactly {length} bits"
            )
        tail = length % 8
        if tail and packed[-1] & ((1 << (8 - tail)) - 1):
            # keep padding zeroed so byte-level equality and XOR stay exact
            packed = packed.copy()
            packed[-1] &= (0xFF << (8 - tail)) & 0xFF
        packed.flags.writeable = False
        self._packed = packed
        self._length = int(length)

    # -- constructors -------------------------------------------------
    @classmethod
    def from_bits(cls, bits: Iterable[int] | np.ndarray) -> "BitString":
        arr = np.asarray(bits if isinstance(bits, np.ndarray) else list(bits))
        if arr.size and not np.all((arr == 0) | (arr == 1)):
            raise ValueError("bits must be 0 or 1")
        arr = arr.astype(np.uint8, copy=False).ravel()
        return cls(np.packbits(arr), arr.size)

    @classmethod
    def from_str(cls, text: str) -> "BitString":
        """Parse a string of '0'/'1' characters (whitespace and '|' ignored)."""
        cleaned = "".join(ch for ch in text if ch not in " \t\n|")
        if any(ch not in "01" for ch in cleaned):
            raise ValueError(f"not a binary string: {text!r}")
        arr = np.frombuffer(cleaned.encode("ascii"), dtype=np.uint8) - ord("0")
        return cls(np.packbits(arr), arr.size)

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls(np.zeros((n + 7) // 8, dtype=np.uint8), n)

    @classmethod
    def ones(cls, n: int) -> "BitString":
        return cls.from_bits(np.ones(n, dtype=np.uint8))

    # -- views --------------------------------------------------------
    @property
    def packed(self) -> np.ndarray:
        return self._packed

    @property
    def length(self) -> int:
        return self._length

    @property
    def bits(self) -> np.ndarray:
        """Unpacked ``uint8`` array of 0/1 values (a fresh copy)."""
        return np.unpackbits(self._packed, count=self._length)

    def count_zeros(self) -> int:
        ones = int(np.unpackbits(self._packed).sum())
        return self._length - ones

    def complement(self) -> "BitString":
        return BitString(np.bitwise_not(self._packed), self._length)

    def __len__(self) -> int:
        return self._length

    def __getitem__(self, item: slice) -> "BitString":
        if not isinstance(item, slice):
            raise TypeError("BitString supports slicing only; use .bits for element access")
        return BitString.from_bits(self.bits[item])

    def __xor__(self, other: "BitString") -> "BitString":
        return xor_strings(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self._length == other._length and np.array_equal(self._packed, other._packed)

    def __hash__(self) -> int:
        return hash((self._length, self._packed.tobytes()))

    def __str__(self) -> str:
        return (self.bits + ord("0")).tobytes().decode("ascii")

    def __repr__(self) -> str:
        if self._length <= 64:
            return f"BitString('{self}')"
        return f"BitString(<{self._length} bits>)"


def xor_strings(x: BitString, y: BitString) -> BitString:
    """Bitwise XOR of two equal-length strings.

    XOR is its own inverse, so ``xor_strings(xor_strings(x, y), y) == x``;
    this is what makes the joint compression scheme lossless.
    """
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")
    return BitString(np.bitwise_xor(x.packed, y.packed), len(x))

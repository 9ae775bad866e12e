"""Entropy estimates, compressed sizes and compression distances.

Joint compression always uses the XOR scheme: the pair ``(x, y)`` is
stored as ``compress(x ^ y)`` followed by ``y`` verbatim, so
``C(x, y) = C(x ^ y) + n``.

Local sizes ``C(x)`` and ``C(y)`` can either be measured with the same
compressor or *assumed incompressible* (``C = n``), which is exact for
uniformly random local strings and reduces NCD to the XOR-string rate.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .bits import BitString, xor_strings
from .errors import DimensionError, EmptySampleError
from .huffman import check_block_size, empirical_rate, payload_size

__all__ = [
    "CompressorKind",
    "LocalSizeMode",
    "CompressorSpec",
    "NcdValue",
    "UniformityReport",
    "binary_entropy",
    "estimate_bit_probability",
    "compressed_size",
    "joint_compressed_size_xor",
    "ncd",
    "zurek_distance_approx",
    "triangle_tolerance",
    "ncd_triangle_slack",
    "uniformity_check",
]


class CompressorKind(str, enum.Enum):
    XOR_BLOCK_HUFFMAN = "xor_block_huffman"
    RAW = "raw"


class LocalSizeMode(str, enum.Enum):
    MEASURED = "measured"
    ASSUMED_INCOMPRESSIBLE = "assumed_incompressible"


@dataclass(frozen=True)
class CompressorSpec:
    kind: CompressorKind = CompressorKind.XOR_BLOCK_HUFFMAN
    block_size_k: int = 2

    def __post_init__(self):
        object.__setattr__(self, "kind", CompressorKind(self.kind))
        if self.kind is CompressorKind.XOR_BLOCK_HUFFMAN:
            check_block_size(self.block_size_k)

    @classmethod
    def huffman(cls, k: int) -> "CompressorSpec":
        return cls(CompressorKind.XOR_BLOCK_HUFFMAN, k)

    @classmethod
    def raw(cls) -> "CompressorSpec":
        return cls(CompressorKind.RAW, 1)


@dataclass(frozen=True)
class NcdValue:
    value: float
    c_x: int
    c_y: int
    c_xy: int


@dataclass(frozen=True)
class UniformityReport:
    rates: list[float]
    mean_rate: float
    max_deviation: float


def binary_entropy(p0: float) -> float:
    """Shannon entropy in bits of a Bernoulli(p0) bit, with 0 log 0 = 0."""
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"p0 must lie in [0, 1], got {p0}")
    h = 0.0
    for p in (p0, 1.0 - p0):
        if p > 0.0:
            h -= p * math.log2(p)
    return min(1.0, max(0.0, h))


def estimate_bit_probability(z: BitString) -> float:
    """Fraction of zeros in ``z``."""
    if len(z) == 0:
        raise EmptySampleError("cannot estimate a bit probability from an empty string")
    return z.count_zeros() / len(z)


def compressed_size(s: BitString, spec: CompressorSpec) -> int:
    """Compressed size in bits of a single string."""
    if spec.kind is CompressorKind.RAW:
        return len(s)
    return payload_size(s, spec.block_size_k)


def _joint_size(x: BitString, y: BitString, spec: CompressorSpec) -> int:
    return compressed_size(xor_strings(x, y), spec) + len(y)


def joint_compressed_size_xor(x: BitString, y: BitString, k: int) -> int:
    """``C(x ^ y) + n`` with block Huffman of block size ``k``."""
    return _joint_size(x, y, CompressorSpec.huffman(k))


def _sizes(x, y, spec, local_size_mode):
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) == 0:
        raise EmptySampleError("distance between empty strings is undefined")
    mode = LocalSizeMode(local_size_mode)
    c_xy = _joint_size(x, y, spec)
    if mode is LocalSizeMode.ASSUMED_INCOMPRESSIBLE:
        c_x = c_y = len(x)
    else:
        c_x, c_y = compressed_size(x, spec), compressed_size(y, spec)
    return c_x, c_y, c_xy


def ncd(
    x: BitString,
    y: BitString,
    spec: CompressorSpec,
    local_size_mode: LocalSizeMode | str = LocalSizeMode.ASSUMED_INCOMPRESSIBLE,
) -> NcdValue:
    """Normalized compression distance ``(C(x,y) - min C) / max C``.

    With ``assumed_incompressible`` local sizes the value equals the
    compression rate of ``x ^ y``.
    """
    c_x, c_y, c_xy = _sizes(x, y, spec, local_size_mode)
    lo, hi = min(c_x, c_y), max(c_x, c_y)
    if hi == 0:
        raise EmptySampleError("both local compressed sizes are zero")
    return NcdValue((c_xy - lo) / hi, c_x, c_y, c_xy)


def zurek_distance_approx(
    x: BitString,
    y: BitString,
    spec: CompressorSpec,
    local_size_mode: LocalSizeMode | str = LocalSizeMode.ASSUMED_INCOMPRESSIBLE,
) -> float:
    """Compressor stand-in for Zurek's ``2K(x,y) - K(x) - K(y)``.

    This is an approximation only; Kolmogorov complexity itself is not
    computable.
    """
    c_x, c_y, c_xy = _sizes(x, y, spec, local_size_mode)
    return float(2 * c_xy - c_x - c_y)


def triangle_tolerance(n: int, c: float, terms: int = 1) -> float:
    """Finite-length slack ``c * terms * log2(n) / n`` for NCD triangle inequalities."""
    if n < 1:
        raise EmptySampleError("n must be positive")
    return c * terms * math.log2(n) / n


def ncd_triangle_slack(
    x: BitString,
    y: BitString,
    w: BitString,
    spec: CompressorSpec,
    local_size_mode: LocalSizeMode | str = LocalSizeMode.ASSUMED_INCOMPRESSIBLE,
) -> float:
    """``ncd(x, w) - ncd(x, y) - ncd(y, w)``; nonpositive when the triangle holds exactly."""
    d = lambda a, b: ncd(a, b, spec, local_size_mode).value  # noqa: E731
    return d(x, w) - d(x, y) - d(y, w)


def uniformity_check(s: BitString, window: int, k: int) -> UniformityReport:
    """Huffman rate of each disjoint ``window``-bit slice and the spread around their mean.

    Trailing bits that do not fill a whole window are ignored.
    """
    if window < 1 or window % k:
        raise DimensionError(f"window {window} must be a positive multiple of k={k}")
    if window > len(s):
        raise DimensionError(f"window {window} is longer than the string ({len(s)} bits)")
    bits = s.bits
    rates = [
        empirical_rate(BitString.from_bits(bits[start:start + window]), k)
        for start in range(0, len(s) - window + 1, window)
    ]
    mean = float(np.mean(rates))
    return UniformityReport(rates, mean, float(max(abs(r - mean) for r in rates)))

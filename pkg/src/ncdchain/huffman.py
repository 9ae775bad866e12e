"""Block Huffman coding over k-bit symbols.

A bit string is cut into ``m = n / k`` blocks, each read as an unsigned
integer (most significant bit first). Codeword lengths come from the
classic table procedure: keep the entries sorted by weight, heaviest
first; repeatedly merge the last two into one entry whose weight is their
sum, placing it above any entry of equal weight. Among equal-weight
leaves the one with the smaller block value sits higher in the table.

Codewords are then assigned canonically: symbols ordered by (length,
block value) receive consecutive binary codes. For the table
``{00: 6, 01: 1, 10: 1, 11: 1}`` this gives ``00 -> 0, 01 -> 10,
10 -> 110, 11 -> 111``.

Only payload bits are counted in rates; the codebook travels alongside
the payload and is not charged.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .bits import BitString
from .errors import (
    CorruptStreamError,
    DimensionError,
    EmptyAlphabetError,
    InvalidBlockSizeError,
)

__all__ = [
    "K_MAX",
    "MIN_WEIGHT",
    "check_block_size",
    "BlockWeights",
    "HuffmanCodebook",
    "block_values",
    "block_counts",
    "huffman_code_lengths",
    "build_codebook",
    "encode",
    "decode",
    "payload_size",
    "empirical_rate",
    "expected_block_weights",
    "expected_rate",
]

K_MAX = 24
MIN_WEIGHT = 1e-300


def check_block_size(k: int) -> int:
    if int(k) != k or not 1 <= k <= K_MAX:
        raise InvalidBlockSizeError(f"block size must be in [1, {K_MAX}], got {k}")
    return int(k)


@dataclass(frozen=True)
class BlockWeights:
    """Positive weights for a subset of the ``2**k`` block values.

    ``blocks`` is sorted ascending; zero (and sub-``MIN_WEIGHT``) entries
    are never stored.
    """

    block_size_k: int
    blocks: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        check_block_size(self.block_size_k)
        blocks = np.asarray(self.blocks, dtype=np.int64)
        weights = np.asarray(self.weights, dtype=np.float64)
        if blocks.shape != weights.shape or blocks.ndim != 1:
            raise DimensionError("blocks and weights must be 1-D arrays of equal size")
        if np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise ValueError("weights must be finite and nonnegative")
        if blocks.size and (blocks.min() < 0 or blocks.max() >= 1 << self.block_size_k):
            raise ValueError(f"block values must lie in [0, 2**{self.block_size_k})")
        if np.unique(blocks).size != blocks.size:
            raise ValueError("duplicate block values")
        keep = weights >= MIN_WEIGHT
        order = np.argsort(blocks[keep], kind="stable")
        object.__setattr__(self, "blocks", blocks[keep][order])
        object.__setattr__(self, "weights", weights[keep][order])
        if self.blocks.size == 0:
            raise EmptyAlphabetError("no block has a positive weight")

    @classmethod
    def from_mapping(cls, k: int, mapping: Mapping[int | str, float]) -> "BlockWeights":
        """Build from ``{block: weight}``; keys may be ints or k-char binary strings."""
        keys, vals = [], []
        for key, w in mapping.items():
            if isinstance(key, str):
                if len(key) != k:
                    raise ValueError(f"block {key!r} is not {k} bits long")
                key = int(key, 2)
            keys.append(key)
            vals.append(w)
        return cls(k, np.array(keys, dtype=np.int64), np.array(vals, dtype=np.float64))

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.blocks.tolist(), self.weights.tolist()))

    def total(self) -> float:
        return float(self.weights.sum())

    def __len__(self) -> int:
        return int(self.blocks.size)


@dataclass(frozen=True)
class HuffmanCodebook:
    block_size_k: int
    codes: dict[int, str] = field(hash=False)

    def __getitem__(self, block: int) -> str:
        return self.codes[block]

    def __len__(self) -> int:
        return len(self.codes)

    def lengths(self) -> dict[int, int]:
        return {b: len(c) for b, c in self.codes.items()}

    def kraft_sum(self) -> Fraction:
        return sum((Fraction(1, 2 ** len(c)) for c in self.codes.values()), Fraction(0))

    def is_prefix_free(self) -> bool:
        words = sorted(self.codes.values())
        # in lexicographic order a prefix always sorts directly before an extension
        return all(not b.startswith(a) for a, b in zip(words, words[1:]))

    def expected_length(self, weights: BlockWeights) -> float:
        """Mean codeword length under ``weights`` (normalised)."""
        lens = np.array([len(self.codes[b]) for b in weights.blocks.tolist()], dtype=np.float64)
        return float(np.dot(weights.weights, lens) / weights.weights.sum())

    def dumps(self) -> str:
        """Text export: ``block<TAB>codeword`` per line, sorted by block value."""
        k = self.block_size_k
        return "".join(f"{b:0{k}b}\t{self.codes[b]}\n" for b in sorted(self.codes))

    @classmethod
    def loads(cls, text: str) -> "HuffmanCodebook":
        codes: dict[int, str] = {}
        k = None
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                block, code = line.split("\t")
            except ValueError:
                raise ValueError(f"line {lineno}: expected 'block<TAB>codeword'") from None
            if k is None:
                k = len(block)
            if len(block) != k or set(block) - set("01") or not code or set(code) - set("01"):
                raise ValueError(f"line {lineno}: malformed entry {line!r}")
            codes[int(block, 2)] = code
        if k is None:
            raise EmptyAlphabetError("codebook file has no entries")
        book = cls(k, codes)
        if not book.is_prefix_free():
            raise ValueError("codebook is not prefix-free")
        return book


# -- block statistics -------------------------------------------------------

def block_values(z: BitString, k: int) -> np.ndarray:
    """Integer value of each consecutive k-bit block (MSB first)."""
    k = check_block_size(k)
    n = len(z)
    if n % k:
        raise DimensionError(f"length {n} is not a multiple of block size {k}")
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    weights = np.left_shift(np.int64(1), np.arange(k - 1, -1, -1, dtype=np.int64))
    return z.bits.reshape(-1, k).astype(np.int64) @ weights


def block_counts(z: BitString, k: int) -> BlockWeights:
    values, counts = np.unique(block_values(z, k), return_counts=True)
    return BlockWeights(k, values, counts.astype(np.float64))


# -- code construction ------------------------------------------------------

def huffman_code_lengths(weights: np.ndarray) -> np.ndarray:
    """Codeword lengths for positive ``weights`` given in table order.

    Table order means: heaviest first, ties broken by input position.
    Leaves are consumed from the bottom of the table; a merged entry is
    placed above leaves of equal weight, so on ties leaves are merged
    first. The two-queue formulation below performs exactly those merges
    in O(m) after sorting. A single symbol gets length 1.
    """
    w = np.asarray(weights, dtype=np.float64)
    m = w.size
    if m == 0:
        raise EmptyAlphabetError("no symbols")
    if m == 1:
        return np.ones(1, dtype=np.int64)

    # ascending weight; among equal weights the entry lower in the table comes out first
    order = np.lexsort((-np.arange(m), w))
    leaf_w = w[order].tolist()
    merged_w = [0.0] * (m - 1)
    parent = [0] * (2 * m - 1)

    li = 0  # next unused leaf
    qi = 0  # next unused merged node
    for t in range(m - 1):
        pair = []
        for _ in range(2):
            if li < m and (qi >= t or leaf_w[li] <= merged_w[qi]):
                pair.append((li, leaf_w[li]))
                li += 1
            else:
                pair.append((m + qi, merged_w[qi]))
                qi += 1
        node = m + t
        merged_w[t] = pair[0][1] + pair[1][1]
        parent[pair[0][0]] = node
        parent[pair[1][0]] = node

    depth = [0] * (2 * m - 1)
    for node in range(2 * m - 3, -1, -1):
        depth[node] = depth[parent[node]] + 1

    lengths = np.empty(m, dtype=np.int64)
    lengths[order] = depth[:m]
    return lengths


def _canonical_codes(blocks: np.ndarray, lengths: np.ndarray) -> dict[int, str]:
    order = np.lexsort((blocks, lengths))
    codes: dict[int, str] = {}
    code = 0
    prev_len = int(lengths[order[0]])
    for idx in order.tolist():
        length = int(lengths[idx])
        code <<= length - prev_len
        prev_len = length
        codes[int(blocks[idx])] = format(code, f"0{length}b")
        code += 1
    return codes


def build_codebook(weights: BlockWeights) -> HuffmanCodebook:
    """Optimal prefix code for the positive-weight blocks in ``weights``."""
    # table order: heaviest first, ties by ascending block value
    table = np.lexsort((weights.blocks, -weights.weights))
    lengths = np.empty(len(weights), dtype=np.int64)
    lengths[table] = huffman_code_lengths(weights.weights[table])
    return HuffmanCodebook(weights.block_size_k, _canonical_codes(weights.blocks, lengths))


# -- codec -------------------------------------------------------------------

def _expand_codes(code_ints: np.ndarray, code_lens: np.ndarray) -> np.ndarray:
    total = int(code_lens.sum())
    starts = np.cumsum(code_lens) - code_lens
    reps = np.repeat(np.arange(code_lens.size), code_lens)
    offset = np.arange(total, dtype=np.int64) - starts[reps]
    shift = (code_lens[reps] - 1 - offset).astype(np.uint64)
    return ((code_ints[reps] >> shift) & np.uint64(1)).astype(np.uint8)


def encode(z: BitString, k: int) -> tuple[BitString, HuffmanCodebook]:
    """Huffman-compress ``z`` with a codebook built from its own block counts."""
    values = block_values(z, k)
    if values.size == 0:
        raise DimensionError("cannot build a codebook for an empty string")
    uniq, inverse, counts = np.unique(values, return_inverse=True, return_counts=True)
    book = build_codebook(BlockWeights(k, uniq, counts.astype(np.float64)))
    words = [book.codes[b] for b in uniq.tolist()]
    lens = np.array([len(w) for w in words], dtype=np.int64)
    # a 64-bit codeword needs Fibonacci-like counts over ~1e13 blocks, far past memory
    assert lens.max() <= 63
    ints = np.array([int(w, 2) for w in words], dtype=np.uint64)
    return BitString.from_bits(_expand_codes(ints[inverse], lens[inverse])), book


def decode(compressed: BitString, codebook: HuffmanCodebook, block_count: int) -> BitString:
    """Invert :func:`encode` given the number of blocks in the original string."""
    k = codebook.block_size_k
    if block_count < 0:
        raise ValueError("block_count must be nonnegative")
    if block_count == 0:
        if len(compressed):
            raise CorruptStreamError(f"{len(compressed)} dangling bits after 0 blocks")
        return BitString.zeros(0)

    # binary trie: child[node][bit] -> node id, leaf symbol stored separately
    child: list[list[int]] = [[-1, -1]]
    symbol: list[int] = [-1]
    for block, word in codebook.codes.items():
        node = 0
        for ch in word:
            b = ch == "1"
            if child[node][b] < 0:
                child[node][b] = len(child)
                child.append([-1, -1])
                symbol.append(-1)
            node = child[node][b]
        symbol[node] = block

    out = np.empty(block_count, dtype=np.int64)
    produced = 0
    node = 0
    stream = compressed.bits.tolist()
    for pos, bit in enumerate(stream):
        node = child[node][bit]
        if node < 0:
            raise CorruptStreamError(f"bit {pos}: no codeword has this prefix")
        if symbol[node] >= 0:
            out[produced] = symbol[node]
            produced += 1
            node = 0
            if produced == block_count:
                if pos + 1 != len(stream):
                    raise CorruptStreamError(
                        f"{len(stream) - pos - 1} dangling bits after {block_count} blocks"
                    )
                break
    if produced < block_count:
        raise CorruptStreamError(f"stream ended after {produced} of {block_count} blocks")

    shifts = np.arange(k - 1, -1, -1, dtype=np.int64)
    bits = ((out[:, None] >> shifts) & 1).astype(np.uint8).ravel()
    return BitString.from_bits(bits)


def payload_size(z: BitString, k: int) -> int:
    """Length of ``encode(z, k)``'s payload, computed from block counts only."""
    counts = block_counts(z, k)
    book = build_codebook(counts)
    lens = np.array([len(book.codes[b]) for b in counts.blocks.tolist()], dtype=np.int64)
    return int(np.dot(counts.weights.astype(np.int64), lens))


def empirical_rate(z: BitString, k: int) -> float:
    """Compressed payload bits per input bit."""
    if len(z) == 0:
        raise DimensionError("rate of an empty string is undefined")
    return payload_size(z, k) / len(z)


# -- analytic rates ------------------------------------------------------------

def expected_block_weights(p0: float, k: int) -> BlockWeights:
    """Block probabilities for an i.i.d. source emitting 0 with probability ``p0``.

    A block with ``l`` zeros has probability ``p0**l * (1 - p0)**(k - l)``.
    """
    k = check_block_size(k)
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"p0 must lie in [0, 1], got {p0}")
    if p0 in (0.0, 1.0):
        # deterministic source: a single block carries all the mass
        block = 0 if p0 == 1.0 else (1 << k) - 1
        return BlockWeights(k, np.array([block]), np.array([1.0]))
    values = np.arange(1 << k, dtype=np.int64)
    ones = np.zeros(values.size, dtype=np.int64)
    for bit in range(k):
        ones += (values >> bit) & 1
    # per-count table keeps equal-probability blocks bit-identical
    per_count = np.array([p0 ** (k - l) * (1.0 - p0) ** l for l in range(k + 1)])
    return BlockWeights(k, values, per_count[ones])


@functools.lru_cache(maxsize=512)
def _expected_rate(p0: float, k: int) -> float:
    weights = expected_block_weights(p0, k)
    book = build_codebook(weights)
    return book.expected_length(weights) / k


def expected_rate(p0: float, k: int) -> float:
    """Expected Huffman payload bits per source bit for a biased i.i.d. source.

    The codebook is built from the exact block probabilities, so the result
    lies between the binary entropy of ``p0`` and that entropy plus ``1/k``.
    Cost grows as ``2**k``; k around 20 takes seconds.
    """
    return _expected_rate(float(p0), check_block_size(k))

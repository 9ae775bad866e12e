"""Compress a short XOR string by hand-sized blocks and inspect every intermediate."""

from ncdchain import BitString
from ncdchain.huffman import block_counts, decode, encode, empirical_rate

# Eighteen bits, read as nine 2-bit blocks. The 00 block dominates.
z = BitString.from_str("00|00|10|01|00|00|00|11|00")
print("string      ", z)
print("block counts", block_counts(z, 2).as_dict())

payload, book = encode(z, 2)
print("codebook")
print(book.dumps(), end="")
print("payload     ", payload, f"({len(payload)} bits)")
print("rate        ", empirical_rate(z, 2))

# Decoding needs the block count, since the payload carries no terminator.
assert decode(payload, book, len(z) // 2) == z
print("round trip ok")

"""How close does block Huffman coding get to the entropy of a biased bit?

For a fixed XOR bias the expected rate falls toward the binary entropy
as the block grows, and never drops below it.
"""

import math

from ncdchain.huffman import expected_rate
from ncdchain.information import binary_entropy

p0 = (1 - 1 / math.sqrt(2)) / 2  # 45 degrees between the two directions
h = binary_entropy(p0)
print(f"p0 = {p0:.6f}   entropy = {h:.6f}")
print(" k   rate      rate - entropy   bound 1/k")
for k in (1, 2, 4, 8, 12, 16):
    r = expected_rate(p0, k)
    print(f"{k:2d}   {r:.6f}  {r - h:.6f}         {1 / k:.6f}")

"""NCD between measurement records, plus a check that compressibility is spread evenly."""

import math

from ncdchain.correlation_model import directions_with_dot, sample_singlet_pair
from ncdchain.information import CompressorSpec, ncd, uniformity_check, zurek_distance_approx

spec = CompressorSpec.huffman(9)
n = 900_000
for dot in (0.0, 0.5, math.cos(math.pi / 10), 1.0):
    a, b = directions_with_dot(dot)
    x, y = sample_singlet_pair(a, b, n, seed=3)
    d = ncd(x, y, spec)
    z = zurek_distance_approx(x, y, spec)
    print(f"a.b={dot:.4f}  ncd={d.value:.4f}  approx Zurek / n = {z / n:.4f}")

# A stationary source should compress the same in every window.
a, b = directions_with_dot(math.cos(math.pi / 10))
x, y = sample_singlet_pair(a, b, n, seed=4)
report = uniformity_check(x ^ y, 90_000, 9)
print(f"\nwindow rates span {min(report.rates):.4f} .. {max(report.rates):.4f}, "
      f"max deviation {report.max_deviation:.4f}")

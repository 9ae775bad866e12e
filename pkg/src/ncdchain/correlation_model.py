"""Measurement geometry and correlated bit-string sources.

Two sources are provided:

* the two-qubit singlet, whose outcome pair for directions ``a`` and ``b``
  has ``p(x, y) = (1 - (-1)**(x + y) * a.b) / 4``;
* a classical local-hidden-variable (LHV) model: a shared direction
  ``lam`` uniform on the sphere, Alice answers ``0`` iff ``a.lam >= 0`` and
  Bob answers ``1`` iff ``b.lam >= 0``. Its XOR statistics are
  ``p(x ^ y = 0) = angle(a, b) / pi``.

Indices are 0-based: ``alice_dirs[i]`` is the 1-based setting ``a_{i+1}``.

Randomness comes from numpy's PCG64 bit generator seeded through
``SeedSequence`` (identifier :data:`RNG_ID`). Sub-streams for independent
Monte Carlo terms are derived with ``SeedSequence(seed).spawn``, so results
never depend on evaluation order or worker count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bits import BitString, xor_strings
from .errors import EmptySampleError, InvalidChainError, InvalidDirectionError

__all__ = [
    "RNG_ID",
    "UNIT_TOL",
    "BlochVector",
    "SettingsChain",
    "JointDistribution",
    "XorDistribution",
    "make_rng",
    "spawn_seeds",
    "directions_with_dot",
    "singlet_joint_distribution",
    "xor_distribution",
    "chain_settings",
    "sample_singlet_pair",
    "sample_lhv_pair",
    "sample_lhv_strings",
    "xor_strings",
]

RNG_ID = "numpy.PCG64/SeedSequence"
UNIT_TOL = 1e-9


@dataclass(frozen=True)
class BlochVector:
    """Unit 3-vector. Construction fails loudly instead of renormalising."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if not math.isfinite(norm) or abs(norm - 1.0) > UNIT_TOL:
            raise InvalidDirectionError(
                f"({self.x}, {self.y}, {self.z}) has norm {norm}, expected 1"
            )

    @classmethod
    def from_angle(cls, angle: float) -> "BlochVector":
        """Direction in the x-z plane at polar angle ``angle`` from +z."""
        return cls(math.sin(angle), 0.0, math.cos(angle))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def dot(self, other: "BlochVector") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def angle_to(self, other: "BlochVector") -> float:
        return math.acos(min(1.0, max(-1.0, self.dot(other))))


@dataclass(frozen=True)
class SettingsChain:
    n_settings: int
    theta: float
    alice_dirs: tuple[BlochVector, ...]
    bob_dirs: tuple[BlochVector, ...]

    def pairs(self) -> list[tuple[str, int, int]]:
        """The 2N-1 right-hand-side terms of the chain as (label, alice, bob).

        Diagonal terms ``(i, i)`` come first, then the off-diagonal
        ``(i + 1, i)`` terms.
        """
        n = self.n_settings
        diag = [(f"x{i + 1},y{i + 1}", i, i) for i in range(n)]
        off = [(f"x{i + 2},y{i + 1}", i + 1, i) for i in range(n - 1)]
        return diag + off


@dataclass(frozen=True)
class JointDistribution:
    p00: float
    p01: float
    p10: float
    p11: float

    def as_array(self) -> np.ndarray:
        """2x2 table indexed ``[x, y]``."""
        return np.array([[self.p00, self.p01], [self.p10, self.p11]])


@dataclass(frozen=True)
class XorDistribution:
    p0: float
    p1: float


def _check_unit(*vectors: BlochVector) -> None:
    # BlochVector validates on construction; duck-typed inputs are re-checked here.
    for v in vectors:
        norm = math.sqrt(v.x * v.x + v.y * v.y + v.z * v.z)
        if abs(norm - 1.0) > UNIT_TOL:
            raise InvalidDirectionError(f"direction {v} has norm {norm}")


def _clamped_dot(a: BlochVector, b: BlochVector) -> float:
    return min(1.0, max(-1.0, a.dot(b)))


def directions_with_dot(dot: float) -> tuple[BlochVector, BlochVector]:
    """A pair of directions in the x-z plane with ``a.b == dot``."""
    if not -1.0 <= dot <= 1.0:
        raise InvalidDirectionError(f"dot product {dot} outside [-1, 1]")
    return BlochVector(0.0, 0.0, 1.0), BlochVector.from_angle(math.acos(dot))


def singlet_joint_distribution(a: BlochVector, b: BlochVector) -> JointDistribution:
    _check_unit(a, b)
    d = _clamped_dot(a, b)
    same = (1.0 - d) / 4.0
    diff = (1.0 + d) / 4.0
    return JointDistribution(p00=same, p01=diff, p10=diff, p11=same)


def xor_distribution(a: BlochVector, b: BlochVector) -> XorDistribution:
    _check_unit(a, b)
    d = _clamped_dot(a, b)
    return XorDistribution(p0=(1.0 - d) / 2.0, p1=(1.0 + d) / 2.0)


def chain_settings(n_settings: int) -> SettingsChain:
    """Alice/Bob directions for the N-setting chain.

    ``theta = pi / (2N - 1)``; Alice's i-th direction sits at angle ``i*theta``
    and Bob's j-th at ``(j + 1/2)*theta``. Neighbouring settings are then
    ``pi / (4N - 2)`` apart while the chain ends (Alice 0, Bob N-1) are
    orthogonal.
    """
    if int(n_settings) != n_settings or n_settings < 2:
        raise InvalidChainError(f"need at least 2 settings, got {n_settings}")
    n = int(n_settings)
    theta = math.pi / (2 * n - 1)
    alice = tuple(BlochVector.from_angle(i * theta) for i in range(n))
    bob = tuple(BlochVector.from_angle((j + 0.5) * theta) for j in range(n))
    return SettingsChain(n_settings=n, theta=theta, alice_dirs=alice, bob_dirs=bob)


# -- randomness -----------------------------------------------------------

def make_rng(seed) -> np.random.Generator:
    """Generator for ``seed`` (a 64-bit int or a ``SeedSequence``)."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    if int(seed) != seed or not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def spawn_seeds(seed: int, count: int) -> list[np.random.SeedSequence]:
    """``count`` independent child streams derived from ``(seed, index)``."""
    return np.random.SeedSequence(int(seed)).spawn(count)


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise EmptySampleError(f"need at least one sample, got n={n}")
    return int(n)


def sample_singlet_pair(
    a: BlochVector, b: BlochVector, n: int, seed
) -> tuple[BitString, BitString]:
    """Draw ``n`` i.i.d. outcome pairs from the singlet distribution.

    Since both marginals are uniform and ``p(x, y)`` only depends on
    ``x ^ y``, a pair is drawn as a fair bit ``x`` plus an independent
    XOR bit ``z`` with ``P(z = 0) = (1 - a.b) / 2``; then ``y = x ^ z``.
    """
    n = _check_n(n)
    p0 = xor_distribution(a, b).p0
    rng = make_rng(seed)
    x = (rng.random(n) < 0.5).astype(np.uint8)
    z = (rng.random(n) >= p0).astype(np.uint8)
    return BitString.from_bits(x), BitString.from_bits(x ^ z)


def _hidden_directions(rng: np.random.Generator, n: int) -> np.ndarray:
    # isotropic Gaussian gives a uniform direction; only signs of projections are used
    return rng.standard_normal((n, 3))


def sample_lhv_pair(
    a: BlochVector, b: BlochVector, n: int, seed
) -> tuple[BitString, BitString]:
    n = _check_n(n)
    _check_unit(a, b)
    lam = _hidden_directions(make_rng(seed), n)
    x = (lam @ a.as_array() < 0).astype(np.uint8)
    y = (lam @ b.as_array() >= 0).astype(np.uint8)
    return BitString.from_bits(x), BitString.from_bits(y)


def sample_lhv_strings(
    alice_dirs: Sequence[BlochVector],
    bob_dirs: Sequence[BlochVector],
    n: int,
    seed,
) -> tuple[list[BitString], list[BitString]]:
    """All parties' strings for every setting from one shared hidden sequence.

    This is the classical counterpart of the counterfactual strings: in
    the LHV model every setting's outcome is defined in every round, so
    strings such as ``y_1`` and ``y_N`` coexist and triangle inequalities
    between them can be evaluated directly.
    """
    n = _check_n(n)
    _check_unit(*alice_dirs, *bob_dirs)
    lam = _hidden_directions(make_rng(seed), n)
    xs = [BitString.from_bits((lam @ d.as_array() < 0).astype(np.uint8)) for d in alice_dirs]
    ys = [BitString.from_bits((lam @ d.as_array() >= 0).astype(np.uint8)) for d in bob_dirs]
    return xs, ys

"""The NCD chain inequality for N measurement settings per party.

Chaining triangle inequalities from ``x_1`` to ``y_N`` through
``y_1, x_2, y_2, ..., x_N`` gives::

    NCD(x_1, y_N) <= sum_i NCD(x_i, y_i) + sum_i NCD(x_{i+1}, y_i) + O(N log n / n)

with ``2N - 1`` terms on the right. Classically correlated strings obey
it. For singlet strings measured along :func:`chain_settings` every
right-hand term has the same rate ``r`` and the left side is 1, so the
inequality reduces to ``1 / (2N - 1) <= r``.
"""
from __future__ import annotations

import enum
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional

from .bits import BitString
from .correlation_model import (
    RNG_ID,
    chain_settings,
    sample_lhv_pair,
    sample_lhv_strings,
    sample_singlet_pair,
    spawn_seeds,
)
from .errors import DimensionError, InvalidChainError, SampleTooSmallError
from .huffman import check_block_size, expected_rate
from .information import (
    CompressorSpec,
    LocalSizeMode,
    ncd,
    triangle_tolerance,
    zurek_distance_approx,
)

__all__ = [
    "Mode",
    "Source",
    "Sampling",
    "InequalityReport",
    "ZurekChainReport",
    "REPORT_FIELDS",
    "neighbour_xor_p0",
    "chain_rates_analytic",
    "evaluate_chain",
    "evaluate_zurek_chain",
    "minimal_violating_n",
    "min_bits",
]


class Mode(str, enum.Enum):
    ANALYTIC = "analytic"
    MONTE_CARLO = "monte_carlo"


class Source(str, enum.Enum):
    SINGLET = "singlet"
    LHV = "lhv"


class Sampling(str, enum.Enum):
    INDEPENDENT = "independent"
    SHARED = "shared"


REPORT_FIELDS = (
    "n_settings",
    "block_size_k",
    "mode",
    "source",
    "lhs",
    "rhs_terms",
    "rhs_sum",
    "correction",
    "violated",
    "n_bits",
    "seed",
    "rng_id",
)

_NOTES = {
    Sampling.INDEPENDENT: (
        "all setting pairs, including the counterfactual (x1, yN), are sampled "
        "directly; every term uses freshly sampled strings from its own seed stream"
    ),
    Sampling.SHARED: (
        "all strings come from one shared hidden-variable sequence, so each "
        "string is reused by every term it appears in"
    ),
}


@dataclass(frozen=True)
class InequalityReport:
    n_settings: int
    block_size_k: int
    mode: Mode
    source: Source
    lhs: float
    rhs_terms: list[float]
    rhs_sum: float
    correction: float
    violated: bool
    violated_without_correction: bool
    rhs_labels: list[str] = field(default_factory=list)
    n_bits: Optional[int] = None
    seed: Optional[int] = None
    rng_id: Optional[str] = None
    sampling: Optional[Sampling] = None
    notes: str = ""

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for name in REPORT_FIELDS:
            value = getattr(self, name)
            out[name] = value.value if isinstance(value, enum.Enum) else value
        out["violated_without_correction"] = self.violated_without_correction
        out["rhs_labels"] = list(self.rhs_labels)
        out["sampling"] = self.sampling.value if self.sampling else None
        out["notes"] = self.notes
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass(frozen=True)
class ZurekChainReport:
    """Chain of compressor-approximated Zurek distances, in bits."""

    n_settings: int
    block_size_k: int
    n_bits: int
    lhs: float
    rhs_terms: list[float]
    rhs_sum: float
    violated: bool


def neighbour_xor_p0(n_settings: int, source: Source | str = Source.SINGLET) -> float:
    """Probability of a 0 in ``x ^ y`` for neighbouring chain settings."""
    half_angle = math.pi / (4 * n_settings - 2)
    if Source(source) is Source.SINGLET:
        return (1.0 - math.cos(half_angle)) / 2.0
    return half_angle / math.pi


def _check_chain(n_settings: int, k: int) -> None:
    if int(n_settings) != n_settings or n_settings < 2:
        raise InvalidChainError(f"need at least 2 settings, got {n_settings}")
    check_block_size(k)


def chain_rates_analytic(n_settings: int, k: int) -> tuple[float, float]:
    """Expected singlet rates ``(r_diag, r_lhs)`` along the chain."""
    _check_chain(n_settings, k)
    return expected_rate(neighbour_xor_p0(n_settings), k), expected_rate(0.5, k)


def min_bits(n_settings: int, k: int) -> int:
    """Smallest allowed Monte Carlo string length (100 N k)."""
    return 100 * n_settings * k


def _pair_sampler(source: Source):
    return sample_singlet_pair if source is Source.SINGLET else sample_lhv_pair


def _mc_terms(chain, source, sampling, k, n_bits, seed, workers):
    spec = CompressorSpec.huffman(k)
    n = chain.n_settings
    pairs = [("x1,y%d" % n, 0, n - 1)] + chain.pairs()

    def rate(x: BitString, y: BitString) -> float:
        return ncd(x, y, spec, LocalSizeMode.ASSUMED_INCOMPRESSIBLE).value

    if sampling is Sampling.SHARED:
        if source is not Source.LHV:
            raise ValueError(
                "shared-string sampling needs a joint distribution over all settings; "
                "only the lhv source has one"
            )
        xs, ys = sample_lhv_strings(chain.alice_dirs, chain.bob_dirs, n_bits, seed)
        values = [rate(xs[i], ys[j]) for _, i, j in pairs]
    else:
        sampler = _pair_sampler(source)
        seeds = spawn_seeds(seed, len(pairs))

        def term(t: int) -> float:
            _, i, j = pairs[t]
            x, y = sampler(chain.alice_dirs[i], chain.bob_dirs[j], n_bits, seeds[t])
            return rate(x, y)

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                values = list(pool.map(term, range(len(pairs))))
        else:
            values = [term(t) for t in range(len(pairs))]
    return values[0], values[1:], [label for label, _, _ in pairs[1:]]


def evaluate_chain(
    n_settings: int,
    k: int,
    mode: Mode | str = Mode.ANALYTIC,
    source: Source | str = Source.SINGLET,
    n_bits: Optional[int] = None,
    seed: int = 42,
    correction_c: Optional[float] = None,
    sampling: Sampling | str = Sampling.INDEPENDENT,
    workers: int = 1,
) -> InequalityReport:
    """Evaluate both sides of the chain inequality.

    Analytic mode uses expected Huffman rates (LHV: ``p0 = angle / pi``) and
    no correction term. Monte Carlo mode computes every term as an NCD
    with incompressible local sizes on sampled strings; the correction is
    ``c * N * log2(n_bits) / n_bits`` with ``c`` defaulting to 1.
    ``violated`` includes the correction, ``violated_without_correction``
    does not.
    """
    _check_chain(n_settings, k)
    mode, source, sampling = Mode(mode), Source(source), Sampling(sampling)
    chain = chain_settings(n_settings)
    n = chain.n_settings
    labels = [label for label, _, _ in chain.pairs()]

    if mode is Mode.ANALYTIC:
        term = expected_rate(neighbour_xor_p0(n, source), k)
        lhs = expected_rate(0.5, k)
        terms = [term] * (2 * n - 1)
        correction = 0.0
        extra: dict[str, Any] = {}
    else:
        if n_bits is None:
            raise SampleTooSmallError("monte_carlo mode needs n_bits")
        if n_bits % k:
            raise DimensionError(f"n_bits={n_bits} is not a multiple of k={k}")
        if n_bits < min_bits(n, k):
            raise SampleTooSmallError(
                f"n_bits={n_bits} is below the floor 100*N*k = {min_bits(n, k)}"
            )
        c = 1.0 if correction_c is None else float(correction_c)
        lhs, terms, labels = _mc_terms(chain, source, sampling, k, n_bits, seed, workers)
        correction = triangle_tolerance(n_bits, c, terms=n)
        extra = dict(
            n_bits=int(n_bits),
            seed=int(seed),
            rng_id=RNG_ID,
            sampling=sampling,
            notes=_NOTES[sampling],
        )

    rhs_sum = math.fsum(terms)
    return InequalityReport(
        n_settings=n,
        block_size_k=k,
        mode=mode,
        source=source,
        lhs=lhs,
        rhs_terms=list(terms),
        rhs_sum=rhs_sum,
        correction=correction,
        violated=lhs > rhs_sum + correction,
        violated_without_correction=lhs > rhs_sum,
        rhs_labels=labels,
        **extra,
    )


def evaluate_zurek_chain(
    n_settings: int,
    k: int,
    n_bits: int,
    seed: int = 42,
    source: Source | str = Source.SINGLET,
) -> ZurekChainReport:
    """Monte Carlo chain of approximate Zurek distances ``2C(x,y) - C(x) - C(y)``.

    Local sizes are taken as ``n`` (incompressible), so each term is
    ``2 C(x ^ y)``. Same seed derivation as :func:`evaluate_chain`.
    """
    _check_chain(n_settings, k)
    if n_bits % k:
        raise DimensionError(f"n_bits={n_bits} is not a multiple of k={k}")
    source = Source(source)
    chain = chain_settings(n_settings)
    n = chain.n_settings
    spec = CompressorSpec.huffman(k)
    pairs = [(0, n - 1)] + [(i, j) for _, i, j in chain.pairs()]
    sampler = _pair_sampler(source)
    values = []
    for (i, j), ss in zip(pairs, spawn_seeds(seed, len(pairs))):
        x, y = sampler(chain.alice_dirs[i], chain.bob_dirs[j], n_bits, ss)
        values.append(zurek_distance_approx(x, y, spec))
    rhs = values[1:]
    rhs_sum = math.fsum(rhs)
    return ZurekChainReport(n, k, n_bits, values[0], rhs, rhs_sum, values[0] > rhs_sum)


def minimal_violating_n(k: int, n_max: int = 64) -> Optional[int]:
    """Smallest N <= n_max whose analytic singlet chain is violated, else None."""
    check_block_size(k)
    for n in range(2, n_max + 1):
        r_diag, r_lhs = chain_rates_analytic(n, k)
        if r_lhs > (2 * n - 1) * r_diag:
            return n
    return None

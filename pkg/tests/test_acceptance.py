"""One test per acceptance criterion; the terminal summary prints a PASS/FAIL line for each."""

import itertools
import math
import time

import numpy as np
import pytest

from ncdchain import BitString
from ncdchain import huffman
from ncdchain.cli import main
from ncdchain.correlation_model import (
    BlochVector,
    directions_with_dot,
    sample_lhv_strings,
    sample_singlet_pair,
)
from ncdchain.huffman import (
    BlockWeights,
    build_codebook,
    decode,
    empirical_rate,
    encode,
    expected_rate,
)
from ncdchain.inequality import chain_rates_analytic, evaluate_chain
from ncdchain.information import (
    CompressorSpec,
    LocalSizeMode,
    binary_entropy,
    ncd,
    ncd_triangle_slack,
    triangle_tolerance,
)
from ncdchain.reproduce import paper_fixtures
from oracles import brute_force_min_expected_length

ASSUMED = LocalSizeMode.ASSUMED_INCOMPRESSIBLE
DOT_45 = 1 / math.sqrt(2)
P0_45 = (1 - DOT_45) / 2
P0_CHAIN3 = (1 - math.cos(math.pi / 10)) / 2


def test_ac1_worked_example_exact():
    s = BitString.from_str("000010010000001100")
    encode(s, 2)  # warm
    start = time.perf_counter()
    payload, book = encode(s, 2)
    elapsed = time.perf_counter() - start
    assert book.codes == {0b00: "0", 0b01: "10", 0b10: "110", 0b11: "111"}
    assert str(payload) == "00110100001110"
    assert len(payload) == 14
    assert empirical_rate(s, 2) == 7 / 9
    assert elapsed < 1e-3


def test_ac2_entropy_fixtures():
    assert binary_entropy(7 / 9) == pytest.approx(0.764, abs=1e-3)
    assert binary_entropy(P0_45) == pytest.approx(0.601, abs=1e-3)
    assert binary_entropy(P0_CHAIN3) == pytest.approx(0.166, abs=1e-3)


def test_ac3_expected_rate_fixtures():
    huffman._expected_rate.cache_clear()
    start = time.perf_counter()
    rates = [expected_rate(P0_45, k) for k in (2, 4, 8)]
    elapsed = time.perf_counter() - start
    assert rates == pytest.approx([0.709, 0.611, 0.605], abs=1e-3)
    assert elapsed < 0.1


def test_ac4_chain_fixtures():
    assert chain_rates_analytic(3, 9)[0] == pytest.approx(0.199, abs=1e-3)
    assert chain_rates_analytic(3, 10)[0] == pytest.approx(0.192, abs=1e-3)
    report = evaluate_chain(3, 9, "analytic", "singlet")
    assert report.violated and report.rhs_sum < 1
    assert not any(evaluate_chain(2, k, "analytic", "singlet").violated for k in range(1, 13))


def test_ac5_extremal_rate_law():
    for k in range(1, 25):
        assert expected_rate(0.0, k) == 1 / k
        assert expected_rate(1.0, k) == 1 / k


def test_ac6_codec_properties():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    for i in range(1000):
        k = (1, 2, 4, 8)[i % 4]
        n = int(rng.integers(1, 10_000 // k + 1)) * k
        # vary the bias so codebooks range from one symbol to the full alphabet
        bits = (rng.random(n) < rng.random()).astype(np.uint8)
        z = BitString.from_bits(bits)
        payload, book = encode(z, k)
        assert decode(payload, book, n // k) == z
        if len(book) >= 2:
            assert book.kraft_sum() == 1
        else:
            assert list(book.lengths().values()) == [1]
    for size in range(1, 7):
        combos = np.array(list(itertools.combinations_with_replacement(range(1, 9), size)))
        best = brute_force_min_expected_length(combos, size)
        for w, expected in zip(combos, best):
            book = build_codebook(BlockWeights(3, np.arange(size), w.astype(float)))
            if size >= 2:
                assert book.kraft_sum() == 1
            assert sum(int(c) * len(book.codes[b]) for b, c in enumerate(w)) == expected
    assert time.perf_counter() - start < 30


def test_ac7_redundancy_bound():
    start = time.perf_counter()
    for k in range(1, 13):
        for p0 in np.round(np.arange(0.01, 1.0, 0.01), 2):
            h = binary_entropy(float(p0))
            r = expected_rate(float(p0), k)
            # 1e-12 absorbs float rounding in the sums
            assert h - 1e-12 <= r <= h + 1 / k + 1e-12
    assert time.perf_counter() - start < 10


def test_ac8_monte_carlo_convergence():
    start = time.perf_counter()
    a, b = directions_with_dot(math.cos(math.pi / 10))
    n, k = 900_000, 9
    rates = []
    for seed in range(20):
        x, y = sample_singlet_pair(a, b, n, seed)
        rates.append(empirical_rate(x ^ y, k))
    rates = np.array(rates)
    analytic = expected_rate(P0_CHAIN3, k)
    assert analytic == pytest.approx(0.199, abs=1e-3)
    boot = np.random.default_rng(0).choice(rates, size=(2000, rates.size)).mean(axis=1)
    se = boot.std(ddof=1)
    assert abs(rates.mean() - analytic) < 3 * se
    assert time.perf_counter() - start < 60


def test_ac9_classical_satisfaction():
    start = time.perf_counter()
    violations = 0
    runs = 0
    for n_settings, k in itertools.product((2, 3, 4), (2, 9)):
        n_bits = 36_000
        for seed in range(100):
            report = evaluate_chain(n_settings, k, "monte_carlo", "lhv", n_bits=n_bits,
                                    seed=seed, correction_c=0.0)
            violations += report.violated
            runs += 1
    assert runs == 600
    assert violations == 0
    assert time.perf_counter() - start < 300


def test_ac10_ncd_metric_sanity():
    n, k = 100_000, 4
    spec = CompressorSpec.huffman(k)
    rng = np.random.default_rng(10)
    tol = triangle_tolerance(n, 10)
    for seed in range(5):
        angles = rng.uniform(0, math.pi, 6)
        dirs = [BlochVector.from_angle(float(t)) for t in angles]
        xs, ys = sample_lhv_strings(dirs[:3], dirs[3:], n, seed)
        strings = list(xs) + list(ys)
        for x, y in itertools.combinations(strings, 2):
            xy, yx = ncd(x, y, spec, ASSUMED), ncd(y, x, spec, ASSUMED)
            assert xy.value == yx.value
        for x in strings:
            assert ncd(x, x, spec, ASSUMED).value == 1 / k
        for x, y, w in itertools.permutations(strings, 3):
            assert ncd_triangle_slack(x, y, w, spec) <= tol


def test_ac11_reproduce_command(capsys):
    rows = paper_fixtures()
    assert rows and all(row.passed for row in rows)
    assert main(["reproduce-paper", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    table = [line for line in out.splitlines() if not line.startswith("#")][1:]
    assert len(table) == len(rows)
    assert all(line.endswith(",true") for line in table)

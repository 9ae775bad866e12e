import json
import math

import pytest

from ncdchain.errors import DimensionError, InvalidChainError, SampleTooSmallError
from ncdchain.huffman import expected_rate
from ncdchain.inequality import (
    REPORT_FIELDS,
    chain_rates_analytic,
    evaluate_chain,
    evaluate_zurek_chain,
    minimal_violating_n,
    neighbour_xor_p0,
)
from ncdchain.information import binary_entropy


def test_chain_rates_reference_values():
    r9, lhs = chain_rates_analytic(3, 9)
    assert r9 == pytest.approx(0.199, abs=1e-3)
    assert lhs == 1.0
    assert chain_rates_analytic(3, 10)[0] == pytest.approx(0.192, abs=1e-3)


@pytest.mark.parametrize("n", [2, 5, 17])
@pytest.mark.parametrize("k", [1, 3, 9])
def test_lhs_rate_is_one(n, k):
    assert chain_rates_analytic(n, k)[1] == 1.0


def test_analytic_n3_violated():
    report = evaluate_chain(3, 9, "analytic", "singlet")
    assert report.lhs == 1.0
    assert len(report.rhs_terms) == 5
    assert all(t == report.rhs_terms[0] for t in report.rhs_terms)
    assert report.rhs_sum == pytest.approx(0.995, abs=5e-3)
    assert report.rhs_sum < 1
    assert report.violated
    assert report.correction == 0.0


@pytest.mark.parametrize("k", range(1, 13))
def test_analytic_n2_satisfied(k):
    # Huffman never beats entropy: rhs >= 3 * H((1 - cos(pi/6))/2) = 3 * 0.3546 > 1
    assert 3 * binary_entropy(neighbour_xor_p0(2)) == pytest.approx(1.0637367, abs=1e-6)
    assert not evaluate_chain(2, k, "analytic", "singlet").violated


@pytest.mark.parametrize("n", range(2, 65))
def test_term_count_and_violation_rule(n):
    k = 9
    report = evaluate_chain(n, k, "analytic", "singlet")
    assert len(report.rhs_terms) == len(report.rhs_labels) == 2 * n - 1
    r_diag, _ = chain_rates_analytic(n, k)
    assert report.violated == (r_diag < 1 / (2 * n - 1))


def test_off_diagonal_labels_follow_chain():
    report = evaluate_chain(3, 4)
    assert report.rhs_labels == ["x1,y1", "x2,y2", "x3,y3", "x2,y1", "x3,y2"]


def test_minimal_violating_n():
    assert minimal_violating_n(9) == 3
    assert minimal_violating_n(1, 64) is None
    # brute-force scan of the reduced bound 1/(2N-1) <= r, independent of evaluate_chain
    for k in range(1, 13):
        expected = next(
            (
                n
                for n in range(2, 65)
                if expected_rate((1 - math.cos(math.pi / (4 * n - 2))) / 2, k) < 1 / (2 * n - 1)
            ),
            None,
        )
        assert minimal_violating_n(k, 64) == expected
    # frozen from the scan above: the 1/k rate floor forbids violation below k = 9
    assert [minimal_violating_n(k) for k in range(1, 13)] == [None] * 8 + [3] * 4


def test_analytic_lhv_not_violated():
    for n in (2, 3, 4, 8):
        report = evaluate_chain(n, 9, "analytic", "lhv")
        assert not report.violated
        assert report.rhs_terms[0] == expected_rate(1 / (4 * n - 2), 9)


def test_monte_carlo_requires_enough_bits():
    with pytest.raises(SampleTooSmallError):
        evaluate_chain(3, 9, "monte_carlo", "singlet", n_bits=2700 - 9)
    with pytest.raises(SampleTooSmallError):
        evaluate_chain(3, 9, "monte_carlo", "singlet")
    with pytest.raises(DimensionError):
        evaluate_chain(3, 9, "monte_carlo", "singlet", n_bits=3001)


def test_invalid_chain():
    with pytest.raises(InvalidChainError):
        evaluate_chain(1, 9)


def test_monte_carlo_report_fields_and_determinism():
    a = evaluate_chain(3, 9, "monte_carlo", "lhv", n_bits=27_000, seed=5)
    b = evaluate_chain(3, 9, "monte_carlo", "lhv", n_bits=27_000, seed=5)
    assert a.to_json() == b.to_json()
    d = json.loads(a.to_json())
    assert list(d)[: len(REPORT_FIELDS)] == list(REPORT_FIELDS)
    assert d["n_bits"] == 27_000 and d["seed"] == 5 and d["rng_id"]
    assert d["correction"] == pytest.approx(3 * math.log2(27_000) / 27_000)
    assert d["violated"] == (d["lhs"] > d["rhs_sum"] + d["correction"])
    assert d["violated_without_correction"] == (d["lhs"] > d["rhs_sum"])
    assert "counterfactual" in d["notes"]


def test_workers_do_not_change_results():
    serial = evaluate_chain(3, 4, "monte_carlo", "singlet", n_bits=12_000, seed=9)
    threaded = evaluate_chain(3, 4, "monte_carlo", "singlet", n_bits=12_000, seed=9, workers=4)
    assert serial == threaded


def test_shared_sampling_lhv_only():
    report = evaluate_chain(3, 9, "monte_carlo", "lhv", n_bits=27_000, seed=1, sampling="shared")
    assert not report.violated
    with pytest.raises(ValueError):
        evaluate_chain(3, 9, "monte_carlo", "singlet", n_bits=27_000, sampling="shared")


@pytest.mark.slow
def test_monte_carlo_singlet_close_to_analytic():
    report = evaluate_chain(3, 9, "monte_carlo", "singlet", n_bits=900_000, seed=42)
    r_diag, _ = chain_rates_analytic(3, 9)
    for term in report.rhs_terms:
        assert term == pytest.approx(r_diag, abs=0.005)
    assert report.lhs == pytest.approx(1.0, abs=0.005)


@pytest.mark.slow
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_zurek_chain_mirrors_ncd_violation(seed):
    n = 900_000
    report = evaluate_zurek_chain(3, 9, n, seed)
    # each term is 2 C(x ^ y): lhs ~ 2n, rhs ~ 2n * 5 * 0.199
    assert report.lhs == pytest.approx(2 * n, rel=0.005)
    assert report.rhs_sum < report.lhs
    assert report.violated
    assert not evaluate_zurek_chain(3, 9, n, seed, source="lhv").violated

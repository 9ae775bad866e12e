import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncdchain import BitString, xor_strings
from ncdchain.errors import DimensionError

bit_lists = st.lists(st.integers(0, 1), max_size=300)


@given(bit_lists)
def test_from_bits_round_trip(bits):
    s = BitString.from_bits(bits)
    assert len(s) == len(bits)
    assert s.bits.tolist() == bits
    assert BitString.from_str(str(s)) == s


def test_from_str_ignores_separators():
    assert str(BitString.from_str("00|00|10 01")) == "00001001"


def test_from_str_rejects_other_characters():
    with pytest.raises(ValueError):
        BitString.from_str("0120")


def test_padding_is_cleared():
    s = BitString(np.array([0b10111111], dtype=np.uint8), 2)
    assert str(s) == "10"
    assert s == BitString.from_str("10")


def test_count_zeros_and_complement():
    s = BitString.from_str("000010010000001100")
    assert s.count_zeros() == 14
    assert s.complement().count_zeros() == 4
    assert len(s.complement()) == 18


@pytest.mark.parametrize(
    "x, y, expected",
    [("1010", "1010", "0000"), ("1100", "1010", "0110")],
)
def test_xor_examples(x, y, expected):
    assert str(xor_strings(BitString.from_str(x), BitString.from_str(y))) == expected


@given(st.integers(0, 200).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, 1), min_size=n, max_size=n),
    st.lists(st.integers(0, 1), min_size=n, max_size=n),
)))
def test_xor_is_involutive(pair):
    x, y = (BitString.from_bits(b) for b in pair)
    z = xor_strings(x, y)
    assert len(z) == len(x)
    assert xor_strings(z, y) == x
    assert x ^ y == y ^ x


def test_xor_length_mismatch():
    with pytest.raises(DimensionError):
        xor_strings(BitString.from_str("01"), BitString.from_str("011"))


def test_slicing():
    s = BitString.from_str("0011010111")
    assert str(s[2:7]) == "11010"

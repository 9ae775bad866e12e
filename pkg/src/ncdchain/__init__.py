"""Compression of quantum and classically correlated bit strings.

Samples outcome strings from the two-qubit singlet and from a local
hidden-variable model, compresses them with XOR + block Huffman coding,
and evaluates the normalized-compression-distance chain inequality that
classical strings obey and singlet strings violate.
"""
__version__ = "0.1.0"

from .bits import BitString, xor_strings
from .correlation_model import (
    RNG_ID,
    BlochVector,
    JointDistribution,
    SettingsChain,
    XorDistribution,
    chain_settings,
    directions_with_dot,
    sample_lhv_pair,
    sample_lhv_strings,
    sample_singlet_pair,
    singlet_joint_distribution,
    xor_distribution,
)
from .errors import *  # noqa: F401,F403
from .huffman import (
    K_MAX,
    BlockWeights,
    HuffmanCodebook,
    build_codebook,
    decode,
    empirical_rate,
    encode,
    expected_block_weights,
    expected_rate,
)
from .inequality import (
    InequalityReport,
    chain_rates_analytic,
    evaluate_chain,
    evaluate_zurek_chain,
    minimal_violating_n,
)
from .information import (
    CompressorSpec,
    LocalSizeMode,
    NcdValue,
    binary_entropy,
    compressed_size,
    estimate_bit_probability,
    joint_compressed_size_xor,
    ncd,
    uniformity_check,
    zurek_distance_approx,
)

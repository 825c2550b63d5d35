"""Base-phi and Zeckendorf expansions of the natural numbers, with exact
arithmetic, generalized Beatty sequences and occurrence analysis of digit blocks.
"""

from .beatty import GBSParams, V, V0, classify_difference_word, gbs_recognize
from .exact import QuadInt, fib, floor_phi, lucas
from .numeration import PhiExpansion, phi_decode, phi_encode, zeck_decode, zeck_encode
from .occurrence import code, pi_permutation, predict_suffix, scan_prefix, scan_suffix
from .structure import lambda_interval, phi_encode_recursive

__all__ = [
    "GBSParams",
    "V",
    "V0",
    "classify_difference_word",
    "gbs_recognize",
    "QuadInt",
    "fib",
    "floor_phi",
    "lucas",
    "PhiExpansion",
    "phi_decode",
    "phi_encode",
    "zeck_decode",
    "zeck_encode",
    "code",
    "pi_permutation",
    "predict_suffix",
    "scan_prefix",
    "scan_suffix",
    "lambda_interval",
    "phi_encode_recursive",
]

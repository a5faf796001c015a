"""Explicit Witt coordinates on quotients of monoid algebras of perfect F_p-algebras."""
from .monoid_algebra import (
    MonoidAlgebraElement, augmentation_pi, delta, int_pow, phi_shift, teichmuller_symbol,
)
from .parsing import ParseError, parse_element, parse_witt_vector
from .perfect_algebra import AlgebraDescriptor, AlgebraElement, AlgebraError, frobenius, frobenius_inv
from .witt_core import (
    UnsupportedTruncation, alpha, alpha_2, alpha_3, alpha_n_theorem1, beta_n, congruent_mod_In,
    quotient_add, quotient_mul, sample_In,
)
from .witt_oracle import canonical_map, teichmuller, witt_add, witt_mul
from .witt_vector import WittVector

__all__ = [
    "AlgebraDescriptor", "AlgebraElement", "AlgebraError", "MonoidAlgebraElement", "ParseError",
    "UnsupportedTruncation", "WittVector", "alpha", "alpha_2", "alpha_3", "alpha_n_theorem1",
    "augmentation_pi", "beta_n", "canonical_map", "congruent_mod_In", "delta", "frobenius",
    "frobenius_inv", "int_pow", "parse_element", "parse_witt_vector", "phi_shift",
    "quotient_add", "quotient_mul", "sample_In", "teichmuller", "teichmuller_symbol",
    "witt_add", "witt_mul",
]

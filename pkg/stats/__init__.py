from stats.compare import char_fn, ks_distance, moments
from stats.gaussian import GaussianRef, gaussian_cdf, gaussian_char, gaussian_lattice_law

__all__ = [
    "char_fn",
    "ks_distance",
    "moments",
    "GaussianRef",
    "gaussian_cdf",
    "gaussian_char",
    "gaussian_lattice_law",
]

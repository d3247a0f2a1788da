"""
╔══════════════════════════════════════════╗
║     ROTDIFF — Gaussian Reference g(σ)    ║
╚══════════════════════════════════════════╝

Certified CDF and characteristic function of the centered
Gaussian with standard deviation σ, plus an exact rational
lattice discretization used to sanity-check the KS statistic.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from stepfun.distribution import ValueDistribution
from utils import certified
from utils.certified import lower, precision, to_iv, upper

MASS_DENOMINATOR = 10 ** 15


@dataclass(frozen=True)
class GaussianRef:
    sigma: object            # Fraction, int or certified interval

    def __post_init__(self):
        if lower(to_iv(self.sigma)) <= 0:
            raise ValueError("sigma must be certified positive")

    @property
    def sigma_iv(self):
        return to_iv(self.sigma)

    def cdf(self, x):
        """Enclosure of P(g(σ) ≤ x) for an exact or interval x."""
        return gaussian_cdf(to_iv(x) / self.sigma_iv)

    def char(self, lam):
        return gaussian_char(self.sigma, lam)


def gaussian_cdf(z):
    """Φ(z), certified (interval or exact argument)."""
    return certified.normal_cdf(z)


def gaussian_char(sigma, lam):
    """e^{−λ²σ²/2}, certified."""
    return certified.gaussian_char(sigma, lam)


def gaussian_lattice_law(sigma, step, span):
    """g(σ) lumped onto the lattice step·Z ∩ [−span, span], exact rational masses.

    The atom at k·step takes the mass of [(k−½)step, (k+½)step); the two end
    atoms also take the tails. Masses are rounded to denominator 10¹⁵ and then
    renormalized so they sum to 1 exactly.
    """
    step, span = Fraction(step), Fraction(span)
    if step <= 0 or span < step:
        raise ValueError("need 0 < step <= span")
    ref = GaussianRef(sigma)
    K = math.floor(span / step)
    ks = list(range(-K, K + 1))
    cuts = [(k + Fraction(1, 2)) * step for k in ks[:-1]]
    with precision(certified.DEFAULT_BITS):
        cdfs = [ref.cdf(c) for c in cuts]
    edges = [Fraction(0)] + [(lower(c) + upper(c)) / 2 for c in cdfs] + [Fraction(1)]
    raw = [max(b - a, Fraction(0)).limit_denominator(MASS_DENOMINATOR) for a, b in zip(edges, edges[1:])]
    kept = [(k * step, m) for k, m in zip(ks, raw) if m > 0]
    total = sum(m for _, m in kept)
    return ValueDistribution(tuple((exact_value, m / total) for exact_value, m in kept))

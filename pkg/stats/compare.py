"""
Exact laws against g(σ): Kolmogorov–Smirnov distance, moments,
characteristic function.
"""

import logging
import math
from fractions import Fraction

from mpmath import iv

from utils.certified import CInterval, expi_real, lower, precision, to_iv, upper

log = logging.getLogger("rotdiff.stats")

KS_BITS = 128


def ks_distance(law, ref):
    """sup_x |F_law(x) − Φ(x/σ)|, certified.

    F_law is a step function and Φ is continuous and increasing, so the
    supremum is reached at one of the one-sided limits at an atom.
    """
    lo_best = hi_best = Fraction(0)
    below = Fraction(0)
    with precision(KS_BITS):
        for v, mass in law.atoms:
            phi = ref.cdf(law.real_value(v))
            above = below + mass
            for level in (below, above):
                gap = abs(to_iv(level) - phi)
                lo_best = max(lo_best, lower(gap))
                hi_best = max(hi_best, upper(gap))
            below = above
        ks = iv.mpf((to_iv(lo_best).a, to_iv(hi_best).b))
    log.debug(f"KS over {len(law.atoms)} atoms: {float(lo_best):.6f}")
    return ks


def moments(law, max_order):
    """[m_1, …, m_max_order], m_k = Σ value^k · mass.

    Exact Fractions except odd orders of a law rescaled by an irrational
    √root_scale, which come back as certified intervals.
    """
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")
    s = law.root_scale
    root = math.isqrt(s)
    out = []
    for k in range(1, max_order + 1):
        raw = sum(Fraction(v) ** k * mass for v, mass in law.atoms)
        if root * root == s:
            out.append(raw / Fraction(root) ** k)
        elif k % 2 == 0:
            out.append(raw / Fraction(s) ** (k // 2))
        else:
            with precision(KS_BITS):
                out.append(to_iv(raw / Fraction(s) ** (k // 2)) / iv.sqrt(iv.mpf(s)))
    return out


def char_fn(law, lam):
    """Σ mass · e^{iλv}, v the real atoms of the law; certified."""
    lam = Fraction(lam)
    if lam == 0:
        return CInterval.exact(1)
    total = CInterval.exact(0)
    with precision(KS_BITS):
        lam_iv = to_iv(lam)
        for v, mass in law.atoms:
            total = total + expi_real(lam_iv * law.real_value(v)) * mass
    return total

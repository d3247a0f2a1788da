"""
╔══════════════════════════════════════════════════════════════╗
║      ROTDIFF — Fourier Side                                  ║
╠══════════════════════════════════════════════════════════════╣
║  ψ̂(k)   = (1/2iπk) Σ_i J_i e^{−2iπk b_i}   (J_i jump at b_i)  ║
║  ŷ_n(k) = ψ̂(k) · Σ_{j<n} e^{2iπjkα}                          ║
║         = ψ̂(k) · e^{iπ(n−1)θ} sin(πnθ)/sin(πθ),   θ = kα      ║
║                                                              ║
║  Jumps are grouped by their exact phase (mod 1/2, with sign) ║
║  first, so vanishing coefficients come out exactly zero.     ║
║  Angles are reduced mod 2 in exact arithmetic before they    ║
║  reach the interval sine, so large n cost no accuracy.       ║
╚══════════════════════════════════════════════════════════════╝
"""

import logging
import math
from fractions import Fraction

from mpmath import iv

from contfrac.convergents import alpha_enclosure
from stepfun.measures import integrate, variation
from utils.certified import (
    CInterval, expi, expi_real, hull, lower, precision, to_iv, upper, width,
)
from utils.errors import InsufficientPrecisionError

log = logging.getLogger("rotdiff.birkhoff")

HALF = Fraction(1, 2)
DEFAULT_MAX_WIDTH = 1e-12


def jump_groups(psi, k):
    """{phase: total jump} with e^{−2iπk b} folded onto phases in [0, 1/2)."""
    vals = psi.values
    groups = {}
    for i, t in enumerate(psi.ticks):
        jump = vals[i] - vals[i - 1]
        theta = Fraction(-k * t, psi.den) % 1
        if theta >= HALF:
            theta -= HALF
            jump = -jump
        groups[theta] = groups.get(theta, 0) + jump
    return {theta: j for theta, j in sorted(groups.items()) if j != 0}


def fourier_psi(psi, k):
    """Enclosure of ψ̂(k); degenerate (exact) when it vanishes or k = 0."""
    if k == 0:
        return CInterval.exact(integrate(psi))
    groups = jump_groups(psi, k)
    if not groups:
        return CInterval.exact(0)
    S = CInterval.exact(0)
    for theta, jump in groups.items():
        S = S + expi(theta) * jump
    denom = 2 * iv.pi * k
    return CInterval(S.im / denom, -S.re / denom)


def psi_hat_modulus_sq(psi, k):
    """|ψ̂(k)|² as an interval (exact numerator when one phase group survives)."""
    groups = jump_groups(psi, k)
    if not groups:
        return iv.mpf(0)
    if len(groups) == 1:
        (jump,) = groups.values()
        num = to_iv(Fraction(jump) ** 2)
    else:
        S = CInterval.exact(0)
        for theta, jump in groups.items():
            S = S + expi(theta) * jump
        num = S.modulus_sq()
    return num / (4 * iv.pi ** 2 * k * k)


def _reduced(lo, hi, mult, modulus):
    """Enclosure of mult·x mod `modulus` for x in [lo, hi], shifted exactly."""
    a, b = mult * lo, mult * hi
    if a > b:
        a, b = b, a
    shift = math.floor(a / modulus) * modulus
    return hull(to_iv(a - shift), to_iv(b - shift))


def _theta_bracket(cfg, k, true_alpha):
    if true_alpha:
        lo, hi = alpha_enclosure(cfg.alpha, cfg.shadow.order)
        return k * lo, k * hi
    theta = k * cfg.shadow.value
    return theta, theta


def dirichlet_ratio(lo, hi, n):
    """Enclosure of Σ_{j<n} e^{2iπjθ} over θ ∈ [lo, hi]."""
    if lo == hi and lo.denominator == 1:
        return CInterval.exact(n)
    sd = iv.sin(iv.pi * _reduced(lo, hi, 1, 2))
    if lower(sd) <= 0 <= upper(sd):
        raise InsufficientPrecisionError(f"sin(πθ) not separated from 0 for θ near {float(lo)}")
    sn = iv.sin(iv.pi * _reduced(lo, hi, n, 2))
    if lo == hi:
        rot = expi((Fraction(n - 1, 2) * lo) % 1)
    else:
        rot = expi_real(2 * iv.pi * _reduced(lo, hi, Fraction(n - 1, 2), 1))
    return rot * (sn / sd)


def dirichlet_modulus_sq(lo, hi, n):
    """|Σ_{j<n} e^{2iπjθ}|² = sin²(πnθ)/sin²(πθ)."""
    if lo == hi and lo.denominator == 1:
        return iv.mpf(n * n)
    sd = iv.sin(iv.pi * _reduced(lo, hi, 1, 2))
    sn = iv.sin(iv.pi * _reduced(lo, hi, n, 2))
    return (sn * sn) / (sd * sd)


def fourier_y(cfg, n, k, true_alpha=False, max_width=DEFAULT_MAX_WIDTH):
    """Certified enclosure of ŷ_n(k).

    With true_alpha the rotation number is the exact bracket of α at the
    shadow's order rather than P/Q, so the enclosure holds for α itself.
    """
    if k == 0 or n < 1:
        raise ValueError(f"fourier_y needs k != 0 and n >= 1 (k={k}, n={n})")
    cfg.shadow.require(n)
    if not jump_groups(cfg.psi, k):
        return CInterval.exact(0)
    lo, hi = _theta_bracket(cfg, k, true_alpha)
    bits = cfg.bits
    while True:
        with precision(bits):
            value = fourier_psi(cfg.psi, k) * dirichlet_ratio(lo, hi, n)
        if value.width() <= max_width:
            return value
        if bits * 2 > cfg.max_bits:
            raise InsufficientPrecisionError(
                f"ŷ_{n}({k}) enclosure width {value.width():.3g} above {max_width:g} "
                f"at {bits} bits",
                required_bits=bits * 2,
            )
        log.debug(f"ŷ_{n}({k}): width {value.width():.3g}, doubling to {bits * 2} bits")
        bits *= 2


def fourier_y_modulus(cfg, n, k, true_alpha=False):
    """Enclosure of |ŷ_n(k)|."""
    if not jump_groups(cfg.psi, k):
        return iv.mpf(0)
    lo, hi = _theta_bracket(cfg, k, true_alpha)
    with precision(cfg.bits):
        return iv.sqrt(psi_hat_modulus_sq(cfg.psi, k) * dirichlet_modulus_sq(lo, hi, n))


def _partial_energy(cfg, n, K):
    """Enclosure of Σ_{0<|k|≤K} |ŷ_n(k)|²."""
    cfg.shadow.require(n)
    total = iv.mpf(0)
    with precision(cfg.bits):
        for k in range(1, K + 1):
            if not jump_groups(cfg.psi, k):
                continue
            theta = k * cfg.shadow.value
            total += psi_hat_modulus_sq(cfg.psi, k) * dirichlet_modulus_sq(theta, theta, n)
        return 2 * total


def l2_via_parseval(cfg, n, K):
    """Interval guaranteed to contain ‖y_n‖₂² (Parseval partial sum plus tail bound).

    The tail uses |ŷ_n(k)| ≤ Var(y_n)/(2π|k|), Var(y_n) ≤ n·Var(ψ) and
    Σ_{k>K} 1/k² < 1/K.
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if n == 0:
        return iv.mpf(0)
    partial = _partial_energy(cfg, n, K)
    with precision(cfg.bits):
        nv = to_iv(n * variation(cfg.psi))
        tail = nv * nv / (2 * iv.pi ** 2 * K)
        out = iv.mpf((partial.a, (partial + tail).b))
    log.debug(f"Parseval n={n} K={K}: width {width(out):.3g}")
    return out


def parseval_lower_bound(cfg, n, K):
    """Certified lower bound of ‖y_n‖₂² from the first K frequencies."""
    if n == 0:
        return Fraction(0)
    return lower(_partial_energy(cfg, n, K))

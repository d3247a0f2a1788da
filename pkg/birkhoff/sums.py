"""
╔══════════════════════════════════════════════════════════════╗
║      ROTDIFF — Birkhoff Sums                                 ║
╠══════════════════════════════════════════════════════════════╣
║  Block B(s, ℓ)(x) = Σ_{s ≤ j < s+ℓ} ψ(x + jP/Q), exactly.     ║
║                                                              ║
║  "sort" construction (default):                              ║
║    every jump J_i of ψ at b_i reappears in B at b_i − jP/Q.   ║
║    On the grid L = lcm(den ψ, Q) those positions are          ║
║    integers; sort them once, take the running sum of jumps   ║
║    and fix the constant with one O(ℓ) point evaluation.      ║
║    Cost O(ℓ·m log(ℓ·m)) for an m-jump ψ.                     ║
║                                                              ║
║  "merge" construction: balanced pairwise add of the ℓ        ║
║    rotated copies. Same result; kept as an independent       ║
║    oracle.                                                   ║
╚══════════════════════════════════════════════════════════════╝
"""

import logging
import math
import time
from fractions import Fraction

from stepfun.algebra import add_many, rotate
from stepfun.function import StepFunction, exact
from stepfun.measures import autocorrelation

log = logging.getLogger("rotdiff.birkhoff")

LARGE_BLOCK = 100_000


def _jumps(psi):
    vals = psi.values
    return [v - vals[i - 1] for i, v in enumerate(vals)]


def point_sum(psi, shadow, x_num, x_den, start, length):
    """Σ_{start ≤ j < start+length} ψ(x + jP/Q) at x = x_num/x_den, streamed."""
    D = x_den * shadow.Q
    num = (x_num * shadow.Q + start * shadow.P * x_den) % D
    inc = (shadow.P * x_den) % D
    total = 0
    for _ in range(length):
        total += psi.at_grid(num, D)
        num += inc
        if num >= D:
            num -= D
    return total


def _block_sorted(psi, shadow, start, length):
    m = len(psi.ticks)
    L = math.lcm(psi.den, shadow.Q)
    scale = L // psi.den
    step = (shadow.P * (L // shadow.Q)) % L
    jumps = _jumps(psi)
    bases = [t * scale for t in psi.ticks]
    stop = start + length
    first = (start * step) % L
    keys = []
    for i, b in enumerate(bases):
        pos = (b - first) % L
        for _ in range(start, stop):
            keys.append(pos * m + i)
            pos -= step
            if pos < 0:
                pos += L
    keys.sort()

    ticks, values = [], []
    cum = 0
    for key in keys:
        pos, i = divmod(key, m)
        cum += jumps[i]
        if ticks and ticks[-1] == pos:
            values[-1] = cum
        else:
            ticks.append(pos)
            values.append(cum)

    # the running sum is correct up to a constant; pin it with the value at 0
    at_zero = point_sum(psi, shadow, 0, 1, start, length)
    offset = at_zero - values[0] if ticks[0] == 0 else at_zero
    return StepFunction.make(L, ticks, [v + offset for v in values])


def _block_merged(psi, shadow, start, length):
    return add_many(rotate(psi, shadow.phase(j)) for j in range(start, start + length))


def birkhoff_block(cfg, start, length, method="sort"):
    """Σ_{start ≤ j < start+length} R_{jα}ψ with α replaced by the shadow P/Q."""
    if start < 0 or length < 0:
        raise ValueError(f"start and length must be non-negative ({start}, {length})")
    cfg.shadow.require(start + length)
    psi = cfg.psi
    if length == 0:
        return StepFunction.zero()
    if psi.is_constant:
        return StepFunction.constant(exact(psi.values[0] * length))
    t0 = time.perf_counter()
    if method == "merge":
        out = _block_merged(psi, cfg.shadow, start, length)
    elif method == "sort":
        out = _block_sorted(psi, cfg.shadow, start, length)
    else:
        raise ValueError(f"unknown construction method {method!r}")
    if length >= LARGE_BLOCK:
        log.info(f"block [{start}, {start + length}) built: {out.pieces} pieces "
                 f"in {time.perf_counter() - t0:.2f}s")
    return out


def birkhoff_sum(cfg, n, method="sort"):
    """y_n = Σ_{k<n} R_{kα}ψ."""
    return birkhoff_block(cfg, 0, n, method)


def birkhoff_value(cfg, x, n):
    """y_n(x) in O(n) time and O(1) memory."""
    cfg.shadow.require(n)
    x = Fraction(x)
    return point_sum(cfg.psi, cfg.shadow, x.numerator, x.denominator, 0, n)


def l2_profile(cfg, m_max):
    """[‖y_m‖₂² for m = 0..m_max], exact.

    ‖y_m‖² = m·c(0) + 2·Σ_{1≤d<m} (m−d)·c(dα), with c the autocorrelation
    of ψ, accumulated as m·A_m − B_m.
    """
    cfg.shadow.require(m_max)
    psi = cfg.psi
    c0 = autocorrelation(psi, 0)
    out = [0]
    A = B = 0            # Σ_{1≤d<m} c(d), Σ_{1≤d<m} d·c(d)
    for m in range(1, m_max + 1):
        if m > 1:
            c = autocorrelation(psi, cfg.shadow.phase(m - 1))
            A += c
            B += (m - 1) * c
        out.append(exact(m * c0 + 2 * (m * A - B)))
    return out

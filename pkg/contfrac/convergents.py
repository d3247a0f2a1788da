"""
╔══════════════════════════════════════════════════════════════╗
║      ROTDIFF — Convergents & Approximation Quality           ║
╠══════════════════════════════════════════════════════════════╣
║  p_n = a_n p_{n-1} + p_{n-2},  q_n = a_n q_{n-1} + q_{n-2}   ║
║  seeds p_{-1}=1, q_{-1}=0, p_{-2}=0, q_{-2}=1, a_0 = 0.      ║
║                                                              ║
║  α is never a float. It is pinned between two consecutive    ║
║  convergents c_M, c_{M+1} of a chosen precision order M and  ║
║  every comparison is decided on that exact bracket, or       ║
║  refused with the order that would decide it.                ║
╚══════════════════════════════════════════════════════════════╝
"""

import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from utils.errors import InsufficientPrecisionError, UsageError

log = logging.getLogger("rotdiff.contfrac")

HALF = Fraction(1, 2)
# how far past a straddling order we look for one that decides it
ESCALATION_SPAN = 64


@dataclass(frozen=True)
class Convergent:
    index: int
    p: int
    q: int

    @property
    def value(self):
        return Fraction(self.p, self.q)

    def to_dict(self):
        return {"n": self.index, "p": str(self.p), "q": str(self.q)}


class _ConvergentTable:
    """Grow-only convergent list for one α, shared by every caller."""

    def __init__(self, pq):
        self.pq = pq
        self.rows = [Convergent(0, pq.a(0), 1)]
        self._prev = (1, 0)          # (p_{n-1}, q_{n-1}) for the row before the last
        self._lock = threading.Lock()

    def upto(self, N):
        with self._lock:
            while len(self.rows) <= N:
                n = len(self.rows)
                a = self.pq.a(n)
                last = self.rows[-1]
                p = a * last.p + self._prev[0]
                q = a * last.q + self._prev[1]
                self._prev = (last.p, last.q)
                self.rows.append(Convergent(n, p, q))
            return self.rows[: N + 1]


@lru_cache(maxsize=256)
def _table(pq):
    return _ConvergentTable(pq)


def convergents(pq, N):
    """Convergents 0..N of α = [0; a_1, a_2, …]."""
    if N < 0:
        raise UsageError(f"N must be >= 0, got {N}")
    return list(_table(pq).upto(N))


def convergent(pq, n):
    return _table(pq).upto(n)[n]


def index_below(pq, bound):
    """Largest index n ≥ 0 with q_n ≤ bound (bound ≥ 1)."""
    n = 0
    while convergent(pq, n + 1).q <= bound:
        n += 1
    return n


# ─── Enclosures of α ─────────────────────────────────

def alpha_enclosure(pq, order):
    """(lo, hi): α lies strictly between c_order and c_{order+1}."""
    a = convergent(pq, order).value
    b = convergent(pq, order + 1).value
    return (a, b) if a < b else (b, a)


def circle_norm(x):
    """|x|_T: distance from x to the nearest integer."""
    x = Fraction(x)
    r = x - math.floor(x)
    return min(r, 1 - r)


def circle_norm_bounds(lo, hi):
    """Exact (min, max) of |x|_T over lo ≤ x ≤ hi."""
    lo, hi = Fraction(lo), Fraction(hi)
    if hi < lo:
        lo, hi = hi, lo
    if hi - lo >= 1:
        return Fraction(0), HALF
    ends = (circle_norm(lo), circle_norm(hi))
    has_integer = math.floor(hi) >= math.ceil(lo)
    has_half = math.floor(hi - HALF) >= math.ceil(lo - HALF)
    return (Fraction(0) if has_integer else min(ends),
            HALF if has_half else max(ends))


def circle_norm_enclosure(pq, k, order):
    """Exact bracket of |kα|_T from the order-`order` bracket of α."""
    lo, hi = alpha_enclosure(pq, order)
    return circle_norm_bounds(k * lo, k * hi)


# ─── Approximation quality β = q_n² |α − p_n/q_n| ────

@dataclass(frozen=True)
class ApproxQuality:
    convergent: Convergent
    order: int
    beta: Fraction        # value with c_order standing in for α
    lower: Fraction       # certified bracket of the true β
    upper: Fraction
    good: bool            # β < 1/2 (strict; a tie is not good)

    def to_dict(self):
        return {
            "n": self.convergent.index, "q": str(self.convergent.q),
            "order": self.order, "beta": float(self.beta),
            "beta_lo": float(self.lower), "beta_hi": float(self.upper),
            "good": self.good,
        }


def _beta_bracket(pq, n, order):
    c = convergent(pq, n)
    lo, hi = alpha_enclosure(pq, order)
    q2 = c.q * c.q
    # c_n lies outside (lo, hi) when order > n, so |x - c_n| is monotone there
    ends = sorted((q2 * abs(lo - c.value), q2 * abs(hi - c.value)))
    return c, ends[0], ends[1]


def _decides(lower, upper):
    return upper < HALF or lower >= HALF


def approx_quality(pq, n, precision_order):
    """β of the n-th convergent, bracketed using convergents of order precision_order."""
    if precision_order <= n + 2:
        raise InsufficientPrecisionError(
            f"precision order {precision_order} cannot certify β_{n}; need > {n + 2}",
            required_order=n + 3,
        )
    c, lower, upper = _beta_bracket(pq, n, precision_order)
    if not _decides(lower, upper):
        required = None
        for order in range(precision_order + 1, precision_order + ESCALATION_SPAN):
            _, lo2, hi2 = _beta_bracket(pq, n, order)
            if _decides(lo2, hi2):
                required = order
                break
        raise InsufficientPrecisionError(
            f"β_{n} vs 1/2 undecided at order {precision_order}",
            required_order=required,
        )
    beta = c.q * c.q * abs(convergent(pq, precision_order).value - c.value)
    return ApproxQuality(c, precision_order, beta, lower, upper, upper < HALF)


def certified_quality(pq, n, start_order=None, max_order=None):
    """approx_quality with automatic escalation of the precision order."""
    order = max(start_order or 0, n + 3)
    limit = max_order if max_order is not None else order + 4 * ESCALATION_SPAN
    while True:
        try:
            return approx_quality(pq, n, order)
        except InsufficientPrecisionError as e:
            if e.required_order is None or e.required_order > limit:
                raise
            log.debug(f"β_{n}: escalating order {order} → {e.required_order}")
            order = e.required_order


def odd_good_convergents(pq, N, precision_order):
    """Convergents up to index N with odd q and certified β < 1/2."""
    if N < 4:
        raise UsageError(f"odd_good_convergents needs N >= 4, got {N}")
    selected = []
    for c in convergents(pq, N):
        if c.q % 2 == 0:
            continue
        if certified_quality(pq, c.index, start_order=precision_order).good:
            selected.append(c)
    return selected


def constant_type_bound(pq, N, precision_order):
    """Certified lower bound of min_{1≤k≤N} k·|kα|_T.

    Only convergent denominators can attain the minimum (for q_j ≤ k < q_{j+1},
    |kα|_T ≥ |q_jα|_T and k ≥ q_j), so the scan is over those. Each term is
    bracketed at order max(precision_order, j+3), which does not depend on N.
    """
    if N < 1:
        raise UsageError(f"constant_type_bound needs N >= 1, got {N}")
    best = None
    for c in convergents(pq, index_below(pq, N)):
        order = max(precision_order, c.index + 3)
        lo, _ = circle_norm_enclosure(pq, c.q, order)
        if lo == 0:
            raise InsufficientPrecisionError(
                f"|{c.q}α|_T not separated from 0 at order {order}",
                required_order=order + 1,
            )
        bound = c.q * lo
        if best is None or bound < best:
            best = bound
    return best

"""
╔══════════════════════════════════════════════════════════════╗
║      ROTDIFF — Shadow Rational                               ║
╠══════════════════════════════════════════════════════════════╣
║  Exact Birkhoff sums are built with a convergent P/Q in      ║
║  place of α. For iterates |m| ≤ N and breakpoint differences ║
║  Δ = b_i − b_j, the point Δ − mα must sit on the same side of ║
║  every integer as Δ − mP/Q. With ε ≥ |α − P/Q|:               ║
║                                                              ║
║      margin = min_{Δ, 1≤|m|≤N} |Δ − mP/Q|_T  −  N·ε  > 0       ║
║                                                              ║
║  certifies that every breakpoint ordering and plateau        ║
║  decision taken with P/Q agrees with true α.                 ║
║                                                              ║
║  Policy: smallest order with Q > N² and margin > 0; orders   ║
║  are escalated automatically when the margin fails.          ║
╚══════════════════════════════════════════════════════════════╝
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from contfrac.convergents import convergent, circle_norm, index_below
from utils.errors import InsufficientPrecisionError, ShadowNotCertifiedError, UsageError

log = logging.getLogger("rotdiff.contfrac")

MAX_ESCALATION = 64


@dataclass(frozen=True)
class ShadowRational:
    P: int
    Q: int
    order: int
    horizon: int
    margin: Fraction
    drift: Fraction = Fraction(0)          # ε, an upper bound of |α − P/Q|
    breakpoints: tuple = field(default=(), repr=False)

    @property
    def value(self):
        return Fraction(self.P, self.Q)

    def phase(self, k):
        """k·P/Q mod 1, exactly."""
        return Fraction((k * self.P) % self.Q, self.Q)

    def require(self, n):
        if n > self.horizon:
            raise ShadowNotCertifiedError(n, self.horizon)

    def covers(self, breakpoints):
        return set(Fraction(b) for b in breakpoints) <= set(self.breakpoints)

    def to_dict(self):
        return {
            "P": str(self.P), "Q": str(self.Q), "order": self.order,
            "horizon": self.horizon,
            "margin": {"num": str(self.margin.numerator), "den": str(self.margin.denominator)},
        }


def _differences(breakpoints):
    """Nonzero breakpoint differences mod 1, as a sorted tuple of Fractions in (0,1)."""
    diffs = set()
    for b in breakpoints:
        for c in breakpoints:
            delta = (b - c) % 1
            if delta:
                diffs.add(delta)
    return tuple(sorted(diffs))


def _coincides(delta, P, Q, N):
    """True iff Δ ≡ mP/Q (mod 1) for some 1 ≤ |m| ≤ N."""
    u, D = delta.numerator, delta.denominator
    if Q % D:
        return False
    # m·P ≡ u·Q/D (mod Q); P is invertible mod Q
    m0 = (u * (Q // D) * pow(P, -1, Q)) % Q
    return 0 < m0 <= N or 0 < Q - m0 <= N


def separation_margin(P, Q, order_next_q, pq, horizon, breakpoints):
    """The certified margin of P/Q (c_order) over `horizon` iterates."""
    drift = Fraction(1, Q * order_next_q)
    # homogeneous part: best approximation makes q_j (largest q_j ≤ N) the minimiser
    j = index_below(pq, horizon)
    q_j = convergent(pq, j).q
    candidates = [circle_norm(Fraction(q_j * P, Q))]
    for delta in _differences(breakpoints):
        if _coincides(delta, P, Q, horizon):
            return Fraction(-1), drift
        # a nonzero residue u/D − mP/Q is a multiple of 1/lcm(D, Q)
        candidates.append(Fraction(1, Q * delta.denominator))
    return min(candidates) - horizon * drift, drift


def shadow_for(pq, horizon, breakpoints=(0, Fraction(1, 2)), max_escalation=MAX_ESCALATION):
    """The certified shadow rational for α = pq up to `horizon` iterates."""
    if horizon < 1:
        raise UsageError(f"horizon must be >= 1, got {horizon}")
    breakpoints = tuple(sorted(set(Fraction(b) % 1 for b in breakpoints)))
    n = index_below(pq, horizon * horizon) + 1
    for order in range(n, n + max_escalation):
        c = convergent(pq, order)
        nxt = convergent(pq, order + 1)
        margin, drift = separation_margin(c.p, c.q, nxt.q, pq, horizon, breakpoints)
        if margin > 0:
            log.debug(f"shadow for {pq.label}: order {order}, Q has {len(str(c.q))} digits")
            return ShadowRational(c.p, c.q, order, horizon, margin, drift, breakpoints)
        log.debug(f"shadow order {order} rejected (margin {float(margin):.3g})")
    raise InsufficientPrecisionError(
        f"no shadow rational certified for horizon {horizon} within {max_escalation} orders",
        required_order=n + max_escalation,
    )

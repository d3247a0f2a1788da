"""
Fourier-side checks, certified with mpmath intervals.

weak_null           |ŷ_{q_n}(k)| ≤ Var(ψ)·|q_nα|_T / (4|kα|_T), and the
                    decay of |ŷ_{q_n}(k)| in n once |k|·|q_nα|_T < 1/4
cohomology_witness  odd q with |qα|_T < 1/q, each giving a lower bound
                    on the would-be |û(q)| of a transfer function u
"""

import logging
import math
from fractions import Fraction

from mpmath import iv

from birkhoff.fourier import fourier_y_modulus, jump_groups, psi_hat_modulus_sq
from contfrac.convergents import certified_quality, circle_norm_enclosure, convergent
from stepfun.measures import variation
from utils.certified import lower, midpoint, precision, to_iv, upper
from utils.errors import HorizonExhaustedError, UsageError
from verify.report import VerificationReport, trend_ok

log = logging.getLogger("rotdiff.verify")

QUARTER = Fraction(1, 4)


def check_weak_null(cfg, K, max_index, trend_factor=2):
    """Hard bound on every |ŷ_{q_n}(k)|, 1 ≤ k ≤ K, 1 ≤ n ≤ max_index, plus its decay."""
    if K < 1:
        raise UsageError(f"check_weak_null needs K >= 1, got {K}")
    params = {"alpha": cfg.alpha.label, "K": K, "max_index": max_index}
    bound_report = VerificationReport("weak_null_bound", "hard", params=params)
    trend_report = VerificationReport("weak_null_trend", "trend", params=params)
    var = variation(cfg.psi)
    order = cfg.shadow.order

    for k in range(1, K + 1):
        if not jump_groups(cfg.psi, k):
            # every ŷ_n(k) vanishes with ψ̂(k)
            for n in range(1, max_index + 1):
                bound_report.record({"k": k, "n": n}, 0, Fraction(0))
            continue
        _, k_hi = circle_norm_enclosure(cfg.alpha, k, order)
        tail = []
        for n in range(1, max_index + 1):
            c = convergent(cfg.alpha, n)
            measured = fourier_y_modulus(cfg, c.q, k, true_alpha=True)
            qn_lo, qn_hi = circle_norm_enclosure(cfg.alpha, c.q, max(order, n + 3))
            bound = var * qn_lo / (4 * k_hi)
            ratio = upper(measured) / bound if bound else None
            plain = upper(measured) / (var * qn_lo) if var and qn_lo else None
            bound_report.record(
                {"k": k, "n": n, "q": str(c.q),
                 "plain_ratio": float(plain) if plain is not None else None},
                measured, ratio, ok=ratio is not None and ratio <= 1,
            )
            if k * qn_hi < QUARTER:
                tail.append(midpoint(measured))
        ok = trend_ok(tail, trend_factor, decreasing=True)
        trend_report.record({"k": k, "points": len(tail)}, tail[-1] if tail else 0, ok=ok)
        if not ok:
            log.warning(f"weak_null: |ŷ_q(k)| for k={k} does not decay: {tail}")

    group = VerificationReport("weak_null", "group", params=params,
                               sub_reports=[bound_report, trend_report])
    return group.close_group()


def cohomology_witness(cfg, count):
    """count odd convergent denominators q with |qα|_T < 1/q, and the |û(q)| floor each forces.

    A solution u of R_α u − u = ψ would have |û(q)| = |ψ̂(q)|/|e^{2iπqα} − 1|.
    Pass iff every certified lower bound is ≥ 1/(2π²).
    """
    report = VerificationReport("cohomology_witness", "hard",
                                params={"alpha": cfg.alpha.label, "count": count})
    if count < 1:
        return report
    with precision(cfg.bits):
        floor = 1 / (2 * iv.pi ** 2)
        found = []
        n = 0
        while len(found) < count:
            n += 1
            c = convergent(cfg.alpha, n)
            if c.q > cfg.horizon:
                raise HorizonExhaustedError(
                    f"only {len(found)} of {count} witnesses below horizon {cfg.horizon}",
                    found=len(found), horizon=cfg.horizon,
                )
            if c.q % 2 == 0 or not certified_quality(cfg.alpha, n).good:
                continue
            _, norm_hi = circle_norm_enclosure(cfg.alpha, c.q, max(cfg.shadow.order, n + 2))
            if norm_hi >= Fraction(1, c.q):
                continue
            coeff = iv.sqrt(psi_hat_modulus_sq(cfg.psi, c.q))
            bound = lower(coeff) / upper(2 * iv.pi * to_iv(norm_hi))
            found.append(c.q)
            ratio = Fraction(upper(floor)) / bound if bound else None
            report.record({"n": n, "q": str(c.q)}, bound, ratio,
                          ok=bound > 0 and bound >= upper(floor))
    report.details["witnesses_q"] = [str(q) for q in found]
    report.details["floor"] = float(upper(floor))
    report.details["floor_strong"] = 1 / math.pi ** 2
    log.info(f"cohomology witnesses for {cfg.alpha.label}: q = {found}")
    return report

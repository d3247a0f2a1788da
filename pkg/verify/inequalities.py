"""
╔══════════════════════════════════════════════════════════════╗
║      ROTDIFF — Exact Inequality Checks                       ║
╠══════════════════════════════════════════════════════════════╣
║  Denjoy–Koksma     ‖y_q‖_∞ ≤ Var(ψ) at every convergent q     ║
║  refined DK        ‖y_q‖_∞ ≤ 1 for ψ*, q odd, β < 1/2, plus   ║
║                    the run pattern of y_q on every cell      ║
║                    [j/q, (j+1)/q)                            ║
║  parity            the four convergent-parity facts          ║
║  r_sequence_bound  r_n ≤ q_{n+1} when every a_k ≥ 2           ║
║  basic             chord bounds for |1 − e^{2iπx}| and        ║
║                    |q_nα|_T ≤ 1/q_{n+1}                       ║
║                                                              ║
║  Pass/fail is exact or certified. No tolerance anywhere.     ║
╚══════════════════════════════════════════════════════════════╝
"""

import logging
from fractions import Fraction

from mpmath import iv

from birkhoff.sums import birkhoff_sum
from contfrac.convergents import (
    certified_quality, circle_norm_enclosure, constant_type_bound, convergent, convergents,
)
from limits.plans import r_sequence
from stepfun.measures import norms, variation
from utils.certified import lower, precision, to_iv, upper
from utils.errors import ConfigError
from verify.report import VerificationReport

log = logging.getLogger("rotdiff.verify")


# ─── Denjoy–Koksma ───────────────────────────────────

def check_denjoy_koksma(cfg, max_index):
    """sup|y_{q_n}| ≤ Var(ψ) for n = 0..max_index."""
    var = variation(cfg.psi)
    report = VerificationReport("denjoy_koksma", "hard",
                                params={"alpha": cfg.alpha.label, "max_index": max_index})
    for c in convergents(cfg.alpha, max_index):
        # every convergent has |α − p/q| < 1/q², so all of them qualify
        sup = norms(birkhoff_sum(cfg, c.q)).sup
        ratio = Fraction(sup, 1) / var if var else Fraction(0)
        report.record({"n": c.index, "q": str(c.q)}, sup, ratio, ok=sup <= var)
    log.info(f"denjoy_koksma {cfg.alpha.label}: {report.instances_checked} convergents, "
             f"worst {float(report.worst_ratio or 0):.4f}")
    return report


# ─── Refined Denjoy–Koksma for ψ* ────────────────────

def cell_pattern_ok(runs, L, alpha_above):
    """Run shape on one cell, offsets scaled so the cell is [0, 2L) with centre L.

    α > p/q:  +1, −1 from s ≤ L, then +1 again from some e > L (optional)
    α < p/q:  −1, +1 from u < L, −1 from w ≥ L; or +1 then −1 from w ≥ L
    """
    values = [v for _, v in runs]
    offsets = [r for r, _ in runs]
    if alpha_above:
        if values == [1, -1]:
            return 0 < offsets[1] <= L
        if values == [1, -1, 1]:
            return 0 < offsets[1] <= L < offsets[2] < 2 * L
        return False
    if values == [-1, 1, -1]:
        return 0 < offsets[1] < L <= offsets[2] < 2 * L
    if values == [1, -1]:
        return L <= offsets[1] < 2 * L
    return False


def cell_runs(y, q):
    """Per-cell runs of y on the cells [j/q, (j+1)/q), j = 0..q−1."""
    L = y.den
    cells = [[(0, y.at_grid(j, q))] for j in range(q)]
    for t, v in zip(y.ticks, y.values):
        j = (q * t) // L
        r = 2 * (q * t - j * L)
        if r:
            cells[j].append((r, v))
    return cells


def check_refined_dk(cfg, max_index):
    """For ψ* and odd good q: sup|y_q| ≤ 1, y_q = ±1, and the per-cell run shape."""
    if not cfg.is_psi_star:
        raise ConfigError("refined Denjoy–Koksma check needs ψ = ψ*")
    report = VerificationReport("refined_denjoy_koksma", "hard",
                                params={"alpha": cfg.alpha.label, "max_index": max_index})
    for c in convergents(cfg.alpha, max_index):
        if c.q % 2 == 0:
            report.skip("even q")
            continue
        if not certified_quality(cfg.alpha, c.index).good:
            report.skip("beta >= 1/2")
            continue
        y = birkhoff_sum(cfg, c.q)
        sup = norms(y).sup
        signs_ok = set(y.values) <= {1, -1}
        alpha_above = cfg.shadow.value > c.value
        bad_cells = [j for j, runs in enumerate(cell_runs(y, c.q))
                     if not cell_pattern_ok(runs, y.den, alpha_above)]
        ok = sup <= 1 and signs_ok and not bad_cells
        if bad_cells:
            log.warning(f"refined DK: q={c.q} cell shape fails on cells {bad_cells[:5]}")
        report.record({"n": c.index, "q": str(c.q), "bad_cells": len(bad_cells)},
                      sup, Fraction(sup), ok=ok)
    log.info(f"refined_dk {cfg.alpha.label}: {report.instances_checked} checked, "
             f"{report.skipped} skipped")
    return report


# ─── Convergent parity ───────────────────────────────

HALF = Fraction(1, 2)


def check_parity_lemma(alpha, N):
    """The four parity facts over indices 0..N (N = 0 is vacuous)."""
    report = VerificationReport("parity", "hard", params={"alpha": alpha.label, "N": N})
    if N < 1:
        return report
    cs = convergents(alpha, N)
    quality = {}

    def good(n):
        if n not in quality:
            quality[n] = certified_quality(alpha, n)
        return quality[n].good

    def beta_hi(n):
        good(n)
        return quality[n].upper

    for n in range(N):
        ok = good(n) or good(n + 1)
        best = min(beta_hi(n), beta_hi(n + 1))
        report.record({"part": 1, "n": n}, best, best / HALF, ok=ok)
    for n in range(N):
        if cs[n].q % 2 == 0:
            report.record({"part": 2, "n": n}, cs[n + 1].q % 2, ok=cs[n + 1].q % 2 == 1)
    for n in range(N - 1):
        if cs[n].q % 2 == 0 and cs[n + 2].q % 2 == 0:
            report.record({"part": 3, "n": n}, beta_hi(n + 1), beta_hi(n + 1) / HALF,
                          ok=good(n + 1))
    for n in range(N - 2):
        found = [m for m in range(n, n + 4) if cs[m].q % 2 == 1 and good(m)]
        report.record({"part": 4, "n": n}, len(found), ok=bool(found))
    return report


# ─── r_n against q_{n+1} ─────────────────────────────

def check_r_sequence_bound(alpha, N):
    """r_n = q_1 + … + q_n ≤ q_{n+1} for n = 1..N, exact.

    The bound needs a_2, …, a_{n+1} ≥ 2 (then r_n ≤ 2q_n ≤ q_{n+1});
    stages where some earlier a_k = 1 are skipped, not failed.
    """
    report = VerificationReport("r_sequence_bound", "hard",
                                params={"alpha": alpha.label, "N": N})
    if N < 1:
        return report
    plan = r_sequence(alpha, N)
    cs = convergents(alpha, N + 1)
    applies = True
    for n, r in enumerate(plan.indices, start=1):
        applies = applies and alpha.a(n + 1) >= 2
        if not applies:
            report.skip("some a_k = 1 with 2 <= k <= n+1")
            continue
        nxt = cs[n + 1].q
        report.record({"n": n, "r": str(r), "q_next": str(nxt)}, r, Fraction(r, nxt),
                      ok=r <= nxt)
    return report


# ─── Basic inequalities ──────────────────────────────

def _chord(t):
    """|1 − e^{2iπt}| = 2 sin(π|t|_T) for |t|_T = t ∈ [0, 1/2]."""
    return 2 * iv.sin(iv.pi * to_iv(t))


def _chord_bounds(report, cfg, K):
    order = cfg.shadow.order
    with precision(cfg.bits):
        for k in range(1, K + 1):
            lo, hi = circle_norm_enclosure(cfg.alpha, k, order)
            left = Fraction(4) * hi / lower(_chord(lo)) if lo else None
            right = upper(_chord(hi)) / lower(2 * iv.pi * to_iv(lo)) if lo else None
            ok = left is not None and left <= 1 and right <= 1
            report.record({"k": k, "side": "4|x| <= chord"}, left, left, ok=ok)
            report.record({"k": k, "side": "chord <= 2pi|x|"}, right, right, ok=ok)


def _chord_multiplier(report, cfg, K, max_index):
    order = cfg.shadow.order
    ms = sorted({c.q for c in convergents(cfg.alpha, max_index) if c.q > 1})
    with precision(cfg.bits):
        for k in range(1, K + 1):
            lo, _ = circle_norm_enclosure(cfg.alpha, k, order)
            base = lower(_chord(lo))
            if base <= 0:
                report.record({"k": k}, 0, ok=False)
                continue
            for m in ms:
                _, hi_m = circle_norm_enclosure(cfg.alpha, m * k, order)
                ratio = upper(_chord(hi_m)) / (m * base)
                report.record({"k": k, "m": str(m)}, ratio, ratio, ok=ratio <= 1)


def _convergent_distance(report, cfg, max_index):
    for n in range(max_index + 1):
        c, nxt = convergent(cfg.alpha, n), convergent(cfg.alpha, n + 1)
        # c_{n+2} and c_{n+3} sit strictly closer to c_n than c_{n+1} does
        _, hi = circle_norm_enclosure(cfg.alpha, c.q, n + 2)
        ratio = hi * nxt.q
        ok = hi <= Fraction(1, nxt.q) and (nxt.q > c.q or n == 0)
        report.record({"n": n, "q": str(c.q)}, hi, ratio, ok=ok)


def check_basic_inequalities(cfg, max_index, K):
    """Chord bounds and |q_nα|_T ≤ 1/q_{n+1}, each as a hard sub-report."""
    params = {"alpha": cfg.alpha.label, "max_index": max_index, "K": K}
    chord = VerificationReport("chord_bounds", "hard", params=params)
    mult = VerificationReport("chord_multiplier", "hard", params=params)
    dist = VerificationReport("convergent_distance", "hard", params=params)
    _chord_bounds(chord, cfg, K)
    _chord_multiplier(mult, cfg, K, max_index)
    _convergent_distance(dist, cfg, max_index)
    group = VerificationReport("basic_inequalities", "group", params=params,
                               sub_reports=[chord, mult, dist])
    bound_n = max(convergent(cfg.alpha, max_index).q, K)
    const = constant_type_bound(cfg.alpha, bound_n, cfg.shadow.order)
    group.details["constant_type_lower"] = float(const)
    group.details["constant_type_range"] = bound_n
    return group.close_group()

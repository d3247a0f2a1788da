"""
╔══════════════════════════════════════════════════════════════╗
║      ROTDIFF — Measured-Constant Checks                      ║
╠══════════════════════════════════════════════════════════════╣
║  decorrelation  C = max |∫φ f_s|·q_s/(Var φ·s^β) and the      ║
║                 bilinear analogue with f_s f_t, t ≥ s        ║
║  growth         minimal b with q_{bn} ≥ q_n^p (exact);       ║
║                 max_{m≤q_n} ‖y_m‖₂/√n;  ε ≤ σ_n ≤ C for ψ*     ║
║  record_growth  ‖y_{r_n}‖₂/‖z_{r_n}‖₂ and ‖z_{r_n}‖₂/√n, z the    ║
║                 running-max record sums                      ║
║  l4_window      ‖f_m + … + f_{m+n}‖₄ / √((n+1) ln(n+m+1))    ║
║                                                              ║
║  The integrals are exact; the constants are reported and     ║
║  judged only for stability (trend_ok, non-explosion rule).   ║
╚══════════════════════════════════════════════════════════════╝
"""

import logging
import math
from fractions import Fraction

import numpy as np

from birkhoff.config import psi_star
from birkhoff.fourier import parseval_lower_bound
from birkhoff.sums import l2_profile
from contfrac.convergents import convergent, convergents
from limits.plans import block_functions, r_sequence, running_max_l2, sigma_of, stage_sums
from stepfun.algebra import multiply, rotate, subtract
from stepfun.function import StepFunction
from stepfun.measures import integrate, interval_integrals, norms, variation
from utils.certified import lower, upper
from utils.errors import UsageError
from verify.report import VerificationReport, trend_ok

log = logging.getLogger("rotdiff.verify")

RANDOM_FAMILY = 16
RANDOM_GRID = 64
RANDOM_MAX_PIECES = 8
# φ with at most this many pieces are integrated piecewise against the block
SMALL_PHI = 16


# ─── Decorrelation ───────────────────────────────────

def random_family(seed, count=RANDOM_FAMILY):
    """Seeded mean-zero step functions with at most 8 pieces on the grid 1/64."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        pieces = int(rng.integers(2, RANDOM_MAX_PIECES + 1))
        ticks = sorted(int(t) for t in rng.choice(RANDOM_GRID, size=pieces, replace=False))
        values = [int(v) for v in rng.integers(-4, 5, size=pieces)]
        f = StepFunction.make(RANDOM_GRID, ticks, values)
        out.append(subtract(f, StepFunction.constant(integrate(f))))
    return out


def phi_family(blocks, seed):
    """[(name, φ)]: ψ*, its rotations by j/8, the blocks, the random family."""
    star = psi_star()
    family = [("psi_star", star)]
    family += [(f"psi_star@{j}/8", rotate(star, Fraction(j, 8))) for j in range(1, 8)]
    family += [(f"f_{s}", f) for s, f in enumerate(blocks, start=1)]
    family += [(f"random_{i}", f) for i, f in enumerate(random_family(seed))]
    return family


def _against(phi, g):
    """∫ φ·g, exactly."""
    if phi.pieces <= SMALL_PHI:
        return sum(v * I for v, I in zip(phi.values, interval_integrals(g, phi)))
    return integrate(multiply(phi, g))


def default_pairs(count):
    return [(s, t) for s in range(1, count + 1) for t in range(s, count + 1)]


def measure_decorrelation(cfg, plan, beta_exp=1, sample_pairs=None, family_seed=0,
                          trend_factor=2):
    """Measured constants of |∫φ f_s| ≤ C·Var(φ)·s^β/q_s and its bilinear form."""
    if beta_exp < 0:
        raise UsageError(f"beta_exp must be >= 0, got {beta_exp}")
    blocks = block_functions(cfg, plan)
    count = len(blocks)
    pairs = sample_pairs if sample_pairs is not None else default_pairs(count)
    if any(not 1 <= s <= t <= count for s, t in pairs):
        raise UsageError(f"sample pairs must satisfy 1 <= s <= t <= {count}")
    params = {"alpha": cfg.alpha.label, "plan": plan.kind, "stages": count,
              "beta_exp": beta_exp, "family_seed": family_seed}
    linear = VerificationReport("decorrelation_linear", "trend", params=params)
    bilinear = VerificationReport("decorrelation_bilinear", "trend", params=params)
    lin_env = [0.0] * count
    bil_env = [0.0] * count

    def scale(s, var):
        return plan.block_lengths[s - 1] / (float(var) * s ** beta_exp)

    family = phi_family(blocks, family_seed)
    products = {(s, t): multiply(blocks[s - 1], blocks[t - 1]) for s, t in pairs}
    for name, phi in family:
        var = variation(phi)
        if not var:
            linear.skip("constant phi")
            continue
        for s in range(1, count + 1):
            value = _against(phi, blocks[s - 1])
            c = abs(float(value)) * scale(s, var)
            lin_env[s - 1] = max(lin_env[s - 1], c)
            linear.record({"phi": name, "s": s}, value, c)
        for (s, t), g in products.items():
            value = _against(phi, g)
            c = abs(float(value)) * scale(s, var)
            bil_env[s - 1] = max(bil_env[s - 1], c)
            bilinear.record({"phi": name, "s": s, "t": t}, value, c)

    linear.details["envelope"] = lin_env
    bilinear.details["envelope"] = bil_env
    linear.passed = all(math.isfinite(c) for c in lin_env) and trend_ok(
        lin_env, trend_factor, decreasing=False)
    bilinear.passed = all(math.isfinite(c) for c in bil_env) and trend_ok(
        bil_env, trend_factor, decreasing=False)
    log.info(f"decorrelation {cfg.alpha.label}: C_lin = {max(lin_env, default=0):.4g}, "
             f"C_bil = {max(bil_env, default=0):.4g}")
    group = VerificationReport("decorrelation", "group", params=params,
                               sub_reports=[linear, bilinear])
    return group.close_group()


# ─── Growth and L² bounds ────────────────────────────

def minimal_power_b(alpha, N, power, max_b):
    """Smallest b ≤ max_b with q_{bn} ≥ q_n^power for every 1 ≤ n ≤ N, else None."""
    qs = [c.q for c in convergents(alpha, max_b * N)]
    for b in range(1, max_b + 1):
        if all(qs[b * n] >= qs[n] ** power for n in range(1, N + 1)):
            return b
    return None


def _power_growth(cfg, N, power, max_b, b):
    params = {"alpha": cfg.alpha.label, "N": N, "p": power}
    report = VerificationReport("power_growth", "hard", params=params)
    found = minimal_power_b(cfg.alpha, N, power, max_b)
    report.details["minimal_b"] = found
    b = b if b is not None else found
    if b is None:
        report.record({"max_b": max_b}, None, ok=False)
        return report
    report.params["b"] = b
    for n in range(1, N + 1):
        qn, qbn = convergent(cfg.alpha, n).q, convergent(cfg.alpha, b * n).q
        ratio = Fraction(qn ** power, qbn)
        report.record({"n": n, "b": b}, str(qbn), ratio, ok=qbn >= qn ** power)
    return report


def _l2_upper(cfg, N, scan_limit, trend_factor):
    params = {"alpha": cfg.alpha.label, "N": N, "scan_limit": scan_limit}
    report = VerificationReport("l2_upper", "trend", params=params)
    stages = [c for c in convergents(cfg.alpha, N)[1:] if c.q <= scan_limit]
    if not stages:
        return report
    profile = l2_profile(cfg, stages[-1].q)
    running, best, consts = 0, 0, []
    for c in stages:
        while running < c.q:
            running += 1
            best = max(best, profile[running])
        const = math.sqrt(best) / math.sqrt(c.index)
        consts.append(const)
        report.record({"n": c.index, "q": str(c.q)}, const)
    report.details["envelope"] = consts
    report.passed = trend_ok(consts, trend_factor, decreasing=False)
    return report


def _l2_lower(cfg, N, max_exact, parseval_K, trend_factor):
    params = {"alpha": cfg.alpha.label, "N": N, "max_exact": max_exact,
              "parseval_K": parseval_K}
    report = VerificationReport("l2_lower", "trend", params=params)
    if not cfg.is_psi_star:
        report.skip("needs psi_star")
        return report
    plan = r_sequence(cfg.alpha, N)
    exact_upto = sum(1 for r in plan.indices if r <= max_exact)
    lows, highs = [], []
    for k, r, y in stage_sums(cfg, plan, exact_upto):
        sigma = sigma_of(norms(y).l2_sq, k)
        lows.append(lower(sigma))
        highs.append(float(upper(sigma)))
        report.record({"n": k, "r": str(r), "method": "exact"}, sigma)
    for k in range(exact_upto + 1, N + 1):
        r = plan.index(k)
        low_sq = parseval_lower_bound(cfg, r, parseval_K)
        sigma = sigma_of(low_sq, k)
        lows.append(lower(sigma))
        report.record({"n": k, "r": str(r), "method": "parseval_lower"}, lower(sigma))
    epsilon = min(lows) if lows else Fraction(0)
    report.details["epsilon"] = float(epsilon)
    report.details["C"] = max(highs) if highs else None
    report.passed = epsilon > 0 and trend_ok(highs, trend_factor, decreasing=False)
    return report


def check_growth(cfg, N, power=2, max_b=16, b=None, scan_limit=20000,
                 max_exact=2_000_000, parseval_K=2000, trend_factor=2):
    """Power growth of q_n (hard), the L² upper envelope and the σ_n floor (measured)."""
    if N < 1:
        raise UsageError(f"check_growth needs N >= 1, got {N}")
    subs = [
        _power_growth(cfg, N, power, max_b, b),
        _l2_upper(cfg, N, scan_limit, trend_factor),
        _l2_lower(cfg, N, max_exact, parseval_K, trend_factor),
    ]
    group = VerificationReport("growth", "group",
                               params={"alpha": cfg.alpha.label, "N": N, "p": power},
                               sub_reports=subs)
    return group.close_group()


# ─── Record sums ─────────────────────────────────────

def check_record_growth(cfg, N, limit=200_000, trend_factor=2):
    """‖y_{r_n}‖₂ against the record sum ‖z_{r_n}‖₂ = max_{m≤r_n} ‖y_m‖₂.

    ‖y_{r_n}‖/‖z_{r_n}‖ must not collapse and ‖z_{r_n}‖/√n must not explode;
    stages with r_n above `limit` are left out.
    """
    if N < 1:
        raise UsageError(f"check_record_growth needs N >= 1, got {N}")
    plan = r_sequence(cfg.alpha, N)
    stages = [(k, r) for k, r in enumerate(plan.indices, start=1) if r <= limit]
    params = {"alpha": cfg.alpha.label, "N": N, "limit": limit}
    ratio = VerificationReport("record_ratio", "trend", params=dict(params))
    envelope = VerificationReport("record_envelope", "trend", params=dict(params))
    for _ in range(len(stages), N):
        ratio.skip(f"r_n above {limit}")
        envelope.skip(f"r_n above {limit}")
    if stages:
        rec = running_max_l2(cfg, stages[-1][1])
        ratios, spreads, sizes = [], [], []
        for k, r in stages:
            y_sq, z_sq = rec.profile[r], rec.l2_sq[r]
            share = math.sqrt(y_sq / z_sq) if z_sq else 1.0
            size = math.sqrt(z_sq / k)
            ratio.record({"n": k, "r": str(r)}, share, ok=y_sq <= z_sq)
            envelope.record({"n": k, "r": str(r), "argmax": rec.argmax[r]}, size)
            ratios.append(share)
            spreads.append(1 / share if share else math.inf)
            sizes.append(size)
        ratio.details["epsilon_over_C"] = min(ratios)
        envelope.details["C"] = max(sizes)
        ratio.passed = ratio.passed and trend_ok(spreads, trend_factor, decreasing=False)
        envelope.passed = trend_ok(sizes, trend_factor, decreasing=False)
    group = VerificationReport("record_growth", "group", params=params,
                               sub_reports=[ratio, envelope])
    return group.close_group()


# ─── L⁴ of block windows ─────────────────────────────

def window_normalizer(m, n):
    return math.sqrt(max(1.0, (n + 1) * math.log(n + m + 1)))


def check_l4(cfg, plan, N, trend_factor=2):
    """‖Σ_{k=m}^{m+n} f_k‖₄ over all windows inside the first N stages."""
    stages = min(N, len(plan))
    params = {"alpha": cfg.alpha.label, "plan": plan.kind, "N": stages}
    report = VerificationReport("l4_window", "trend", params=params)
    prefix = [StepFunction.zero()] + [y for _, _, y in stage_sums(cfg, plan, stages)]
    envelope = []
    for n in range(stages):
        worst = 0.0
        for m in range(1, stages - n + 1):
            window = subtract(prefix[m + n], prefix[m - 1])
            l4_4 = norms(window).l4_4
            const = math.sqrt(math.sqrt(l4_4)) / window_normalizer(m, n)
            worst = max(worst, const)
            report.record({"m": m, "n": n}, l4_4, const)
        envelope.append(worst)
    report.details["envelope"] = envelope
    report.passed = trend_ok(envelope, trend_factor, decreasing=False)
    return report

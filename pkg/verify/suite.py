"""
╔══════════════════════════════════════════╗
║     ROTDIFF — Verification Suite         ║
╚══════════════════════════════════════════╝

Every check is an independent job. Jobs run on a thread pool
and their reports are merged in the fixed CHECKS order, so the
suite report does not depend on scheduling.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor

from contfrac.convergents import convergent
from limits.greedy import greedy_subsequence
from limits.plans import r_sequence
from utils.event_bus import event_bus
from utils.errors import UsageError
from verify.fourier_checks import check_weak_null, cohomology_witness
from verify.inequalities import (
    check_basic_inequalities, check_denjoy_koksma, check_parity_lemma, check_r_sequence_bound,
    check_refined_dk,
)
from verify.measured import check_growth, check_l4, check_record_growth, measure_decorrelation
from verify.report import VerificationReport

log = logging.getLogger("rotdiff.verify")

CHECKS = (
    "parity",
    "r_sequence_bound",
    "basic_inequalities",
    "denjoy_koksma",
    "refined_denjoy_koksma",
    "weak_null",
    "cohomology_witness",
    "growth",
    "record_growth",
    "decorrelation",
    "l4_window",
)

DEFAULTS = {
    "checks": list(CHECKS),
    "max_index": 12,
    "parity_N": 30,
    "r_bound_N": 30,
    "fourier_K": 5,
    "witness_count": 5,
    "trend_factor": 2,
    "growth": {"N": 6, "power": 2, "max_b": 16, "b": None, "scan_limit": 20000,
               "max_exact": 2_000_000, "parseval_K": 2000},
    "record_growth": {"N": 6, "limit": 200_000},
    "plan": {"kind": "r_sequence", "N": 5, "J": 5},
    "decorrelation": {"beta_exp": 1, "family_seed": 7},
}


def suite_params(overrides=None):
    """DEFAULTS with `overrides` merged one level deep."""
    out = {k: (dict(v) if isinstance(v, dict) else v) for k, v in DEFAULTS.items()}
    for key, value in (overrides or {}).items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key].update(value)
        else:
            out[key] = value
    unknown = set(out["checks"]) - set(CHECKS)
    if unknown:
        raise UsageError(f"unknown checks: {sorted(unknown)}", known=list(CHECKS))
    return out


def suite_horizon(alpha, params):
    """Largest iterate count any selected check asks of the shadow rational."""
    p = suite_params(params)
    needs = [convergent(alpha, p["max_index"]).q]
    if "cohomology_witness" in p["checks"]:
        # every four consecutive convergents hold an odd good one
        needs.append(convergent(alpha, 4 * p["witness_count"] + 1).q)
    if "growth" in p["checks"]:
        g = p["growth"]
        needs.append(r_sequence(alpha, g["N"]).indices[-1])
        needs.append(min(convergent(alpha, g["N"]).q, g["scan_limit"]))
    if "record_growth" in p["checks"]:
        rg = p["record_growth"]
        within = [r for r in r_sequence(alpha, rg["N"]).indices if r <= rg["limit"]]
        needs.extend(within[-1:])
    if {"decorrelation", "l4_window"} & set(p["checks"]) and p["plan"]["kind"] == "r_sequence":
        needs.append(r_sequence(alpha, p["plan"]["N"]).indices[-1])
    return max(needs)


def build_plan(cfg, plan_params):
    if plan_params["kind"] == "r_sequence":
        return r_sequence(cfg.alpha, plan_params["N"])
    if plan_params["kind"] == "greedy":
        return greedy_subsequence(cfg, plan_params["J"], plan_params.get("deltas"))
    raise UsageError(f"unknown plan kind {plan_params['kind']!r}")


def _jobs(cfg, p, plan):
    tf = p["trend_factor"]
    g = p["growth"]

    def refined():
        if not cfg.is_psi_star:
            report = VerificationReport("refined_denjoy_koksma", "hard")
            report.skip("needs psi_star")
            return report
        return check_refined_dk(cfg, p["max_index"])

    return {
        "parity": lambda: check_parity_lemma(cfg.alpha, p["parity_N"]),
        "r_sequence_bound": lambda: check_r_sequence_bound(cfg.alpha, p["r_bound_N"]),
        "basic_inequalities": lambda: check_basic_inequalities(cfg, p["max_index"], p["fourier_K"]),
        "denjoy_koksma": lambda: check_denjoy_koksma(cfg, p["max_index"]),
        "refined_denjoy_koksma": refined,
        "weak_null": lambda: check_weak_null(cfg, p["fourier_K"], p["max_index"], tf),
        "cohomology_witness": lambda: cohomology_witness(cfg, p["witness_count"]),
        "growth": lambda: check_growth(
            cfg, g["N"], power=g["power"], max_b=g["max_b"], b=g["b"],
            scan_limit=g["scan_limit"], max_exact=g["max_exact"],
            parseval_K=g["parseval_K"], trend_factor=tf),
        "record_growth": lambda: check_record_growth(
            cfg, p["record_growth"]["N"], p["record_growth"]["limit"], tf),
        "decorrelation": lambda: measure_decorrelation(
            cfg, plan, p["decorrelation"]["beta_exp"],
            family_seed=p["decorrelation"]["family_seed"], trend_factor=tf),
        "l4_window": lambda: check_l4(cfg, plan, len(plan), tf),
    }


def _timed(name, job):
    event_bus.emit("check_started", {"check_id": name})
    t0 = time.perf_counter()
    report = job()
    log.info(f"check {name}: {'pass' if report.passed else 'FAIL'} "
             f"({report.instances_checked} instances, {time.perf_counter() - t0:.1f}s)")
    return report


def run_suite(cfg, params=None, workers=1):
    """Run the selected checks; returns the aggregate report (kind "group")."""
    p = suite_params(params)
    names = [name for name in CHECKS if name in p["checks"]]
    # one plan shared by the decorrelation and L⁴ jobs
    plan = build_plan(cfg, p["plan"]) if {"decorrelation", "l4_window"} & set(names) else None
    jobs = _jobs(cfg, p, plan)

    log.info(f"verify {cfg.alpha.label}: {len(names)} checks on {workers} worker(s)")
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        futures = [(name, pool.submit(_timed, name, jobs[name])) for name in names]
        reports = [future.result() for _, future in futures]

    for report in reports:
        for leaf in report.leaves():
            event_bus.emit("check_result", {
                "check_id": leaf.lemma_id,
                "hard": leaf.kind == "hard",
                "passed": leaf.passed,
            })
    suite = VerificationReport("suite", "group",
                               params={"alpha": cfg.alpha.label, "checks": names},
                               sub_reports=reports)
    return suite.close_group()

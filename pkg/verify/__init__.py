"""
╔══════════════════════════════════════════╗
║     ROTDIFF — Verification               ║
╚══════════════════════════════════════════╝

One checker per proven inequality; each returns a
VerificationReport. run_suite runs a selection of them.
"""

from verify.fourier_checks import check_weak_null, cohomology_witness
from verify.inequalities import (
    check_basic_inequalities,
    check_denjoy_koksma,
    check_parity_lemma,
    check_r_sequence_bound,
    check_refined_dk,
)
from verify.measured import check_growth, check_l4, check_record_growth, measure_decorrelation
from verify.report import VerificationReport, trend_ok
from verify.suite import CHECKS, run_suite, suite_horizon, suite_params

__all__ = [
    "check_weak_null",
    "cohomology_witness",
    "check_basic_inequalities",
    "check_denjoy_koksma",
    "check_parity_lemma",
    "check_r_sequence_bound",
    "check_refined_dk",
    "check_growth",
    "check_l4",
    "check_record_growth",
    "measure_decorrelation",
    "VerificationReport",
    "trend_ok",
    "CHECKS",
    "run_suite",
    "suite_horizon",
    "suite_params",
]

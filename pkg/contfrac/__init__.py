"""
╔══════════════════════════════════════════╗
║     ROTDIFF — Continued Fractions        ║
╚══════════════════════════════════════════╝

Exact continued-fraction engine for α ∈ (0,1):

  - PartialQuotients   explicit / periodic / seeded E(A,d)
  - convergents        p_n/q_n with arbitrary-precision integers
  - approx_quality     β = q_n²|α − p_n/q_n| certified against 1/2
  - ShadowRational     certified stand-in P/Q for a horizon of iterates
"""

from contfrac.quotients import PartialQuotients, spawn_ead
from contfrac.convergents import (
    ApproxQuality,
    Convergent,
    alpha_enclosure,
    approx_quality,
    certified_quality,
    circle_norm,
    circle_norm_bounds,
    circle_norm_enclosure,
    constant_type_bound,
    convergent,
    convergents,
    index_below,
    odd_good_convergents,
)
from contfrac.shadow import ShadowRational, shadow_for

__all__ = [
    "PartialQuotients",
    "spawn_ead",
    "ApproxQuality",
    "Convergent",
    "alpha_enclosure",
    "approx_quality",
    "certified_quality",
    "circle_norm",
    "circle_norm_bounds",
    "circle_norm_enclosure",
    "constant_type_bound",
    "convergent",
    "convergents",
    "index_below",
    "odd_good_convergents",
    "ShadowRational",
    "shadow_for",
]

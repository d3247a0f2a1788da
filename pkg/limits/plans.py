"""
╔══════════════════════════════════════════════════════════════╗
║      ROTDIFF — Subsequence Plans                             ║
╠══════════════════════════════════════════════════════════════╣
║  A plan is a sequence of Birkhoff-sum lengths n_1 < n_2 < …  ║
║  built from consecutive blocks:                              ║
║                                                              ║
║     y_{n_k} = f_1 + … + f_k,   f_k = R_{n_{k−1}α} y_{ℓ_k}      ║
║                                                              ║
║  r_sequence:  ℓ_k = q_k, so n_k = r_k = q_1 + … + q_k         ║
║  greedy:      ℓ_k = q̃_k, odd good denominators picked so      ║
║               each new block decorrelates from the history   ║
║               (limits/greedy.py)                             ║
║                                                              ║
║  Stage k is 1-based: n_k = indices[k−1].                     ║
╚══════════════════════════════════════════════════════════════╝
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import iv

from birkhoff.sums import birkhoff_block, birkhoff_sum, l2_profile
from contfrac.convergents import convergents
from stepfun.algebra import add
from stepfun.function import StepFunction
from stepfun.measures import distribution, norms
from utils.certified import precision, to_iv
from utils.errors import UsageError

log = logging.getLogger("rotdiff.limits")

SIGMA_BITS = 128


@dataclass
class SubsequencePlan:
    kind: str                                       # "r_sequence" | "greedy"
    indices: list                                   # n_1 < n_2 < …
    block_lengths: list                             # ℓ_1, ℓ_2, …
    deltas: list = field(default_factory=list)      # greedy: measured δ_k, k = 1..len−1
    sigma: list = field(default_factory=list)       # certified σ_k once computed
    status: str = "complete"
    convergent_indices: list = field(default_factory=list)

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError("plan indices must be strictly increasing")

    def __len__(self):
        return len(self.indices)

    def index(self, k):
        """n_k for the 1-based stage k."""
        if not 1 <= k <= len(self.indices):
            raise UsageError(f"stage {k} outside plan of {len(self.indices)} stages")
        return self.indices[k - 1]

    def start(self, k):
        """First iterate of block k."""
        return 0 if k == 1 else self.indices[k - 2]

    def to_dict(self):
        return {
            "kind": self.kind,
            "status": self.status,
            "indices": [str(n) for n in self.indices],
            "block_lengths": [str(q) for q in self.block_lengths],
            "convergent_indices": list(self.convergent_indices),
            "deltas": [{"num": str(d.numerator), "den": str(d.denominator)}
                       for d in (Fraction(x) for x in self.deltas)],
            "sigma": [{"lo": float(s.a), "hi": float(s.b)} for s in self.sigma],
        }


def r_sequence(alpha, N):
    """r_n = q_1 + … + q_n for n = 1..N."""
    if N < 1:
        raise UsageError(f"r_sequence needs N >= 1, got {N}")
    qs = [c.q for c in convergents(alpha, N)[1:]]
    indices, total = [], 0
    for q in qs:
        total += q
        indices.append(total)
    return SubsequencePlan("r_sequence", indices, qs, convergent_indices=list(range(1, N + 1)))


def stage_sums(cfg, plan, upto=None):
    """Yield (k, n_k, y_{n_k}) for k = 1.., adding one block at a time."""
    upto = len(plan) if upto is None else upto
    cfg.shadow.require(plan.index(upto) if upto else 0)
    y = StepFunction.zero()
    for k in range(1, upto + 1):
        y = add(y, birkhoff_block(cfg, plan.start(k), plan.block_lengths[k - 1]))
        yield k, plan.index(k), y


def sigma_of(l2_sq, k):
    """σ = ‖y‖₂/√k from the exact ‖y‖₂², certified."""
    with precision(SIGMA_BITS):
        return iv.sqrt(to_iv(Fraction(l2_sq) / k))


def sigma_sequence(cfg, plan):
    """σ_k = ‖y_{n_k}/√k‖₂ for every stage, certified; also stored on the plan."""
    out = [sigma_of(norms(y).l2_sq, k) for k, _, y in stage_sums(cfg, plan)]
    plan.sigma = out
    return out


def rescaled_law(cfg, plan, k):
    """Law of y_{n_k}/√k, exact atoms with root_scale k."""
    return distribution(birkhoff_sum(cfg, plan.index(k)), root_scale=k)


def block_functions(cfg, plan):
    """[f_1, …, f_len]"""
    cfg.shadow.require(plan.indices[-1] if plan.indices else 0)
    return [birkhoff_block(cfg, plan.start(k), plan.block_lengths[k - 1])
            for k in range(1, len(plan) + 1)]


def delta_budget(plan):
    """[(Σ_{j≤k} δ_j, Σ_{j≤k} δ_j/√k)] for k = 1..len(deltas)."""
    out, acc = [], Fraction(0)
    with precision(SIGMA_BITS):
        for k, d in enumerate(plan.deltas, start=1):
            acc += Fraction(d)
            out.append((acc, to_iv(acc) / iv.sqrt(iv.mpf(k))))
    return out


@dataclass(frozen=True)
class RecordSequence:
    argmax: list        # m_j for j = 0..m_max
    l2_sq: list         # ‖y_{m_j}‖₂²
    profile: list       # ‖y_j‖₂²


def running_max_l2(cfg, m_max):
    """Record sums z_j = y_{m_j}, ‖y_{m_j}‖₂ = max_{m≤j} ‖y_m‖₂ (smallest m on ties)."""
    profile = l2_profile(cfg, m_max)
    argmax, values = [], []
    best_m, best = 0, profile[0]
    for m, v in enumerate(profile):
        if v > best:
            best_m, best = m, v
        argmax.append(best_m)
        values.append(best)
    return RecordSequence(argmax, values, profile)

"""
╔══════════════════════════════════════════════════════════════╗
║      ROTDIFF — Greedy Decorrelated Subsequence               ║
╠══════════════════════════════════════════════════════════════╣
║  Picks block lengths q̃_1 < q̃_2 < … among convergent           ║
║  denominators, each odd with β < 1/2, so that each new block ║
║  f_{k+1} = R_{n_kα} y_{q̃_{k+1}} is nearly orthogonal to       ║
║  every bounded function of the history S_k = f_1 + … + f_k:   ║
║                                                              ║
║     max_j |∫_{I_j} f_{k+1}| ≤ δ_k / m(k)                      ║
║                                                              ║
║  with I_1 … I_{m(k)} the constancy intervals of S_k. This     ║
║  bounds |∫ f_{k+1} e^{iβS_k}| ≤ δ_k for every β at once.       ║
╚══════════════════════════════════════════════════════════════╝
"""

import logging
import time
from fractions import Fraction

from birkhoff.sums import birkhoff_block
from contfrac.convergents import certified_quality, convergent
from limits.plans import SubsequencePlan
from stepfun.algebra import add
from stepfun.function import StepFunction
from stepfun.measures import interval_integrals
from utils.errors import UsageError
from utils.event_bus import event_bus

log = logging.getLogger("rotdiff.limits")


def default_schedule(J):
    """δ_k = 2^{−k}, k = 1..J−1."""
    return [Fraction(1, 2 ** k) for k in range(1, max(J, 1))]


def greedy_subsequence(cfg, J, delta_schedule=None):
    """Greedy plan of J blocks, or a partial plan with status "exhausted"."""
    if J < 1:
        raise UsageError(f"greedy_subsequence needs J >= 1, got {J}")
    schedule = [Fraction(d) for d in (delta_schedule or default_schedule(J))]
    if len(schedule) < J - 1:
        raise UsageError(f"δ schedule has {len(schedule)} entries, {J - 1} needed")
    if any(d <= 0 for d in schedule):
        raise UsageError("δ schedule must be positive")

    horizon = cfg.shadow.horizon
    history = StepFunction.zero()
    n = 0
    indices, lengths, conv_idx, deltas = [], [], [], []
    idx = 0
    status = "complete"
    t0 = time.perf_counter()

    while len(indices) < J:
        c = convergent(cfg.alpha, idx)
        if n + c.q > horizon:
            status = "exhausted"
            log.warning(f"greedy: horizon {horizon} exhausted after {len(indices)} blocks "
                        f"(next candidate q={c.q})")
            break
        if c.q % 2 == 1 and certified_quality(cfg.alpha, idx).good:
            block = birkhoff_block(cfg, n, c.q)
            k = len(indices)
            if k == 0:
                accepted = True
            else:
                pieces = interval_integrals(block, history)
                measured = len(pieces) * max(abs(v) for v in pieces)
                accepted = measured <= schedule[k - 1]
                log.debug(f"greedy: q={c.q} gives m·max|∫| = {float(measured):.3g} "
                          f"(δ_{k} = {schedule[k - 1]})")
            if accepted:
                if k:
                    deltas.append(measured)
                history = add(history, block)
                n += c.q
                indices.append(n)
                lengths.append(c.q)
                conv_idx.append(idx)
                log.info(f"greedy block {k + 1}: q̃ = {c.q} (convergent {idx}), n = {n}")
                event_bus.emit("block_selected", {"block": k + 1, "q": str(c.q), "n": str(n)})
        idx += 1

    log.info(f"greedy: {len(indices)} blocks in {time.perf_counter() - t0:.1f}s, status {status}")
    return SubsequencePlan("greedy", indices, lengths, deltas, status=status,
                           convergent_indices=conv_idx)

"""
╔══════════════════════════════════════════╗
║     ROTDIFF — Birkhoff Configuration     ║
╚══════════════════════════════════════════╝

The cocycle y_n(x) = Σ_{k<n} ψ(x + kα) over the rotation by α
is fixed by three things: the observable ψ, the partial quotients
of α, and the shadow rational P/Q certified for the largest n used.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from contfrac.shadow import shadow_for
from stepfun.function import StepFunction
from stepfun.measures import integrate
from utils.certified import DEFAULT_BITS, MAX_BITS
from utils.errors import ConfigError

log = logging.getLogger("rotdiff.birkhoff")


def psi_star():
    """+1 on [0, 1/2), −1 on [1/2, 1)."""
    return StepFunction.from_breakpoints([0, Fraction(1, 2)], [1, -1])


@dataclass(frozen=True)
class BirkhoffConfig:
    psi: StepFunction
    alpha: object                 # contfrac.PartialQuotients
    shadow: object                # contfrac.ShadowRational
    bits: int = DEFAULT_BITS
    max_bits: int = MAX_BITS

    def __post_init__(self):
        mean = integrate(self.psi)
        if mean != 0:
            raise ConfigError(f"observable must have zero mean, got {mean}", mean=str(mean))
        if not self.shadow.covers(self.psi.breakpoints):
            raise ConfigError("shadow rational was not certified for this observable's breakpoints")

    @classmethod
    def build(cls, alpha, horizon, psi=None, bits=DEFAULT_BITS, max_bits=MAX_BITS):
        psi = psi if psi is not None else psi_star()
        mean = integrate(psi)
        if mean != 0:
            raise ConfigError(f"observable must have zero mean, got {mean}", mean=str(mean))
        shadow = shadow_for(alpha, horizon, psi.breakpoints)
        log.info(f"α = {alpha.label}: shadow order {shadow.order}, horizon {horizon}")
        return cls(psi, alpha, shadow, bits, max_bits)

    @property
    def horizon(self):
        return self.shadow.horizon

    @property
    def is_psi_star(self):
        return self.psi == psi_star()

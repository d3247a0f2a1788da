"""
Exact functionals of step functions under Lebesgue measure on T.

All sums are accumulated on the integer grid (value × length in units of
1/den) and divided once at the end.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from stepfun.algebra import multiply, rotate
from stepfun.distribution import ValueDistribution
from stepfun.function import exact


@dataclass(frozen=True)
class Norms:
    mean: object
    l2_sq: object
    l4_4: object
    sup: object

    @property
    def l2(self):
        return math.sqrt(self.l2_sq)

    @property
    def l4(self):
        return math.sqrt(math.sqrt(self.l4_4))

    def to_dict(self):
        return {
            "mean": str(self.mean), "l2_sq": str(self.l2_sq),
            "l4_4": str(self.l4_4), "sup": str(self.sup),
            "l2": self.l2, "l4": self.l4,
        }


def _weighted(f, power):
    total = sum(v ** power * w for v, w in zip(f.values, f.lengths()))
    return exact(Fraction(total, f.den))


def integrate(f):
    """∫₀¹ f dx"""
    return _weighted(f, 1)


def variation(f):
    """Total variation: Σ |jumps|, wrap-around jump included."""
    if f.is_constant:
        return 0
    vals = f.values
    return exact(sum(abs(v - vals[i - 1]) for i, v in enumerate(vals)))


def norms(f):
    return Norms(
        mean=_weighted(f, 1),
        l2_sq=_weighted(f, 2),
        l4_4=_weighted(f, 4),
        sup=max(abs(v) for v in f.values),
    )


def distribution(f, root_scale=1):
    """Law of f under Lebesgue measure: (value, mass) atoms."""
    mass = {}
    for v, w in zip(f.values, f.lengths()):
        mass[v] = mass.get(v, 0) + w
    atoms = tuple((v, Fraction(w, f.den)) for v, w in sorted(mass.items()))
    return ValueDistribution(atoms, root_scale)


def integrate_product(f, g):
    """∫ f·g dx"""
    return integrate(multiply(f, g))


def autocorrelation(f, t):
    """∫ f(x) f(x+t) dx"""
    return integrate_product(f, rotate(f, t))


def _primitive_at(f, L, points):
    """F(p/L) = ∫₀^{p/L} f for sorted grid points p in [0, L], as numerators over L."""
    scale = L // f.den
    ticks = [t * scale for t in f.ticks]
    vals = f.values
    out = []
    acc = 0
    pos = 0                     # grid position acc refers to
    i = 0                       # next tick of f not yet passed
    cur = vals[-1]              # value on [0, first tick)
    for p in points:
        while i < len(ticks) and ticks[i] <= p:
            acc += cur * (ticks[i] - pos)
            pos = ticks[i]
            cur = vals[i]
            i += 1
        out.append(acc + cur * (p - pos))
    return out


def interval_integrals(f, partition):
    """∫ f over each constancy piece of `partition`, in partition piece order.

    Piece i is [ticks[i], ticks[i+1]) of the partition; the last one wraps
    through 0. A constant partition has the single piece T.
    """
    if partition.is_constant:
        return [integrate(f)]
    L = math.lcm(f.den, partition.den)
    s = L // partition.den
    pts = [t * s for t in partition.ticks]
    prim = _primitive_at(f, L, pts + [L])
    total = prim[-1]
    prim = prim[:-1]
    out = [exact(Fraction(b - a, L)) for a, b in zip(prim, prim[1:])]
    out.append(exact(Fraction(total - prim[-1] + prim[0], L)))
    return out

"""
Step-function algebra: rotation, pointwise sums and products.

Binary operations bring both operands onto the common grid lcm(den_f, den_g)
and walk the two tick lists in one linear merge, so add/multiply of an m-piece
and an n-piece function cost O(m + n).
"""

import math
import operator
from fractions import Fraction

from stepfun.function import StepFunction, exact


def rotate(f, gamma):
    """x ↦ f(x + γ mod 1)."""
    gamma = Fraction(gamma) % 1
    if f.is_constant or gamma == 0:
        return f
    L = math.lcm(f.den, gamma.denominator)
    scale = L // f.den
    shift = gamma.numerator * (L // gamma.denominator)
    ticks = [(t * scale - shift) % L for t in f.ticks]
    # ticks are increasing except for one wrap; start the cycle at the smallest
    k = min(range(len(ticks)), key=ticks.__getitem__)
    ticks = ticks[k:] + ticks[:k]
    values = f.values[k:] + f.values[:k]
    return StepFunction.make(L, ticks, values)


def combine(f, g, op):
    """Pointwise op(f, g) in one merge pass."""
    if f.is_constant and g.is_constant:
        return StepFunction.constant(op(f.values[0], g.values[0]))
    L = math.lcm(f.den, g.den)
    sf, sg = L // f.den, L // g.den
    ft = [t * sf for t in f.ticks]
    gt = [t * sg for t in g.ticks]
    nf, ng = len(ft), len(gt)
    fv, gv = f.values[-1], g.values[-1]
    i = j = 0
    ticks, values = [], []
    while i < nf or j < ng:
        a = ft[i] if i < nf else L
        b = gt[j] if j < ng else L
        t = a if a < b else b
        if a == t:
            fv = f.values[i]
            i += 1
        if b == t:
            gv = g.values[j]
            j += 1
        ticks.append(t)
        values.append(op(fv, gv))
    return StepFunction.make(L, ticks, values)


def add(f, g):
    return combine(f, g, operator.add)


def subtract(f, g):
    return combine(f, g, operator.sub)


def multiply(f, g):
    return combine(f, g, operator.mul)


def add_many(fs):
    """Σ fs by balanced pairwise merging."""
    layer = list(fs)
    if not layer:
        return StepFunction.zero()
    while len(layer) > 1:
        nxt = [add(layer[k], layer[k + 1]) for k in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def scale(f, c):
    c = exact(c)
    if c == 0:
        return StepFunction.zero()
    return StepFunction(f.den, f.ticks, tuple(exact(v * c) for v in f.values))


def negate(f):
    return StepFunction(f.den, f.ticks, tuple(-v for v in f.values))

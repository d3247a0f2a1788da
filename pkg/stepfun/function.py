"""
╔══════════════════════════════════════════════════════════════╗
║      ROTDIFF — Step Functions on the Circle                  ║
╠══════════════════════════════════════════════════════════════╣
║  A StepFunction is stored on an integer grid:                ║
║                                                              ║
║      breakpoint i  =  ticks[i] / den                         ║
║      value on [ticks[i]/den, ticks[i+1]/den)  =  values[i]   ║
║                                                              ║
║  cyclically, so the last value also covers [0, ticks[0]).    ║
║  Canonical form: no two cyclically adjacent values equal,    ║
║  and den is as small as the ticks allow. A constant c is     ║
║  ticks=(), values=(c,).                                      ║
║                                                              ║
║  Values are ints or Fractions; nothing here ever rounds.     ║
╚══════════════════════════════════════════════════════════════╝
"""

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction


def exact(v):
    """Normalize a value to int when integral, Fraction otherwise."""
    if isinstance(v, int):
        return v
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


@dataclass(frozen=True)
class StepFunction:
    den: int
    ticks: tuple
    values: tuple

    def __post_init__(self):
        if self.den < 1:
            raise ValueError(f"den must be positive, got {self.den}")
        if not self.ticks:
            if len(self.values) != 1:
                raise ValueError("a constant step function carries exactly one value")
            return
        if len(self.ticks) != len(self.values):
            raise ValueError("ticks and values must have the same length")
        if self.ticks[0] < 0 or self.ticks[-1] >= self.den:
            raise ValueError("breakpoints must lie in [0, 1)")
        if any(a >= b for a, b in zip(self.ticks, self.ticks[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    # ─── Construction ────────────────────────────────

    @classmethod
    def make(cls, den, ticks, values):
        """Canonical StepFunction from possibly redundant grid data."""
        ticks = list(ticks)
        values = [exact(v) for v in values]
        if not ticks:
            return cls(1, (), (values[0] if values else 0,))
        keep_t, keep_v = [], []
        prev = values[-1]
        for t, v in zip(ticks, values):
            if v != prev:
                keep_t.append(t)
                keep_v.append(v)
            prev = v
        if not keep_t:
            return cls(1, (), (values[0],))
        g = math.gcd(den, *keep_t)
        if g > 1:
            den //= g
            keep_t = [t // g for t in keep_t]
        return cls(den, tuple(keep_t), tuple(keep_v))

    @classmethod
    def constant(cls, c=0):
        return cls(1, (), (exact(c),))

    @classmethod
    def zero(cls):
        return cls.constant(0)

    @classmethod
    def from_breakpoints(cls, breakpoints, values):
        """From exact rational breakpoints in [0,1) (sorted) and their values."""
        bps = [Fraction(b) for b in breakpoints]
        if not bps:
            return cls.make(1, (), values)
        if any(not 0 <= b < 1 for b in bps):
            raise ValueError("breakpoints must lie in [0, 1)")
        den = math.lcm(*(b.denominator for b in bps))
        ticks = [b.numerator * (den // b.denominator) for b in bps]
        if any(a >= b for a, b in zip(ticks, ticks[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        return cls.make(den, ticks, values)

    @classmethod
    def indicator(cls, start, end, height=1):
        """height on [start, end) (cyclic when end < start), 0 elsewhere."""
        start, end = Fraction(start) % 1, Fraction(end) % 1
        if start == end:
            return cls.constant(0)
        if start < end:
            pts = [(start, height), (end, 0)]
        else:
            pts = [(end, 0), (start, height)]
        return cls.from_breakpoints([p for p, _ in pts], [v for _, v in pts])

    # ─── Views ───────────────────────────────────────

    @property
    def is_constant(self):
        return not self.ticks

    @property
    def pieces(self):
        return max(len(self.ticks), 1)

    @property
    def breakpoints(self):
        return tuple(Fraction(t, self.den) for t in self.ticks)

    def lengths(self):
        """Integer lengths (in units of 1/den) of the pieces, aligned with values."""
        if not self.ticks:
            return (self.den,)
        t = self.ticks
        out = [b - a for a, b in zip(t, t[1:])]
        out.append(self.den - t[-1] + t[0])
        return tuple(out)

    def pieces_iter(self):
        """(start, end, value) per piece, exact; the last piece may wrap past 1."""
        if not self.ticks:
            yield Fraction(0), Fraction(1), self.values[0]
            return
        for i, (t, length) in enumerate(zip(self.ticks, self.lengths())):
            yield Fraction(t, self.den), Fraction(t + length, self.den), self.values[i]

    def at_grid(self, x_num, x_den):
        """Value at x = x_num/x_den, x taken mod 1."""
        if not self.ticks:
            return self.values[0]
        pos = ((x_num % x_den) * self.den) // x_den
        i = bisect_right(self.ticks, pos) - 1
        return self.values[i]        # i = -1 wraps onto the last piece

    def __call__(self, x):
        x = Fraction(x)
        return self.at_grid(x.numerator, x.denominator)

    def __repr__(self):
        if not self.ticks:
            return f"StepFunction(constant={self.values[0]})"
        if len(self.ticks) <= 6:
            body = ", ".join(f"{b}:{v}" for b, v in zip(self.breakpoints, self.values))
            return f"StepFunction({body})"
        return f"StepFunction(pieces={len(self.ticks)}, den={self.den})"

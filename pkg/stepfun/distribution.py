"""
╔══════════════════════════════════════════╗
║     ROTDIFF — Value Distributions        ║
╚══════════════════════════════════════════╝

Exact law of a step function: finitely many (value, mass) atoms.
A law rescaled by 1/√n keeps its atoms exact and records n as
`root_scale`; the real atom is value / √root_scale.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

from utils.certified import to_iv


@dataclass(frozen=True)
class ValueDistribution:
    atoms: tuple                 # ((value, mass), …) sorted by value
    root_scale: int = 1

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("a distribution needs at least one atom")
        if self.root_scale < 1:
            raise ValueError(f"root_scale must be >= 1, got {self.root_scale}")
        values = [v for v, _ in self.atoms]
        if any(a >= b for a, b in zip(values, values[1:])):
            raise ValueError("atom values must be strictly increasing")
        if any(m <= 0 for _, m in self.atoms):
            raise ValueError("atom masses must be positive")
        if sum(m for _, m in self.atoms) != 1:
            raise ValueError("atom masses must sum to 1")

    @classmethod
    def point_mass(cls, c=0):
        return cls(((c, Fraction(1)),))

    @property
    def values(self):
        return [v for v, _ in self.atoms]

    @property
    def masses(self):
        return [m for _, m in self.atoms]

    def rescaled(self, n):
        """Same atoms, divided by a further √n."""
        return ValueDistribution(self.atoms, self.root_scale * n)

    @property
    def is_exact(self):
        """True when every real atom is rational (root_scale a perfect square)."""
        return math.isqrt(self.root_scale) ** 2 == self.root_scale

    def real_value(self, v):
        """Enclosure of v / √root_scale."""
        if self.root_scale == 1:
            return to_iv(v)
        return to_iv(v) / iv.sqrt(iv.mpf(self.root_scale))

    def exact_value(self, v):
        """v / √root_scale as a Fraction; only for perfect-square scales."""
        r = math.isqrt(self.root_scale)
        if r * r != self.root_scale:
            raise ValueError("atom is irrational at this root_scale")
        return Fraction(v) / r

    def support_radius(self):
        """max |atom| as a float (rendering only)."""
        return max(abs(float(v)) for v in self.values) / math.sqrt(self.root_scale)

    def symmetry_defect(self):
        """Σ |mass(v) − mass(−v)| / 2: zero iff the law is symmetric."""
        table = dict(self.atoms)
        keys = set(table) | {-v for v in table}
        return sum(abs(table.get(v, 0) - table.get(-v, 0)) for v in keys) / 2

    def to_dict(self):
        return {
            "root_scale": self.root_scale,
            "atoms": [
                {"value": {"num": str(Fraction(v).numerator), "den": str(Fraction(v).denominator)},
                 "mass": {"num": str(m.numerator), "den": str(m.denominator)}}
                for v, m in self.atoms
            ],
        }

    def rows(self):
        """CSV rows (value_num, value_den, sqrt_n, mass_num, mass_den, value, mass)."""
        out = []
        for v, m in self.atoms:
            v = Fraction(v)
            out.append([
                v.numerator, v.denominator, self.root_scale, m.numerator, m.denominator,
                repr(float(v) / math.sqrt(self.root_scale)), repr(float(m)),
            ])
        return out

    ROW_HEADERS = ["value_num", "value_den", "sqrt_n", "mass_num", "mass_den", "value", "mass"]

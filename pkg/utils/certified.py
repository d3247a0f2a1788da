"""
╔══════════════════════════════════════════════════════════════╗
║      ROTDIFF — Certified Arithmetic                          ║
╠══════════════════════════════════════════════════════════════╣
║  Thin layer over mpmath's interval context (mpmath.iv):      ║
║    - exact Fraction → outward-rounded interval conversion     ║
║    - complex enclosures as (re, im) interval pairs           ║
║    - e^{2iπ·phase} for exact rational phases                  ║
║    - certified Gaussian CDF (interval erf series + Mills      ║
║      ratio tails)                                            ║
║                                                              ║
║  iv.prec is process-global; every change goes through        ║
║  precision(), which holds a re-entrant lock.                 ║
╚══════════════════════════════════════════════════════════════╝
"""

import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

DEFAULT_BITS = 128
MAX_BITS = 2048

_PREC_LOCK = threading.RLock()


@contextmanager
def precision(bits):
    """Run a block at `bits` of interval precision (never lowers an outer setting)."""
    with _PREC_LOCK:
        old = iv.prec
        iv.prec = max(int(bits), old)
        try:
            yield
        finally:
            iv.prec = old


def to_iv(x):
    """Exact rational (or int, or interval) → enclosing interval."""
    if isinstance(x, iv.mpf):
        return x
    if isinstance(x, int):
        return iv.mpf(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return iv.mpf(x.numerator)
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)
    return iv.mpf(x)


def _raw_to_fraction(raw):
    sign, man, exp, _ = raw
    value = Fraction(man) * (Fraction(2) ** exp)
    return -value if sign else value


def lower(x):
    """Exact lower endpoint of an interval, as a Fraction."""
    return _raw_to_fraction(to_iv(x)._mpi_[0])


def upper(x):
    """Exact upper endpoint of an interval, as a Fraction."""
    return _raw_to_fraction(to_iv(x)._mpi_[1])


def midpoint(x):
    return float(to_iv(x).mid)


def width(x):
    return float(to_iv(x).delta)


def hull(a, b):
    """Smallest interval containing both."""
    a, b = to_iv(a), to_iv(b)
    lo = a.a if lower(a) <= lower(b) else b.a
    hi = a.b if upper(a) >= upper(b) else b.b
    return iv.mpf((lo, hi))


def render(x, digits=10):
    """Midpoint of an interval to `digits` significant digits."""
    return f"{midpoint(x):.{digits}g}"


# ─── Complex enclosures ──────────────────────────────

@dataclass(frozen=True)
class CInterval:
    """Rectangular enclosure re + i·im of a complex number."""
    re: object
    im: object

    @classmethod
    def exact(cls, re, im=0):
        return cls(to_iv(re), to_iv(im))

    def __add__(self, other):
        return CInterval(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return CInterval(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if isinstance(other, CInterval):
            return CInterval(self.re * other.re - self.im * other.im,
                             self.re * other.im + self.im * other.re)
        c = to_iv(other)
        return CInterval(self.re * c, self.im * c)

    __rmul__ = __mul__

    def conjugate(self):
        return CInterval(self.re, -self.im)

    def modulus_sq(self):
        ar, ai = abs(self.re), abs(self.im)
        return ar * ar + ai * ai

    def modulus(self):
        return iv.sqrt(self.modulus_sq())

    def contains(self, re, im=0):
        return (lower(self.re) <= Fraction(re) <= upper(self.re)
                and lower(self.im) <= Fraction(im) <= upper(self.im))

    def width(self):
        return max(width(self.re), width(self.im))

    def to_dict(self, k=None):
        out = {
            "re_lo": float(self.re.a), "re_hi": float(self.re.b),
            "im_lo": float(self.im.a), "im_hi": float(self.im.b),
        }
        if k is not None:
            out = {"k": k, **out}
        return out


def expi(phase):
    """Enclosure of e^{2iπ·phase} for an exact rational phase."""
    phase = Fraction(phase) % 1
    quarter = {Fraction(0): (1, 0), Fraction(1, 4): (0, 1),
               Fraction(1, 2): (-1, 0), Fraction(3, 4): (0, -1)}
    if phase in quarter:
        return CInterval.exact(*quarter[phase])
    angle = 2 * iv.pi * to_iv(phase)
    return CInterval(iv.cos(angle), iv.sin(angle))


def expi_real(theta):
    """Enclosure of e^{iθ} for an interval or rational θ (radians)."""
    theta = to_iv(theta)
    return CInterval(iv.cos(theta), iv.sin(theta))


# ─── Gaussian CDF ────────────────────────────────────

_SERIES_LIMIT = 8
_SERIES_BITS = 192


def _erf_point(x):
    """erf at an exact point x (|x| ≤ 8/√2 enclosure) via the alternating Taylor series."""
    with precision(_SERIES_BITS):
        x = to_iv(x)
        x2 = x * x
        x2_hi = float(x2.b)
        tol = iv.mpf(2) ** (-(_SERIES_BITS // 2))
        term = x           # x^{2k+1}/k!
        total = iv.mpf(0)
        k = 0
        while True:
            contrib = term / (2 * k + 1)
            total = total + contrib if k % 2 == 0 else total - contrib
            term = term * x2 / (k + 1)
            nxt = abs(term / (2 * k + 3))
            k += 1
            if k > x2_hi + 1 and nxt.b < tol:
                break
        remainder = nxt.b
        total = total + iv.mpf((-remainder, remainder))
        return 2 * total / iv.sqrt(iv.pi)


def _phi_point(z):
    """Φ(z) at an exact point z (Fraction), certified."""
    z = Fraction(z)
    if abs(z) <= _SERIES_LIMIT:
        with precision(_SERIES_BITS):
            x = to_iv(z) / iv.sqrt(iv.mpf(2))
            # _erf_point wants a point; x is an enclosure of z/√2, evaluate at both ends
            lo = _erf_point(x.a)
            hi = _erf_point(x.b)
            return (1 + iv.mpf((lo.a, hi.b))) / 2
    with precision(_SERIES_BITS):
        za = to_iv(abs(z))
        density = iv.exp(-za * za / 2) / iv.sqrt(2 * iv.pi)
        tail_hi = density / za
        tail_lo = density * za / (1 + za * za)
        tail = iv.mpf((tail_lo.a, tail_hi.b))
        return 1 - tail if z > 0 else tail


def normal_cdf(z):
    """Certified enclosure of the standard Gaussian CDF Φ over an interval (or point) z."""
    if isinstance(z, iv.mpf):
        lo_end, hi_end = lower(z), upper(z)
    else:
        lo_end = hi_end = Fraction(z)
    lo = _phi_point(lo_end)
    hi = lo if hi_end == lo_end else _phi_point(hi_end)
    return iv.mpf((lo.a, hi.b))


def gaussian_char(sigma, lam):
    """e^{-λ²σ²/2}, certified."""
    s = to_iv(sigma)
    t = to_iv(lam)
    return iv.exp(-(t * t) * (s * s) / 2)

"""
╔══════════════════════════════════════════╗
║     ROTDIFF — Partial Quotients          ║
╚══════════════════════════════════════════╝

Describes α ∈ (0,1) by its partial quotients a_1, a_2, …
(a_0 is always 0). Three kinds:

  explicit   a finite list; asking past its end is an error
  periodic   preperiod + period (quadratic irrationals, golden ratio)
  ead        seeded random draws from the bounded class E(A,d):
             A ≤ a_n ≤ dA, uniform on the integer range

E(A,d) sampling is frozen: PCG64 fed by SeedSequence(seed, spawn_key=(block,)),
64 quotients per block, `integers(A, d*A, endpoint=True)`. Quotient a_n lives
in block (n-1)//64, so a prefix never depends on how many were requested.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from utils.errors import QuotientsExhaustedError, UsageError

BLOCK = 64
SEED_LIMIT = 2 ** 64
KINDS = ("explicit", "periodic", "ead")


@lru_cache(maxsize=4096)
def _ead_block(A, d, seed, block):
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(block,))
    gen = np.random.Generator(np.random.PCG64(ss))
    draws = gen.integers(A, d * A, size=BLOCK, endpoint=True)
    return tuple(int(v) for v in draws)


@dataclass(frozen=True)
class PartialQuotients:
    kind: str
    quotients: tuple = ()
    preperiod: tuple = ()
    period: tuple = ()
    A: int = 0
    d: int = 0
    seed: int = 0
    a0: int = field(default=0, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UsageError(f"unknown partial-quotient kind: {self.kind!r}", kind=self.kind)
        if self.a0 != 0:
            raise UsageError("a_0 must be 0 (α is taken in (0,1))", a0=self.a0)
        for name in ("quotients", "preperiod", "period"):
            values = getattr(self, name)
            if any((not isinstance(v, int)) or v < 1 for v in values):
                raise UsageError(f"{name} must be positive integers", values=list(values))
        if self.kind == "explicit" and not self.quotients:
            raise UsageError("explicit spec needs at least one quotient")
        if self.kind == "periodic" and not self.period:
            raise UsageError("periodic spec needs a non-empty period")
        if self.kind == "ead":
            if self.A < 1 or self.d < 1:
                raise UsageError("E(A,d) needs A >= 1 and d >= 1", A=self.A, d=self.d)
            if not 0 <= self.seed < SEED_LIMIT:
                raise UsageError("seed must be a 64-bit unsigned integer", seed=self.seed)

    # ─── Constructors ────────────────────────────────

    @classmethod
    def explicit(cls, quotients):
        return cls("explicit", quotients=tuple(int(a) for a in quotients))

    @classmethod
    def periodic(cls, preperiod, period):
        return cls("periodic", preperiod=tuple(int(a) for a in preperiod),
                   period=tuple(int(a) for a in period))

    @classmethod
    def constant(cls, a):
        """[0; a, a, a, …]"""
        return cls.periodic((), (a,))

    @classmethod
    def golden(cls):
        """[0; 1, 1, 1, …] = (√5 − 1)/2"""
        return cls.constant(1)

    @classmethod
    def ead(cls, A, d, seed):
        return cls("ead", A=int(A), d=int(d), seed=int(seed))

    # ─── Access ──────────────────────────────────────

    @property
    def available(self):
        """Number of quotients defined, or None when unbounded."""
        return len(self.quotients) if self.kind == "explicit" else None

    def a(self, n):
        """The n-th partial quotient (a_0 = 0)."""
        if n < 0:
            raise UsageError(f"negative quotient index {n}")
        if n == 0:
            return self.a0
        if self.kind == "explicit":
            if n > len(self.quotients):
                raise QuotientsExhaustedError(n, len(self.quotients))
            return self.quotients[n - 1]
        if self.kind == "periodic":
            if n <= len(self.preperiod):
                return self.preperiod[n - 1]
            return self.period[(n - 1 - len(self.preperiod)) % len(self.period)]
        block, offset = divmod(n - 1, BLOCK)
        return _ead_block(self.A, self.d, self.seed, block)[offset]

    def prefix(self, N):
        """[a_1, …, a_N]"""
        return [self.a(n) for n in range(1, N + 1)]

    def bound(self):
        """max a_n when known without scanning (None for explicit lists)."""
        if self.kind == "periodic":
            return max(self.preperiod + self.period)
        if self.kind == "ead":
            return self.d * self.A
        return None

    @property
    def label(self):
        if self.kind == "explicit":
            return "explicit[" + ",".join(str(a) for a in self.quotients) + "]"
        if self.kind == "periodic":
            if not self.preperiod and self.period == (1,):
                return "golden"
            pre = ",".join(str(a) for a in self.preperiod)
            per = ",".join(str(a) for a in self.period)
            return f"periodic[{pre};({per})]"
        return f"E({self.A},{self.d})#seed={self.seed}"

    # ─── JSON ────────────────────────────────────────

    def to_dict(self):
        if self.kind == "explicit":
            return {"kind": "explicit", "quotients": list(self.quotients)}
        if self.kind == "periodic":
            return {"kind": "periodic", "preperiod": list(self.preperiod),
                    "period": list(self.period)}
        return {"kind": "ead", "A": self.A, "d": self.d, "seed": self.seed}

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise UsageError("partial-quotient spec must be a JSON object")
        kind = data.get("kind")
        try:
            if kind == "explicit":
                return cls.explicit(data["quotients"])
            if kind == "periodic":
                return cls.periodic(data.get("preperiod", []), data["period"])
            if kind == "golden":
                return cls.golden()
            if kind == "ead":
                if data.get("seed") is None:
                    raise UsageError("random α (kind: ead) requires a seed")
                return cls.ead(data["A"], data.get("d", 1), data["seed"])
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"malformed {kind} spec: {e}", spec=data) from e
        raise UsageError(f"unknown partial-quotient kind: {kind!r}", kind=kind)


def spawn_ead(A, d, seed, count):
    """`count` independent E(A,d) specs derived from one root seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [
        PartialQuotients.ead(A, d, int(child.generate_state(1, dtype=np.uint64)[0]))
        for child in children
    ]

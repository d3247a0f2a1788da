"""
╔══════════════════════════════════════════╗
║     ROTDIFF — Verification Reports       ║
╚══════════════════════════════════════════╝

One record per checked inequality. Hard checks are exact or
certified (pass iff worst_ratio ≤ 1, no tolerance); trend checks
measure a constant and judge only its stability.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from utils.certified import upper

MAX_WITNESSES = 64
TREND_FACTOR = 2


def as_number(x):
    """JSON-friendly rendering: exact Fractions as strings, intervals by their upper end."""
    if x is None:
        return None
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x if abs(x) < 2 ** 53 else str(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return x
    try:
        return float(upper(x))
    except (TypeError, ValueError, AttributeError):
        return str(x)


def _ratio_value(x):
    if x is None:
        return None
    if isinstance(x, (int, Fraction, float)):
        return x
    return upper(x)


@dataclass
class VerificationReport:
    lemma_id: str
    kind: str = "hard"                    # hard | trend | group
    params: dict = field(default_factory=dict)
    instances_checked: int = 0
    worst_ratio: object = None
    passed: bool = True
    witnesses: list = field(default_factory=list)
    skipped: int = 0
    details: dict = field(default_factory=dict)
    sub_reports: list = field(default_factory=list)

    def record(self, params, measured, ratio=None, ok=True):
        """Add one checked instance; ratio is measured ÷ bound when one exists."""
        self.instances_checked += 1
        value = _ratio_value(ratio)
        worst = value is not None and (self.worst_ratio is None or value > self.worst_ratio)
        if worst:
            self.worst_ratio = value
        if not ok:
            self.passed = False
        entry = {"params": params, "measured": as_number(measured)}
        if ratio is not None:
            entry["ratio"] = as_number(ratio)
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(entry)
        elif worst or not ok:
            self.witnesses[-1] = entry

    def skip(self, reason=None):
        self.skipped += 1
        if reason:
            self.details.setdefault("skip_reasons", [])
            if reason not in self.details["skip_reasons"]:
                self.details["skip_reasons"].append(reason)

    def leaves(self):
        """This report, or its sub-reports flattened, for pass/fail accounting."""
        if not self.sub_reports:
            return [self]
        out = []
        for sub in self.sub_reports:
            out.extend(sub.leaves())
        return out

    def close_group(self):
        leaves = self.leaves()
        self.passed = all(r.passed for r in leaves)
        self.instances_checked = sum(r.instances_checked for r in leaves)
        return self

    @property
    def hard_failed(self):
        return any(r.kind == "hard" and not r.passed for r in self.leaves())

    def to_dict(self):
        out = {
            "lemma_id": self.lemma_id,
            "kind": self.kind,
            "params": self.params,
            "pass": self.passed,
            "instances_checked": self.instances_checked,
            "skipped": self.skipped,
            "worst_ratio": as_number(self.worst_ratio),
            "witnesses": self.witnesses,
        }
        if self.details:
            out["details"] = self.details
        if self.sub_reports:
            out["sub_reports"] = [r.to_dict() for r in self.sub_reports]
        return out


def trend_ok(values, factor=TREND_FACTOR, decreasing=True):
    """max(second half) ≤ factor·max(first half), and last ≤ first when decreasing.

    decreasing=False is the non-explosion rule used for measured constants.
    """
    vals = [float(v) for v in values]
    if len(vals) < 2:
        return True
    half = len(vals) // 2
    first, second = vals[:half], vals[half:]
    if decreasing and vals[-1] > vals[0]:
        return False
    return max(second) <= factor * max(first)
